"""The nonfinite-basis identity family: words u_n and v_n built from cyclic
shifts of two block patterns, the marked variable sets X_n, the projection
properties P0-P2, and the identity checks they feed."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import FiniteSemigroup, power_data
from .green import in_DS
from .words import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    Identity,
    Word,
    _scan_assignments,
    alphabet,
    project,
    satisfies,
    word_str,
)


@dataclass(frozen=True)
class NfbInstance:
    """One member of the identity family: u == v with marked variables.

    v is u repeated m+1 times; u is the concatenation of 2(n+1) blocks, an
    a-block and a b-block for each power of the cyclic shift of {0..n}.
    x_vars holds the 3(n+1) marked variables x_i, y_i, z_i (y_0 is listed
    even though it never occurs in u).
    """

    n: int
    k: int
    m: int
    u: Word
    v: Word
    x_vars: frozenset[str]
    blocks: tuple[Word, ...]

    def projection(self) -> Word:
        return project(self.u, self.x_vars)

    def identity(self) -> Identity:
        return Identity(self.u, self.v)


def _block(n: int, k: int, shift: int, family: str) -> Word:
    """One block: pads of x^k around the family variables, with the family
    subscripts rotated by the shift and the y subscripts fixed."""
    pad = ("x",) * k
    sub = lambda i: f"{family}{(i + shift) % (n + 1)}"
    out = list(pad) + [sub(0)]
    for i in range(1, n + 1):
        out += [*pad, f"y{i}", *pad, sub(i)]
    out += pad
    return tuple(out)


def build_instance(n: int, k: int, m: int) -> NfbInstance:
    """Build u, v, X and the block list for parameters n, k, m."""
    if n < 1 or k < 1 or m < 1:
        raise ValueError("n, k, m must be positive")
    blocks: list[Word] = []
    for i in range(n + 1):
        blocks.append(_block(n, k, i, "x"))
        blocks.append(_block(n, k, i, "z"))
    u: Word = tuple(sym for b in blocks for sym in b)
    v: Word = u * (m + 1)
    x_vars = frozenset(f"{f}{i}" for f in "xyz" for i in range(n + 1))
    return NfbInstance(n, k, m, u, v, x_vars, tuple(blocks))


def check_P0(inst: NfbInstance) -> tuple[bool, str | None]:
    """The projections of u and v onto the marked variables must differ."""
    pu = project(inst.u, inst.x_vars)
    pv = project(inst.v, inst.x_vars)
    if pu != pv:
        return True, None
    return False, f"projections coincide: {word_str(pu)}"


def check_P1(inst: NfbInstance) -> tuple[bool, tuple[str, str, int, int] | None]:
    """Every two-letter factor of the projection occurs at most once.

    On failure returns (first letter, second letter, first position,
    repeat position), positions 0-based in the projection.
    """
    w = inst.projection()
    seen: dict[tuple[str, str], int] = {}
    for i in range(len(w) - 1):
        pair = (w[i], w[i + 1])
        if pair in seen:
            return False, (*pair, seen[pair], i)
        seen[pair] = i
    return True, None


def check_P2(inst: NfbInstance, min_distinct: int | None = None
             ) -> tuple[bool, tuple[str, int, int, int] | None]:
    """Between any two occurrences of a variable in the projection there
    must be at least `min_distinct` (default n) pairwise distinct variables.

    Every occurrence pair is checked, not only consecutive ones.  On failure
    returns (variable, left position, right position, distinct count).
    """
    bound = inst.n if min_distinct is None else min_distinct
    w = inst.projection()
    positions: dict[str, list[int]] = {}
    for i, sym in enumerate(w):
        positions.setdefault(sym, []).append(i)
    for sym, occ in positions.items():
        for a in range(len(occ)):
            for b in range(a + 1, len(occ)):
                p, q = occ[a], occ[b]
                distinct = len(set(w[p + 1:q]))
                if distinct < bound:
                    return False, (sym, p, q, distinct)
    return True, None


def _valid_k(s: FiniteSemigroup, k: int) -> bool:
    """True iff x^k is idempotent for every x."""
    for x in range(len(s)):
        p = s.power(x, k)
        if s.mul(p, p) != p:
            return False
    return True


def verify_holds(s: FiniteSemigroup, inst: NfbInstance,
                 budget: int = DEFAULT_BUDGET, threads: int = 1
                 ) -> tuple[bool, dict[str, int] | None]:
    """Exhaustively check that u == v holds in s.

    Preconditions: inst.k must make every element's k-th power idempotent
    and inst.m must be a multiple of the subgroup exponent lcm of s.  The
    substitution space runs over the padding variable x plus all of X_n
    (3n+4 variables; y_0 is inert but enumerated), so the budget must cover
    |S|^(3n+4) evaluations.
    """
    if not _valid_k(s, inst.k):
        raise ValueError(
            f"k={inst.k} is not a uniform idempotent power for this semigroup")
    pd = power_data(s)
    if inst.m % pd.subgroup_lcm_m != 0:
        raise ValueError(
            f"m={inst.m} is not a multiple of the subgroup exponent lcm "
            f"{pd.subgroup_lcm_m}")
    variables = ["x", *sorted(inst.x_vars)]
    n = len(s)
    total = n ** len(variables)
    if total > budget:
        raise BudgetExceededError(
            f"search too large: {n}^{len(variables)} substitutions exceed "
            f"budget {budget}")
    witness = _scan_assignments(s.table, inst.u, inst.v, variables, n, total,
                                threads)
    return (witness is None), witness


def ds_power_identity_check(s: FiniteSemigroup, factors: Sequence[Word]) -> bool:
    """For u the concatenation of enough same-alphabet factors and m the
    subgroup exponent lcm of a DS member, check that u == u^(m+1) holds."""
    if not in_DS(s):
        raise ValueError("not in DS")
    alphabets = {alphabet(f) for f in factors}
    if len(alphabets) != 1:
        raise ValueError("alphabets differ")
    if len(factors) < len(s) + 2:
        raise ValueError("too few factors")
    u: Word = tuple(sym for f in factors for sym in f)
    m = power_data(s).subgroup_lcm_m
    ok, _ = satisfies(s, Identity(u, u * (m + 1)))
    return ok


def substitution_support(phi: Mapping[str, Word], x_vars: Iterable[str]
                         ) -> set[str]:
    """Variables whose substitution images contain a marked variable."""
    marked = frozenset(x_vars)
    return {z for z, image in phi.items() if frozenset(image) & marked}


def certificate_text(inst: NfbInstance,
                     verdicts: Mapping[str, bool] | None = None) -> str:
    """Serialize an instance (and optional P0-P2 verdicts) as a text
    certificate."""
    lines = [
        "nfb-certificate v1",
        f"n = {inst.n}",
        f"k = {inst.k}",
        f"m = {inst.m}",
        f"X = {' '.join(sorted(inst.x_vars))}",
        f"blocks = {' '.join(str(len(b)) for b in inst.blocks)}",
        f"u = {word_str(inst.u)}",
        f"v = {word_str(inst.v)}",
    ]
    if verdicts:
        for name in ("P0", "P1", "P2"):
            if name in verdicts:
                lines.append(f"{name} = {'pass' if verdicts[name] else 'fail'}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> tuple[NfbInstance, dict[str, bool]]:
    """Parse a certificate back into an instance plus recorded verdicts."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "nfb-certificate v1":
        raise ValueError("not an nfb certificate")
    fields: dict[str, str] = {}
    for ln in lines[1:]:
        key, _, value = ln.partition("=")
        fields[key.strip()] = value.strip()
    try:
        n, k, m = int(fields["n"]), int(fields["k"]), int(fields["m"])
        x_vars = frozenset(fields["X"].split())
        block_lens = [int(t) for t in fields["blocks"].split()]
        u = tuple(fields["u"].split())
        v = tuple(fields["v"].split())
    except KeyError as exc:
        raise ValueError(f"certificate is missing field {exc}") from exc
    if sum(block_lens) != len(u):
        raise ValueError("block lengths do not sum to the length of u")
    blocks = []
    at = 0
    for length in block_lens:
        blocks.append(u[at:at + length])
        at += length
    inst = NfbInstance(n, k, m, u, v, x_vars, tuple(blocks))
    verdicts = {name: fields[name] == "pass"
                for name in ("P0", "P1", "P2") if name in fields}
    return inst, verdicts
