"""Words, identities and their checks: projections, sparseness, factor
counting, identity satisfaction over a finite semigroup, bounded isoterm
search, and single rewrite steps."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .core import FiniteSemigroup

Word = tuple[str, ...]

DEFAULT_BUDGET = 10**8
_CHUNK = 4096

_TOKEN_RE = re.compile(r"^([a-z][a-z0-9]*)(?:\^([0-9]+))?$")


class BudgetExceededError(Exception):
    """The substitution space exceeds the evaluation budget."""


class Identity(NamedTuple):
    lhs: Word
    rhs: Word


def parse_word(text: str) -> Word:
    """Parse whitespace-separated variable tokens; "x^3" expands to "x x x"."""
    out: list[str] = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if not m:
            raise ValueError(f"bad variable token {token!r}")
        name, exp = m.group(1), m.group(2)
        out.extend([name] * (int(exp) if exp else 1))
    return tuple(out)


def word_str(w: Word) -> str:
    return " ".join(w)


def parse_identity(text: str) -> Identity:
    parts = text.split("==")
    if len(parts) != 2:
        raise ValueError("identity must be written LHS == RHS")
    lhs, rhs = parse_word(parts[0]), parse_word(parts[1])
    if not lhs or not rhs:
        raise ValueError("identity sides must be nonempty")
    return Identity(lhs, rhs)


def alphabet(w: Word) -> frozenset[str]:
    return frozenset(w)


def project(w: Word, variables: Iterable[str]) -> Word:
    """Keep exactly the occurrences of the given variables."""
    keep = frozenset(variables)
    return tuple(x for x in w if x in keep)


def is_sparse(w: Word) -> bool:
    """True iff every two occurrences of a repeated variable have a linear
    (once-occurring) variable strictly between them.

    Checking consecutive occurrence pairs suffices: any wider pair contains
    a consecutive pair's gap.
    """
    counts: dict[str, int] = {}
    for x in w:
        counts[x] = counts.get(x, 0) + 1
    linear = {x for x, c in counts.items() if c == 1}
    last_seen: dict[str, int] = {}
    last_linear = -1
    for i, x in enumerate(w):
        if x in linear:
            last_linear = i
        else:
            prev = last_seen.get(x)
            if prev is not None and last_linear < prev:
                return False
            last_seen[x] = i
    return True


def factor_occurrences(u: Word, w: Word) -> int:
    """Number of decompositions w = v' u v''; overlaps count separately."""
    if not u:
        raise ValueError("factor must be nonempty")
    k = len(u)
    return sum(1 for i in range(len(w) - k + 1) if w[i:i + k] == u)


def substitute(w: Word, phi: Mapping[str, Word]) -> Word:
    """Replace every variable occurrence by its image word."""
    out: list[str] = []
    for x in w:
        image = phi[x]
        if not image:
            raise ValueError(f"substitution image for {x!r} is empty")
        out.extend(image)
    return tuple(out)


def apply_identity(w: Word, ident: Identity, phi: Mapping[str, Word],
                   prefix: Word = (), suffix: Word = ()) -> Word:
    """One rewrite step: if w = prefix phi(lhs) suffix, return
    prefix phi(rhs) suffix."""
    prefix, suffix = tuple(prefix), tuple(suffix)
    if w != prefix + substitute(ident.lhs, phi) + suffix:
        raise ValueError("rule does not apply here")
    return prefix + substitute(ident.rhs, phi) + suffix


def format_rewrite_step(w: Word, ident: Identity, phi: Mapping[str, Word],
                        prefix: Word = (), suffix: Word = ()) -> str:
    """Render a single rewrite step as a stable plain-text trace."""
    result = apply_identity(w, ident, phi, prefix, suffix)
    binds = ", ".join(f"{v} := {word_str(phi[v])}" for v in sorted(phi))
    return (f"{word_str(w)}\n"
            f"  applying {word_str(ident.lhs)} == {word_str(ident.rhs)}  ({binds})\n"
            f"{word_str(result)}\n")


def variable_order(*words: Word) -> list[str]:
    """Variables in order of first occurrence across the given words."""
    seen: dict[str, None] = {}
    for w in words:
        for x in w:
            seen.setdefault(x)
    return list(seen)


def _digits_for(ids: np.ndarray, nvars: int, n: int) -> list[np.ndarray]:
    """Mixed-radix digits of substitution ids, most significant first."""
    out = []
    for t in range(nvars):
        out.append((ids // (n ** (nvars - 1 - t))) % n)
    return out


def _eval_word(table: np.ndarray, w: Word, digits: Mapping[str, np.ndarray]
               ) -> np.ndarray:
    val = digits[w[0]]
    for sym in w[1:]:
        val = table[val, digits[sym]]
    return val


def _scan_assignments(table: np.ndarray, lhs: Word, rhs: Word,
                      variables: list[str], n: int, total: int,
                      threads: int = 1) -> dict[str, int] | None:
    """First substitution (in odometer order over `variables`) where the two
    sides evaluate differently, or None if they agree everywhere."""

    def check(lo: int) -> dict[str, int] | None:
        hi = min(lo + _CHUNK, total)
        ids = np.arange(lo, hi, dtype=np.int64)
        cols = _digits_for(ids, len(variables), n)
        digits = dict(zip(variables, cols))
        bad = _eval_word(table, lhs, digits) != _eval_word(table, rhs, digits)
        if not bad.any():
            return None
        at = int(np.flatnonzero(bad)[0])
        return {v: int(col[at]) for v, col in zip(variables, cols)}

    starts = range(0, total, _CHUNK)
    if threads <= 1:
        for lo in starts:
            hit = check(lo)
            if hit is not None:
                return hit
        return None
    # Waves of `threads` chunks keep the first hit deterministic.
    starts = list(starts)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for w0 in range(0, len(starts), threads):
            wave = starts[w0:w0 + threads]
            for hit in pool.map(check, wave):
                if hit is not None:
                    return hit
    return None


def satisfies(s: FiniteSemigroup, ident: Identity, budget: int = DEFAULT_BUDGET,
              threads: int = 1) -> tuple[bool, dict[str, int] | None]:
    """Whether every substitution of elements equalizes the two sides.

    On failure returns the least witness: a map from variable name to element
    index, minimal in odometer order over the variables' first-occurrence
    order.  Raises BudgetExceededError when |S|^#variables exceeds `budget`.
    """
    variables = variable_order(ident.lhs, ident.rhs)
    n = len(s)
    total = n ** len(variables)
    if total > budget:
        raise BudgetExceededError(
            f"search too large: {n}^{len(variables)} substitutions exceed budget {budget}")
    witness = _scan_assignments(s.table, ident.lhs, ident.rhs, variables, n,
                                total, threads)
    return (witness is None), witness


def is_isoterm_bounded(s: FiniteSemigroup, u: Word, max_len: int,
                       budget: int = DEFAULT_BUDGET
                       ) -> tuple[bool, Word | None]:
    """Bounded isoterm check: search for a word v != u over alf(u) with
    length <= max_len such that s satisfies u == v.

    Returns (True, None) when no such v exists up to the bound -- this
    certifies only the absence of short counterexamples -- and otherwise
    (False, v) for the first v in (length, lexicographic) order.
    """
    if s.identity is None:
        raise ValueError("isoterm checking needs a monoid")
    if not u:
        raise ValueError("word must be nonempty")
    if max_len < len(u):
        raise ValueError("max_len must be at least the word's length")
    variables = sorted(alphabet(u))
    n = len(s)
    total = n ** len(variables)
    if total > budget:
        raise BudgetExceededError(
            f"search too large: {n}^{len(variables)} substitutions exceed budget {budget}")
    table = s.table
    nchunks = (total + _CHUNK - 1) // _CHUNK
    digit_cache: list[dict[str, np.ndarray] | None] = [None] * nchunks
    u_cache: list[np.ndarray | None] = [None] * nchunks

    def chunk_data(ci: int):
        if digit_cache[ci] is None:
            lo = ci * _CHUNK
            ids = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
            cols = _digits_for(ids, len(variables), n)
            digit_cache[ci] = dict(zip(variables, cols))
            u_cache[ci] = _eval_word(table, u, digit_cache[ci])
        return digit_cache[ci], u_cache[ci]

    for length in range(1, max_len + 1):
        for cand in product(variables, repeat=length):
            if cand == u:
                continue
            for ci in range(nchunks):
                digits, u_vals = chunk_data(ci)
                if not np.array_equal(_eval_word(table, cand, digits), u_vals):
                    break
            else:
                return False, cand
    return True, None
