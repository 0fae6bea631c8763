"""Bounded divisor search: does a small target semigroup arise as a
homomorphic image of a subsemigroup of the host?"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import FiniteSemigroup, direct_product
from .constructions import build_b21, verify_homomorphism
from .green import in_LDS

MAX_TARGET_ORDER = 8
DEFAULT_MAX_TUPLES = 10_000_000

# Commutativity is only worth precomputing as a pruning filter on small
# candidate subsemigroups.
_COMMUTATIVITY_PRUNE_LIMIT = 128


class InconclusiveSearchError(Exception):
    """The bounded search space was capped before completion."""


@dataclass(frozen=True)
class DivisorWitness:
    """A verified divisor: generators and elements of a subsemigroup U of the
    host, together with an onto homomorphism U -> target (element indices on
    both sides).  When the target's identity was covered by adjoining an
    idempotent of the host, that idempotent is recorded."""

    generators: tuple[int, ...]
    elements: tuple[int, ...]
    mapping: dict[int, int]
    adjoined_idempotent: int | None = None

    def revalidate(self, host: FiniteSemigroup, target: FiniteSemigroup) -> bool:
        """Independently re-check closure, the homomorphism property and
        surjectivity of the witness."""
        try:
            sub = host.restrict(self.elements)
        except ValueError:
            return False
        image = [self.mapping[x] for x in self.elements]
        ok, _ = verify_homomorphism(image, sub, target)
        return ok and set(image) == set(range(len(target)))


def generated_subsemigroup(host: FiniteSemigroup, gens) -> list[int]:
    """The least subset containing `gens` and closed under the host table."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    table = host.table
    seen = set(gens)
    queue = list(dict.fromkeys(gens))
    # Right-multiplying by generators reaches every product, since any word
    # in the generators can be built left to right.
    for u in queue:
        for g in gens:
            v = int(table[u, g])
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return sorted(seen)


def _cycle_data(table, x: int) -> tuple[int, int]:
    seen = {x: 1}
    y, t = x, 1
    while True:
        y = int(table[y, x])
        t += 1
        if y in seen:
            return seen[y], t - seen[y]
        seen[y] = t


def _is_commutative(table, elems) -> bool:
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            if table[a, b] != table[b, a]:
                return False
    return True


def _propagate(host_table, target_table, gens, images) -> dict[int, int] | None:
    """Extend generator images over the generated subsemigroup; None on a
    single-valuedness conflict.  A conflict-free extension is automatically
    a homomorphism."""
    mapping: dict[int, int] = {}
    for g, im in zip(gens, images):
        if mapping.get(g, im) != im:
            return None
        mapping[g] = im
    queue = list(dict.fromkeys(gens))
    for u in queue:
        mu = mapping[u]
        for g, im in zip(gens, images):
            v = int(host_table[u, g])
            tv = int(target_table[mu, im])
            known = mapping.get(v)
            if known is None:
                mapping[v] = tv
                queue.append(v)
            elif known != tv:
                return None
    return mapping


def find_onto_morphism(host: FiniteSemigroup, gens, target: FiniteSemigroup,
                       universe: list[int] | None = None) -> DivisorWitness | None:
    """Search for an onto homomorphism from the subsemigroup generated by
    `gens` to `target`, trying generator images in lexicographic order.

    An image assignment extends to a homomorphism exactly when propagating
    it over all generator words stays single-valued; assignments are pruned
    by index/period compatibility of each generator with its image.
    """
    if len(target) > MAX_TARGET_ORDER:
        raise ValueError(f"target too large for assignment search "
                         f"(max {MAX_TARGET_ORDER})")
    gens = list(gens)
    if universe is None:
        universe = generated_subsemigroup(host, gens)
    nt = len(target)
    if len(universe) < nt:
        return None
    if len(universe) <= _COMMUTATIVITY_PRUNE_LIMIT:
        if _is_commutative(host.table, universe) and \
                not _is_commutative(target.table, range(nt)):
            return None
    target_cycle = [_cycle_data(target.table, t) for t in range(nt)]
    candidates: list[list[int]] = []
    for g in gens:
        gi, gp = _cycle_data(host.table, g)
        candidates.append([t for t in range(nt)
                           if target_cycle[t][0] <= gi and gp % target_cycle[t][1] == 0])
    full = set(range(nt))
    images: list[int] = []

    def search(depth: int) -> dict[int, int] | None:
        if depth == len(gens):
            mapping = _propagate(host.table, target.table, gens, images)
            if mapping is not None and set(mapping.values()) == full:
                return mapping
            return None
        for t in candidates[depth]:
            images.append(t)
            if _propagate(host.table, target.table, gens[:depth + 1], images) is not None:
                hit = search(depth + 1)
                if hit is not None:
                    return hit
            images.pop()
        return None

    mapping = search(0)
    if mapping is None:
        return None
    return DivisorWitness(tuple(gens), tuple(sorted(mapping)), mapping)


def has_divisor(host: FiniteSemigroup, target: FiniteSemigroup, max_gens: int,
                max_tuples: int = DEFAULT_MAX_TUPLES) -> DivisorWitness | None:
    """Bounded search for `target` as a divisor of `host`.

    Generator tuples are enumerated as sorted sets of ascending size.  For a
    monoid target whose non-identity elements form a subsemigroup, the local
    trick is tried first: find the reduced target inside a local submonoid
    of the host, then adjoin that local identity and map it to the target's
    identity.  Raises InconclusiveSearchError once `max_tuples` generator
    tuples were examined.
    """
    budget = [max_tuples]

    def spend() -> None:
        budget[0] -= 1
        if budget[0] < 0:
            raise InconclusiveSearchError("bounded search inconclusive")

    witness = _adjoined_identity_search(host, target, max_gens, spend)
    if witness is not None:
        return witness
    for size in range(1, max_gens + 1):
        for gens in combinations(range(len(host)), size):
            spend()
            found = find_onto_morphism(host, gens, target)
            if found is not None:
                return found
    return None


def _adjoined_identity_search(host, target, max_gens, spend):
    tid = target.identity
    if tid is None or max_gens < 2:
        return None
    rest = [i for i in range(len(target)) if i != tid]
    try:
        inner = target.restrict(rest)
    except ValueError:
        return None  # non-identity elements are not closed
    for f in host.idempotents():
        table = host.table
        local = sorted({int(table[int(table[f, x]), f]) for x in range(len(host))})
        pool = [g for g in local if g != f]
        for size in range(1, max_gens):
            for gens in combinations(pool, size):
                spend()
                universe = generated_subsemigroup(host, gens)
                if f in universe:
                    continue
                found = find_onto_morphism(host, gens, inner, universe=universe)
                if found is None:
                    continue
                mapping = {u: rest[t] for u, t in found.mapping.items()}
                mapping[f] = tid
                return DivisorWitness(found.generators,
                                      tuple(sorted(mapping)), mapping,
                                      adjoined_idempotent=f)
    return None


@dataclass(frozen=True)
class LdsCrossValidation:
    """Agreement report between structural LDS membership of S and the
    bounded search for the Brandt monoid inside S x S."""

    source: str
    in_lds: bool
    witness: DivisorWitness | None
    search_capped: bool
    status: str


def cross_validate_lds(s: FiniteSemigroup, max_gens: int = 3,
                       max_tuples: int = DEFAULT_MAX_TUPLES) -> LdsCrossValidation:
    """Compare in_LDS(S) with a bounded Brandt-monoid divisor search on S x S.

    A witness alongside LDS membership is a hard failure; an empty bounded
    search alongside non-membership is merely inconclusive.
    """
    lds = in_LDS(s)
    square = direct_product(s, s)
    target = build_b21()
    capped = False
    witness = None
    try:
        witness = has_divisor(square, target, max_gens, max_tuples)
    except InconclusiveSearchError:
        capped = True
    if witness is not None:
        if not witness.revalidate(square, target):
            status = "FAIL: witness did not revalidate"
        elif lds:
            status = "FAIL: divisor witness found despite LDS membership"
        else:
            status = "consistent"
    else:
        status = "consistent" if lds else "inconclusive (bound too small)"
    return LdsCrossValidation(s.source, lds, witness, capped, status)
