"""Explicit finite semigroups: Cayley tables, closure generation, power data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

DEFAULT_CAP = 100_000

# Exhaustive associativity check is O(n^3); above this we sample.
ASSOC_EXHAUSTIVE_LIMIT = 300
ASSOC_SAMPLE_SEED = 0x5EED


class SemigroupError(Exception):
    pass


class ClosureOverflowError(SemigroupError):
    """Closure or product would exceed the element cap."""


class NotAssociativeError(SemigroupError):
    """The supplied multiplication table is not associative."""


def _check_associativity(table: np.ndarray) -> str:
    """Validate associativity, exhaustively for small tables, sampled above.

    Returns the validation level actually performed ("exhaustive" or
    "sampled"); raises NotAssociativeError with a witness triple otherwise.
    """
    n = len(table)
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        for a in range(n):
            left = table[table[a]]          # (ab)c for all b, c
            right = table[a][table]         # a(bc) for all b, c
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise NotAssociativeError(
                    f"not a semigroup: ({a}*{b})*{c} != {a}*({b}*{c})")
        return "exhaustive"
    rng = np.random.default_rng(ASSOC_SAMPLE_SEED)
    remaining = 10 * n * n
    step = 1_000_000
    while remaining > 0:
        count = min(step, remaining)
        remaining -= count
        a = rng.integers(0, n, size=count, dtype=np.int32)
        b = rng.integers(0, n, size=count, dtype=np.int32)
        c = rng.integers(0, n, size=count, dtype=np.int32)
        bad = table[table[a, b], c] != table[a, table[b, c]]
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NotAssociativeError(
                f"not a semigroup: ({a[i]}*{b[i]})*{c[i]} != {a[i]}*({b[i]}*{c[i]})")
    return "sampled"


def _find_identity(table: np.ndarray) -> int | None:
    n = len(table)
    rng_ = np.arange(n)
    rows = (table == rng_[None, :]).all(axis=1)
    cols = (table.T == rng_[None, :]).all(axis=1)
    hits = np.flatnonzero(rows & cols)
    return int(hits[0]) if len(hits) else None


class FiniteSemigroup:
    """A finite semigroup given by an explicit multiplication table.

    Immutable after construction.  Elements are the indices 0..n-1; `labels`
    gives display names and `carriers` optionally keeps the original objects
    (partial transformations, matrices, ...) the elements came from.
    """

    def __init__(self, labels: Sequence[str], table, *, carriers=None,
                 source: str | None = None):
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("duplicate labels")
        table = np.asarray(table, dtype=np.int32)
        if table.shape != (n, n):
            raise ValueError(f"table shape {table.shape} does not match {n} elements")
        if n and (table.min() < 0 or table.max() >= n):
            raise ValueError("table entries out of range")
        self.validation = _check_associativity(table)
        table.setflags(write=False)
        self.labels = labels
        self.table = table
        self.carriers = tuple(carriers) if carriers is not None else None
        if self.carriers is not None and len(self.carriers) != n:
            raise ValueError("carriers length does not match element count")
        self.identity = _find_identity(table)
        self.source = source or "anonymous"
        self._carrier_index = None

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteSemigroup({self.source}, order={len(self)})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, x: int, t: int) -> int:
        """x^t for t >= 1, by repeated table lookups."""
        if t < 1:
            raise ValueError("exponent must be positive")
        acc = x
        for _ in range(t - 1):
            acc = int(self.table[acc, x])
        return acc

    def is_idempotent(self, x: int) -> bool:
        return int(self.table[x, x]) == x

    def idempotents(self) -> list[int]:
        n = len(self)
        diag = self.table[np.arange(n), np.arange(n)]
        return [int(i) for i in np.flatnonzero(diag == np.arange(n))]

    def index_of(self, carrier) -> int:
        """Index of the element whose carrier equals `carrier`."""
        if self.carriers is None:
            raise ValueError("semigroup has no carriers")
        if self._carrier_index is None:
            self._carrier_index = {
                c: i for i, c in enumerate(self.carriers) if c is not None}
        return self._carrier_index[carrier]

    def restrict(self, indices: Sequence[int], *, source: str | None = None
                 ) -> "FiniteSemigroup":
        """The subsemigroup on `indices` (which must be closed), reindexed."""
        idx = list(indices)
        if len(set(idx)) != len(idx):
            raise ValueError("duplicate indices")
        sub = self.table[np.ix_(idx, idx)]
        member = np.zeros(len(self), dtype=bool)
        member[idx] = True
        if not member[sub].all():
            raise ValueError("subset is not closed under multiplication")
        lut = np.full(len(self), -1, dtype=np.int32)
        lut[idx] = np.arange(len(idx), dtype=np.int32)
        table = lut[sub]
        labels = [self.labels[x] for x in idx]
        carriers = [self.carriers[x] for x in idx] if self.carriers else None
        return FiniteSemigroup(labels, table, carriers=carriers,
                               source=source or f"{self.source}|restricted")


def generate(seed_elements: Iterable, multiply: Callable, label: Callable = str,
             *, cap: int = DEFAULT_CAP, source: str | None = None) -> FiniteSemigroup:
    """Close `seed_elements` under `multiply` and return the table semigroup.

    Carriers must be hashable; element numbering is the deterministic
    discovery order (seeds first, then products in worklist order).
    """
    elements: list = []
    index: dict = {}
    for e in seed_elements:
        if e not in index:
            index[e] = len(elements)
            elements.append(e)
    if not elements:
        raise ValueError("no seed elements")
    products: dict[tuple[int, int], int] = {}

    def note(i: int, j: int) -> None:
        p = multiply(elements[i], elements[j])
        k = index.get(p)
        if k is None:
            k = len(elements)
            if k >= cap:
                raise ClosureOverflowError(f"closure overflow: cap {cap} exceeded")
            index[p] = k
            elements.append(p)
        products[(i, j)] = k

    # Every ordered pair (i, j) is processed when t = max(i, j) is reached,
    # so the worklist covers the full closure.
    t = 0
    while t < len(elements):
        for j in range(t + 1):
            note(t, j)
            if j != t:
                note(j, t)
        t += 1

    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for (i, j), k in products.items():
        table[i, j] = k
    return FiniteSemigroup([label(e) for e in elements], table,
                           carriers=elements, source=source or "generated")


def adjoin_identity(s: FiniteSemigroup) -> FiniteSemigroup:
    """S itself if S is a monoid, otherwise S with a fresh two-sided identity."""
    if s.identity is not None:
        return s
    n = len(s)
    table = np.empty((n + 1, n + 1), dtype=np.int32)
    table[:n, :n] = s.table
    table[:n, n] = np.arange(n)
    table[n, :n] = np.arange(n)
    table[n, n] = n
    fresh = "1"
    while fresh in s.labels:
        fresh += "'"
    carriers = (*s.carriers, None) if s.carriers is not None else None
    return FiniteSemigroup([*s.labels, fresh], table, carriers=carriers,
                           source=f"{s.source}^1")


def direct_product(s: FiniteSemigroup, t: FiniteSemigroup, *,
                   cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    """Componentwise product of two table semigroups."""
    ns, nt = len(s), len(t)
    if ns * nt > cap:
        raise ClosureOverflowError(f"closure overflow: cap {cap} exceeded")
    table = (s.table[:, None, :, None].astype(np.int64) * nt
             + t.table[None, :, None, :]).reshape(ns * nt, ns * nt)
    labels = [f"({a},{b})" for a in s.labels for b in t.labels]
    carriers = None
    if s.carriers is not None and t.carriers is not None:
        carriers = [(a, b) for a in s.carriers for b in t.carriers]
    return FiniteSemigroup(labels, table, carriers=carriers,
                           source=f"{s.source}x{t.source}")


@dataclass(frozen=True)
class PowerData:
    """Index/period per element plus the uniform idempotent power and the
    lcm of maximal-subgroup exponents."""

    index: tuple[int, ...]
    period: tuple[int, ...]
    uniform_k: int
    subgroup_lcm_m: int


def power_data(s: FiniteSemigroup) -> PowerData:
    """Compute per-element index and period, uniform_k and subgroup_lcm_m.

    uniform_k is the least k such that x^k is idempotent for every x;
    subgroup_lcm_m is the lcm of the exponents of the maximal subgroups
    (H-classes of idempotents).
    """
    n = len(s)
    table = s.table
    index = []
    period = []
    for x in range(n):
        seen = {x: 1}
        y = x
        t = 1
        while True:
            y = int(table[y, x])
            t += 1
            if y in seen:
                first = seen[y]
                index.append(first)
                period.append(t - first)
                break
            seen[y] = t
    lcm_p = math.lcm(*period)
    max_i = max(index)
    uniform_k = lcm_p * ((max_i + lcm_p - 1) // lcm_p)

    # Maximal subgroup at idempotent e is its H-class; row/col sets computed
    # directly so this stays independent of the green module.
    rows = [frozenset(table[x]) | {x} for x in range(n)]
    cols = [frozenset(table[:, x]) | {x} for x in range(n)]
    m = 1
    for e in s.idempotents():
        h_class = [x for x in range(n) if rows[x] == rows[e] and cols[x] == cols[e]]
        for g in h_class:
            order = 1
            y = g
            while y != e:
                y = int(table[y, g])
                order += 1
            m = math.lcm(m, order)
    return PowerData(tuple(index), tuple(period), uniform_k, m)
