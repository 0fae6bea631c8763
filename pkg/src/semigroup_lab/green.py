"""Green's relations, D-class structure, local submonoids, DS/LDS membership."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteSemigroup, SemigroupError


@dataclass(frozen=True)
class GreenData:
    """The five Green partitions as class index per element, plus per-D-class
    idempotent and closure flags.  Classes are numbered by least member."""

    r_class: tuple[int, ...]
    l_class: tuple[int, ...]
    j_class: tuple[int, ...]
    h_class: tuple[int, ...]
    d_class: tuple[int, ...]
    d_contains_idempotent: tuple[bool, ...]
    d_is_subsemigroup: tuple[bool, ...]

    def members(self, partition: tuple[int, ...]) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(partition) + 1)]
        for x, c in enumerate(partition):
            out[c].append(x)
        return out

    def d_classes(self) -> list[list[int]]:
        return self.members(self.d_class)

    def class_sizes(self, partition: tuple[int, ...]) -> list[int]:
        return [len(c) for c in self.members(partition)]


def _partition_from_keys(keys) -> tuple[int, ...]:
    ids: dict = {}
    out = []
    for k in keys:
        if k not in ids:
            ids[k] = len(ids)
        out.append(ids[k])
    return tuple(out)


def _scc_partition(succ) -> tuple[int, ...]:
    """Strongly connected components (iterative Tarjan), numbered by least member."""
    n = len(succ)
    UNVISITED = -1
    index = [UNVISITED] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [UNVISITED] * n
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != UNVISITED:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            children = succ[v]
            for i in range(pi, len(children)):
                w = children[i]
                if index[w] == UNVISITED:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    # renumber by least member
    return _partition_from_keys(comp)


def green(s: FiniteSemigroup) -> GreenData:
    """Compute R, L, J, H, D from principal ideals.

    R and L come from row/column sets of the table (the right/left ideals),
    H = R meet L, D is the join of R and L verified to equal the relation
    composition both ways, and J comes from mutual reachability under
    one-sided multiplications.  D = J is asserted as a safety net.
    """
    n = len(s)
    table = s.table
    row_sets = [frozenset(table[x].tolist()) | {x} for x in range(n)]
    col_sets = [frozenset(table[:, x].tolist()) | {x} for x in range(n)]
    r_class = _partition_from_keys(row_sets)
    l_class = _partition_from_keys(col_sets)
    h_class = _partition_from_keys(list(zip(r_class, l_class)))

    # D as the join of R and L via union-find over class representatives.
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    first_r: dict[int, int] = {}
    first_l: dict[int, int] = {}
    for x in range(n):
        for cls, first in ((r_class[x], first_r), (l_class[x], first_l)):
            if cls in first:
                union(first[cls], x)
            else:
                first[cls] = x
    d_class = _partition_from_keys([find(x) for x in range(n)])

    _verify_d_is_relation_composition(n, r_class, l_class, d_class)

    # J from strongly connected components of one-sided multiplication edges.
    succ = [sorted(set(table[x].tolist()) | set(table[:, x].tolist()) | {x})
            for x in range(n)]
    j_class = _scc_partition(succ)
    if j_class != d_class:
        raise SemigroupError("D != J: multiplication table is corrupt")

    d_members = [[] for _ in range(max(d_class) + 1)]
    for x, c in enumerate(d_class):
        d_members[c].append(x)
    idems = set(s.idempotents())
    contains_idem = []
    is_sub = []
    for cls in d_members:
        contains_idem.append(any(x in idems for x in cls))
        block = table[np.ix_(cls, cls)]
        in_cls = np.zeros(n, dtype=bool)
        in_cls[cls] = True
        is_sub.append(bool(in_cls[block].all()))
    return GreenData(r_class, l_class, j_class, h_class, d_class,
                     tuple(contains_idem), tuple(is_sub))


def _verify_d_is_relation_composition(n, r_class, l_class, d_class) -> None:
    """Assert x D y iff some z has x R z and z L y (and symmetrically)."""
    r_members: dict[int, list[int]] = {}
    l_members: dict[int, list[int]] = {}
    d_members: dict[int, list[int]] = {}
    for x in range(n):
        r_members.setdefault(r_class[x], []).append(x)
        l_members.setdefault(l_class[x], []).append(x)
        d_members.setdefault(d_class[x], []).append(x)
    for cls in d_members.values():
        rep = cls[0]
        via_rl = {y for z in r_members[r_class[rep]] for y in l_members[l_class[z]]}
        via_lr = {y for z in l_members[l_class[rep]] for y in r_members[r_class[z]]}
        if via_rl != set(cls) or via_lr != set(cls):
            raise SemigroupError("D is not the relation composition of R and L")


def in_DS(s: FiniteSemigroup) -> bool:
    """True iff every D-class containing an idempotent is a subsemigroup."""
    data = green(s)
    return all(sub or not idem for idem, sub in
               zip(data.d_contains_idempotent, data.d_is_subsemigroup))


def local_submonoid(s: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """The local submonoid eSe at an idempotent e."""
    if not s.is_idempotent(e):
        raise ValueError("not an idempotent")
    ese = sorted({int(s.table[int(s.table[e, x]), e]) for x in range(len(s))})
    return s.restrict(ese, source=f"{s.source}|local@{s.labels[e]}")


def in_LDS(s: FiniteSemigroup) -> bool:
    """True iff every local submonoid of S lies in DS."""
    return all(in_DS(local_submonoid(s, e)) for e in s.idempotents())
