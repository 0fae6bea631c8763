"""Concrete semigroups: i-Catalan monoids, Brandt matrices, triangular
matrices over GF(2), small utility families, and the IC_4 matrix embedding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteSemigroup, generate

IC_MAX_DEGREE = 8
TN2_MAX_DIMENSION = 4


@dataclass(frozen=True)
class PartialTransformation:
    """A partial self-map of the chain 1 < ... < m, written on the right.

    `image[i-1]` is the image of i, or None where undefined.
    """

    degree: int
    image: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.image) != self.degree:
            raise ValueError("image length does not match degree")
        for v in self.image:
            if v is not None and not 1 <= v <= self.degree:
                raise ValueError(f"image value {v} out of range")

    def __call__(self, i: int) -> int | None:
        return self.image[i - 1]

    def domain(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.degree + 1) if self.image[i - 1] is not None)

    def is_injective(self) -> bool:
        defined = [v for v in self.image if v is not None]
        return len(defined) == len(set(defined))

    def is_order_preserving(self) -> bool:
        defined = [v for v in self.image if v is not None]
        return all(a <= b for a, b in zip(defined, defined[1:]))

    def is_extensive(self) -> bool:
        return all(v is None or i <= v for i, v in enumerate(self.image, start=1))

    def label(self) -> str:
        return "[" + ",".join("-" if v is None else str(v) for v in self.image) + "]"

    @classmethod
    def identity(cls, degree: int) -> "PartialTransformation":
        return cls(degree, tuple(range(1, degree + 1)))

    @classmethod
    def empty(cls, degree: int) -> "PartialTransformation":
        return cls(degree, (None,) * degree)


def compose(a: PartialTransformation, b: PartialTransformation) -> PartialTransformation:
    """Right-action composition: i(ab) = (ia)b."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    image = tuple(None if v is None else b.image[v - 1] for v in a.image)
    return PartialTransformation(a.degree, image)


@dataclass(frozen=True)
class BinaryMatrix:
    """An n x n matrix over the 2-element field, rows packed as bitmasks.

    Bit j of `rows[i]` is the entry in row i+1, column j+1.
    """

    dimension: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.dimension:
            raise ValueError("row count does not match dimension")
        full = (1 << self.dimension) - 1
        for r in self.rows:
            if r < 0 or r > full:
                raise ValueError("row bits out of range")

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i - 1] >> (j - 1)) & 1

    def is_upper_triangular(self) -> bool:
        return all(r & ((1 << i) - 1) == 0 for i, r in enumerate(self.rows))

    def is_row_monomial(self) -> bool:
        return all(r & (r - 1) == 0 for r in self.rows)

    def label(self) -> str:
        n = self.dimension
        return "|".join("".join(str((r >> j) & 1) for j in range(n)) for r in self.rows)

    @classmethod
    def from_lists(cls, entries) -> "BinaryMatrix":
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix is not square")
            rows.append(sum((int(v) & 1) << j for j, v in enumerate(row)))
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "BinaryMatrix":
        return cls(n, (0,) * n)


def mat_mul(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Product over GF(2): row i of ab is the XOR of the rows of b selected
    by the bits of row i of a."""
    if a.dimension != b.dimension:
        raise ValueError("dimension mismatch")
    rows = []
    for r in a.rows:
        acc = 0
        while r:
            j = (r & -r).bit_length() - 1
            acc ^= b.rows[j]
            r &= r - 1
        rows.append(acc)
    return BinaryMatrix(a.dimension, tuple(rows))


def _ic_elements(m: int) -> list[PartialTransformation]:
    """All injective, order preserving, extensive partial maps of [m].

    Enumerated by backtracking over positions with the defining constraints
    applied as pruning; equivalent to filtering all (m+1)^m partial maps
    (checked against the brute filter in tests) but fast enough for m = 8.
    """
    out: list[PartialTransformation] = []
    image: list[int | None] = [None] * m

    def extend(pos: int, last: int) -> None:
        if pos == m:
            out.append(PartialTransformation(m, tuple(image)))
            return
        image[pos] = None
        extend(pos + 1, last)
        # injective + order preserving on a chain means strictly increasing
        # defined values; extensive means value >= position (1-based).
        for v in range(max(last + 1, pos + 1), m + 1):
            image[pos] = v
            extend(pos + 1, v)
        image[pos] = None

    extend(0, 0)
    return out


def build_ic(m: int) -> FiniteSemigroup:
    """The i-Catalan monoid IC_m of injective, order preserving, extensive
    partial maps of the chain [m]."""
    if not 1 <= m <= IC_MAX_DEGREE:
        raise ValueError(f"degree must be between 1 and {IC_MAX_DEGREE}")
    return generate(_ic_elements(m), compose, PartialTransformation.label,
                    source=f"ic:{m}")


_B2_NAMES = ("E11", "E12", "E21", "E22", "0")
_B2_ENTRIES = (
    ((1, 0), (0, 0)),
    ((0, 1), (0, 0)),
    ((0, 0), (1, 0)),
    ((0, 0), (0, 1)),
    ((0, 0), (0, 0)),
)


def _named_matrix_semigroup(names, entries, source) -> FiniteSemigroup:
    mats = [BinaryMatrix.from_lists(e) for e in entries]
    labels = dict(zip(mats, names))
    return generate(mats, mat_mul, labels.__getitem__, source=source)


def build_b2() -> FiniteSemigroup:
    """The 5-element Brandt semigroup: 2x2 matrix units and zero."""
    return _named_matrix_semigroup(_B2_NAMES, _B2_ENTRIES, "b2")


def build_b21() -> FiniteSemigroup:
    """The 6-element Brandt monoid: matrix units, zero and identity."""
    names = ("I",) + _B2_NAMES
    entries = (((1, 0), (0, 1)),) + _B2_ENTRIES
    return _named_matrix_semigroup(names, entries, "b21")


def _tn2_elements(n: int) -> list[BinaryMatrix]:
    free = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for bits in range(1 << len(free)):
        rows = [0] * n
        for t, (i, j) in enumerate(free):
            if (bits >> t) & 1:
                rows[i] |= 1 << j
        out.append(BinaryMatrix(n, tuple(rows)))
    return out


def build_tn2(n: int) -> FiniteSemigroup:
    """All upper triangular n x n matrices over GF(2) under matrix product."""
    if not 1 <= n <= TN2_MAX_DIMENSION:
        raise ValueError(f"dimension must be between 1 and {TN2_MAX_DIMENSION}")
    mats = _tn2_elements(n)
    count = len(mats)
    # The multiplication table is built with a batched mod-2 matmul; the
    # generic closure path would spend seconds on the 1024-element case.
    dense = np.array(
        [[[(m.rows[i] >> j) & 1 for j in range(n)] for i in range(n)] for m in mats],
        dtype=np.uint8)
    powers = (1 << np.arange(n, dtype=np.int64))[None, None, :]
    keys = (dense * powers).sum(axis=2) @ (1 << (n * np.arange(n, dtype=np.int64)))
    key_to_index = np.full(1 << (n * n), -1, dtype=np.int32)
    key_to_index[keys] = np.arange(count, dtype=np.int32)
    table = np.empty((count, count), dtype=np.int32)
    for i in range(count):
        prod = (dense[i].astype(np.int64) @ dense) & 1
        pkeys = (prod * powers).sum(axis=2) @ (1 << (n * np.arange(n, dtype=np.int64)))
        table[i] = key_to_index[pkeys]
    return FiniteSemigroup([m.label() for m in mats], table, carriers=mats,
                           source=f"t:{n}:2")


def embed_ic4() -> dict[PartialTransformation, BinaryMatrix]:
    """The embedding of IC_4 into T_4(2): alpha maps to the 0/1 matrix with
    a 1 in position (i, j) exactly when i alpha = j."""
    mapping = {}
    for alpha in _ic_elements(4):
        rows = tuple(0 if v is None else 1 << (v - 1) for v in alpha.image)
        mapping[alpha] = BinaryMatrix(4, rows)
    return mapping


def verify_homomorphism(f, s: FiniteSemigroup, t: FiniteSemigroup
                        ) -> tuple[bool, tuple[int, int] | None]:
    """Check f(ab) = f(a)f(b) over all pairs; returns the first offending
    pair (row-major) on failure.  f maps element indices of s to indices of t."""
    n = len(s)
    if isinstance(f, dict):
        img = np.array([f[i] for i in range(n)], dtype=np.int32)
    else:
        img = np.asarray(list(f), dtype=np.int32)
    if len(img) != n:
        raise ValueError("mapping is not total")
    lhs = img[s.table]
    rhs = t.table[np.ix_(img, img)]
    bad = lhs != rhs
    if bad.any():
        a, b = np.argwhere(bad)[0]
        return False, (int(a), int(b))
    return True, None


def build_semilattice_chain(n: int) -> FiniteSemigroup:
    """The chain 1 < ... < n as a semilattice under min."""
    if n < 1:
        raise ValueError("n must be positive")
    table = np.minimum.outer(np.arange(n), np.arange(n))
    return FiniteSemigroup([str(i) for i in range(1, n + 1)], table,
                           source=f"semilattice:{n}")


def build_cyclic(n: int) -> FiniteSemigroup:
    """The cyclic group of order n."""
    if n < 1:
        raise ValueError("n must be positive")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteSemigroup([f"a{i}" for i in range(n)], table,
                           source=f"cyclic:{n}")


def from_builtin_name(name: str) -> FiniteSemigroup:
    """Resolve builtin names: ic:m, b2, b21, t:n:2, semilattice:n, cyclic:n."""
    parts = name.split(":")
    try:
        if parts[0] == "b2" and len(parts) == 1:
            return build_b2()
        if parts[0] == "b21" and len(parts) == 1:
            return build_b21()
        if parts[0] == "ic" and len(parts) == 2:
            return build_ic(int(parts[1]))
        if parts[0] == "t" and len(parts) == 3:
            if parts[2] != "2":
                raise ValueError("only the 2-element field is supported")
            return build_tn2(int(parts[1]))
        if parts[0] == "semilattice" and len(parts) == 2:
            return build_semilattice_chain(int(parts[1]))
        if parts[0] == "cyclic" and len(parts) == 2:
            return build_cyclic(int(parts[1]))
    except ValueError as exc:
        raise ValueError(f"bad builtin '{name}': {exc}") from exc
    raise ValueError(f"unknown builtin '{name}'")
