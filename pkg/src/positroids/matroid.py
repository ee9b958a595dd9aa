"""Matroids given by their set of bases.

Everything is derived from the bases: rank, independence, circuits, duals,
the two quotient tests, and flags.  Ground sets are {1..n} with n <= 16;
subsets are encoded as bitmasks internally (bit e-1 for element e) but the
public interface speaks frozensets.

Determinants for matrix realizations use exact integer arithmetic only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import (
    CapExceeded,
    EmptyBases,
    ExchangeViolation,
    GroundSetMismatch,
    MixedCardinality,
    NonIncreasingPoints,
    NotAQuotient,
)

EXHAUSTIVE_CAP = 16


def mask_of(elements: Iterable[int], n: int) -> int:
    m = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} out of range 1..{n}")
        m |= 1 << (e - 1)
    return m


def set_of(mask: int) -> frozenset[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return frozenset(out)


def _check_cap(n: int, what: str) -> None:
    if n > EXHAUSTIVE_CAP:
        raise CapExceeded(f"{what} is exhaustive and capped at n={EXHAUSTIVE_CAP}, got n={n}")


def independence_table(n: int, basis_masks: Iterable[int]) -> bytearray:
    """ind[m] = 1 iff the subset with mask m lies inside some basis.

    Downward closure of the bases; supersets of m are numerically larger,
    so one descending sweep suffices.
    """
    ind = bytearray(1 << n)
    for b in basis_masks:
        ind[b] = 1
    for m in range((1 << n) - 1, 0, -1):
        if ind[m]:
            x = m
            while x:
                bit = x & -x
                ind[m ^ bit] = 1
                x ^= bit
    return ind


def circuit_masks_from_independence(n: int, ind) -> tuple[int, ...]:
    """Minimal dependent sets: dependent with every one-element deletion independent."""
    out = []
    for m in range(1, 1 << n):
        if ind[m]:
            continue
        x = m
        while x:
            bit = x & -x
            if not ind[m ^ bit]:
                break
            x ^= bit
        else:
            out.append(m)
    return tuple(out)


def union_of_contained(circuits: Iterable[int], target: int) -> int:
    """Union of the given circuit masks that fit inside target."""
    u = 0
    for c in circuits:
        if not c & ~target:
            u |= c
            if u == target:
                break
    return u


class Matroid:
    """A matroid on {1..n} stored as its sorted tuple of basis masks."""

    __slots__ = ("n", "k", "basis_masks", "_circuits", "_ranks")

    def __init__(self, n: int, basis_masks: tuple[int, ...]):
        # trusted constructor; use from_bases for validated construction
        self.n = n
        self.k = basis_masks[0].bit_count() if basis_masks else 0
        self.basis_masks = basis_masks
        self._circuits = None
        self._ranks = None

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        """Build a matroid after checking (B1), equal cardinality, and (B2)."""
        masks = sorted({mask_of(b, n) for b in bases})
        if not masks:
            raise EmptyBases("a matroid needs at least one basis")
        k = masks[0].bit_count()
        for m in masks:
            if m.bit_count() != k:
                raise MixedCardinality(
                    f"bases of sizes {k} and {m.bit_count()} in the same family"
                )
        basis_set = set(masks)
        for b1 in masks:
            for b2 in masks:
                if b1 == b2:
                    continue
                diff = b1 & ~b2
                add_candidates = b2 & ~b1
                x = diff
                while x:
                    xbit = x & -x
                    x ^= xbit
                    stripped = b1 ^ xbit
                    y = add_candidates
                    while y:
                        ybit = y & -y
                        y ^= ybit
                        if stripped | ybit in basis_set:
                            break
                    else:
                        raise ExchangeViolation(
                            set_of(b1), set_of(b2), xbit.bit_length()
                        )
        return cls(n, tuple(masks))

    # -- basic views ----------------------------------------------------

    @property
    def bases(self) -> frozenset[frozenset[int]]:
        return frozenset(set_of(m) for m in self.basis_masks)

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.basis_masks == other.basis_masks
        )

    def __hash__(self):
        return hash((self.n, self.basis_masks))

    def __repr__(self):
        return f"Matroid(n={self.n}, k={self.k}, bases={len(self.basis_masks)})"

    # -- rank and independence ------------------------------------------

    def rank_of(self, subset: Iterable[int]) -> int:
        m = mask_of(subset, self.n)
        return max((b & m).bit_count() for b in self.basis_masks)

    def is_independent(self, subset: Iterable[int]) -> bool:
        m = mask_of(subset, self.n)
        return any(not m & ~b for b in self.basis_masks)

    def rank_table(self) -> list[int]:
        """rank of every subset, indexed by mask; memoized."""
        if self._ranks is None:
            _check_cap(self.n, "rank table")
            ind = independence_table(self.n, self.basis_masks)
            ranks = [0] * (1 << self.n)
            for m in range(1, 1 << self.n):
                if ind[m]:
                    ranks[m] = m.bit_count()
                else:
                    r = 0
                    x = m
                    while x:
                        bit = x & -x
                        s = ranks[m ^ bit]
                        if s > r:
                            r = s
                        x ^= bit
                    ranks[m] = r
            self._ranks = ranks
        return self._ranks

    # -- circuits ---------------------------------------------------------

    def circuit_masks(self) -> tuple[int, ...]:
        if self._circuits is None:
            _check_cap(self.n, "circuit enumeration")
            ind = independence_table(self.n, self.basis_masks)
            self._circuits = circuit_masks_from_independence(self.n, ind)
        return self._circuits

    def circuits(self) -> frozenset[frozenset[int]]:
        return frozenset(set_of(m) for m in self.circuit_masks())

    # -- duality ----------------------------------------------------------

    def dual(self) -> "Matroid":
        full = (1 << self.n) - 1
        return Matroid(self.n, tuple(sorted(full ^ b for b in self.basis_masks)))

    # -- quotients ----------------------------------------------------------

    def is_quotient(self, larger: "Matroid") -> bool:
        """True iff every circuit of `larger` is a union of circuits of self."""
        if self.n != larger.n:
            raise GroundSetMismatch(f"ground sets differ: {self.n} vs {larger.n}")
        mine = self.circuit_masks()
        return all(
            union_of_contained(mine, c) == c for c in larger.circuit_masks()
        )

    def quotient_obstructions(self, larger: "Matroid") -> list[frozenset[int]]:
        """Circuits of `larger` that are not unions of circuits of self."""
        if self.n != larger.n:
            raise GroundSetMismatch(f"ground sets differ: {self.n} vs {larger.n}")
        mine = self.circuit_masks()
        bad = [c for c in larger.circuit_masks() if union_of_contained(mine, c) != c]
        return sorted((set_of(c) for c in bad), key=sorted)

    def is_quotient_by_rank(self, larger: "Matroid") -> bool:
        """Rank-difference test: r_N(B) - r_N(A) >= r_M(B) - r_M(A) for A inside B."""
        if self.n != larger.n:
            raise GroundSetMismatch(f"ground sets differ: {self.n} vs {larger.n}")
        rm = self.rank_table()
        rn = larger.rank_table()
        for b in range(1 << self.n):
            gap = rn[b] - rm[b]
            a = (b - 1) & b
            while True:
                if rn[a] - rm[a] > gap:
                    return False
                if a == 0:
                    break
                a = (a - 1) & b
        return True

    def flags(self, larger: "Matroid") -> list["Flag"]:
        """All nested basis pairs lower in self, upper in `larger`."""
        if not self.is_quotient(larger) or self.k >= larger.k:
            raise NotAQuotient(
                f"{self!r} is not a lower-rank quotient of {larger!r}"
            )
        out = [
            Flag(set_of(bm), set_of(bn))
            for bm in self.basis_masks
            for bn in larger.basis_masks
            if not bm & ~bn
        ]
        return sorted(out, key=lambda f: (sorted(f.lower), sorted(f.upper)))

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"n": self.n, "bases": sorted(sorted(b) for b in self.bases)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Matroid":
        return cls.from_bases(obj["n"], obj["bases"])


class Flag(NamedTuple):
    lower: frozenset[int]
    upper: frozenset[int]


def uniform(k: int, n: int) -> Matroid:
    """U_{k,n}: every k-subset of {1..n} is a basis."""
    if not 0 <= k <= n:
        raise ValueError(f"rank {k} out of range 0..{n}")
    masks = sorted(mask_of(c, n) for c in combinations(range(1, n + 1), k))
    return Matroid(n, tuple(masks))


# -- exact matrix realizations ------------------------------------------


def det_int(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(r) for r in rows]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(size - 1):
        if a[i][i] == 0:
            for r in range(i + 1, size):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class ExactMatrix:
    """Integer matrix with exact minor evaluation."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def minor(self, columns: Iterable[int]) -> int:
        """Determinant of the maximal submatrix on the given 1-indexed columns."""
        cols = sorted(columns)
        if len(cols) != self.rows:
            raise ValueError(f"need {self.rows} columns, got {len(cols)}")
        return det_int([[row[c - 1] for c in cols] for row in self.entries])

    def maximal_minors(self) -> dict[frozenset[int], int]:
        return {
            frozenset(cols): self.minor(cols)
            for cols in combinations(range(1, self.cols + 1), self.rows)
        }


def vandermonde_product(points: list[int], columns: Iterable[int]) -> int:
    """Expected Vandermonde minor: product of point differences over the columns."""
    cols = sorted(columns)
    prod = 1
    for j, c2 in enumerate(cols):
        for c1 in cols[:j]:
            prod *= points[c2 - 1] - points[c1 - 1]
    return prod


def realize_uniform(k: int, n: int, points: list[int]) -> ExactMatrix:
    """Moment-curve realization of the rank-k uniform matroid on n points.

    Row r holds the (r-1)-th powers of the points.  Every maximal minor is
    recomputed exactly and checked to be positive and equal to the
    Vandermonde product, which is what makes all k-subsets bases.
    """
    if len(points) != n:
        raise ValueError(f"need {n} points, got {len(points)}")
    if points[0] <= 0 or any(a >= b for a, b in zip(points, points[1:])):
        raise NonIncreasingPoints(f"points must satisfy 0 < a_1 < ... < a_n: {points}")
    if not 0 <= k <= n:
        raise ValueError(f"rank {k} out of range 0..{n}")
    mat = ExactMatrix(tuple(tuple(a**r for a in points) for r in range(k)))
    for cols in combinations(range(1, n + 1), k):
        d = mat.minor(cols)
        assert d > 0, f"minor on {cols} is {d}, expected positive"
        assert d == vandermonde_product(points, cols), f"minor on {cols} != product"
    return mat


def matroid_from_matrix(mat: ExactMatrix) -> Matroid:
    """Column matroid of an integer matrix: bases are the nonzero maximal minors."""
    masks = [
        mask_of(cols, mat.cols)
        for cols in combinations(range(1, mat.cols + 1), mat.rows)
        if mat.minor(cols) != 0
    ]
    if not masks:
        raise EmptyBases("matrix does not have full row rank")
    return Matroid(mat.cols, tuple(sorted(masks)))
