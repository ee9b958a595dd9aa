"""Decorated permutations, Grassmann necklaces, and their positroids.

The three translations implemented here:

  * permutation -> necklace: entry i is the set of weak i-excedances;
  * necklace -> permutation: read transitions I_i -> I_{i+1};
  * necklace <-> matroid: entry i is the Gale-minimal basis in the
    i-order, and the bases of the positroid are the k-subsets that
    dominate every necklace entry in the corresponding i-order.

A matroid is a positroid exactly when the round trip through its necklace
reproduces it; for any other matroid the round trip yields the smallest
positroid containing it.

Text format for decorated permutations: comma-separated values with a
suffix marker on every fixed point, "_" for a loop and "^" for a coloop,
e.g. "5,2_,6,1,3,4".  Commas are mandatory so n >= 10 stays unambiguous.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Sequence

from .cyclic import gale_leq, i_sorted
from .errors import InvalidNecklace, ParseError
from .matroid import Matroid, mask_of, set_of


class DecoratedPermutation:
    """Bijection on {1..n} with each fixed point marked loop or coloop."""

    __slots__ = ("n", "image", "coloops")

    def __init__(self, image: Sequence[int], coloops: Iterable[int] = ()):
        image = tuple(image)
        n = len(image)
        if sorted(image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {image}")
        coloops = frozenset(coloops)
        for c in coloops:
            if not (1 <= c <= n and image[c - 1] == c):
                raise ValueError(f"coloop mark on non-fixed point {c}")
        self.n = n
        self.image = image
        self.coloops = coloops

    # -- text form --------------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> "DecoratedPermutation":
        tokens = [t.strip() for t in text.split(",")]
        image = []
        coloops = []
        loops = []
        for pos, tok in enumerate(tokens, start=1):
            marker = ""
            if tok.endswith(("_", "^")):
                tok, marker = tok[:-1], tok[-1]
            try:
                value = int(tok)
            except ValueError:
                raise ParseError(f"bad permutation token {tok!r}") from None
            image.append(value)
            if marker == "^":
                coloops.append(pos)
            elif marker == "_":
                loops.append(pos)
            if marker and value != pos:
                raise ParseError(f"decoration on non-fixed point at position {pos}")
        try:
            perm = cls(image, coloops)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if perm.fixed_points() != frozenset(coloops) | frozenset(loops):
            missing = sorted(perm.fixed_points() - set(coloops) - set(loops))
            raise ParseError(f"fixed points {missing} need a '_' or '^' marker")
        return perm

    def __str__(self):
        parts = []
        for pos, value in enumerate(self.image, start=1):
            if value == pos:
                parts.append(f"{value}^" if pos in self.coloops else f"{value}_")
            else:
                parts.append(str(value))
        return ",".join(parts)

    def __repr__(self):
        return f"DecoratedPermutation({str(self)!r})"

    # -- structure ----------------------------------------------------------

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __eq__(self, other):
        return (
            isinstance(other, DecoratedPermutation)
            and self.image == other.image
            and self.coloops == other.coloops
        )

    def __hash__(self):
        return hash((self.image, self.coloops))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.image, start=1) if v == i)

    def loops(self) -> frozenset[int]:
        return self.fixed_points() - self.coloops

    def weak_excedances(self, i: int) -> frozenset[int]:
        """Positions j with sigma(j) a coloop mark or j <_i sigma(j)."""
        masks = weak_excedance_masks(self.n, self.image, self._coloop_mask())
        return set_of(masks[i - 1])

    @property
    def rank(self) -> int:
        return len(self.weak_excedances(1))

    def inverse(self) -> "DecoratedPermutation":
        """Inverse permutation with loop and coloop marks swapped.

        The swap makes the positroid of the inverse the dual of the
        positroid of the original.
        """
        image = [0] * self.n
        for i, v in enumerate(self.image, start=1):
            image[v - 1] = i
        return DecoratedPermutation(image, self.loops())

    def _coloop_mask(self) -> int:
        return mask_of(self.coloops, self.n)


def perm_inverse(sigma: DecoratedPermutation) -> DecoratedPermutation:
    return sigma.inverse()


def uniform_perm(k: int, n: int) -> DecoratedPermutation:
    """The decorated permutation of the rank-k uniform positroid on {1..n}."""
    if not 0 <= k <= n:
        raise ValueError(f"rank {k} out of range 0..{n}")
    image = [(n - k + i - 1) % n + 1 for i in range(1, n + 1)]
    coloops = range(1, n + 1) if k == n else ()
    return DecoratedPermutation(image, coloops)


def weak_excedance_masks(n: int, image: Sequence[int], coloop_mask: int) -> list[int]:
    """Bitmask of W_i for each i in 1..n (list index i-1).

    A non-fixed position j is a weak i-excedance exactly for i in the
    cyclic interval [sigma(j)+1, j].
    """
    masks = [0] * n
    for j in range(1, n + 1):
        v = image[j - 1]
        bit = 1 << (j - 1)
        if v == j:
            if coloop_mask & bit:
                for i in range(n):
                    masks[i] |= bit
        else:
            i = v % n + 1
            while True:
                masks[i - 1] |= bit
                if i == j:
                    break
                i = i % n + 1
    return masks


class GrassmannNecklace:
    """Cyclic sequence (I_1, ..., I_n) of k-subsets obeying the transition rule."""

    __slots__ = ("n", "k", "sets")

    def __init__(self, n: int, sets: Sequence[Iterable[int]]):
        sets = tuple(frozenset(s) for s in sets)
        if len(sets) != n:
            raise InvalidNecklace(f"need {n} entries, got {len(sets)}")
        k = len(sets[0]) if sets else 0
        for s in sets:
            if len(s) != k:
                raise InvalidNecklace(f"entries of sizes {k} and {len(s)} mixed")
            for x in s:
                if not 1 <= x <= n:
                    raise InvalidNecklace(f"element {x} out of range 1..{n}")
        for i in range(1, n + 1):
            cur = sets[i - 1]
            nxt = sets[i % n]
            if i in cur:
                if not (cur - {i}) <= nxt:
                    raise InvalidNecklace(
                        f"entry {i + 1}: expected (I_{i} minus {i}) plus one element"
                    )
            elif nxt != cur:
                raise InvalidNecklace(f"entry {i + 1} changed although {i} not in I_{i}")
        self.n = n
        self.k = k
        self.sets = sets

    def __eq__(self, other):
        return (
            isinstance(other, GrassmannNecklace)
            and self.n == other.n
            and self.sets == other.sets
        )

    def __hash__(self):
        return hash((self.n, self.sets))

    def __repr__(self):
        body = ", ".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self.sets)
        return f"GrassmannNecklace(n={self.n}, k={self.k}, [{body}])"

    def to_json_obj(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": [sorted(s) for s in self.sets]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GrassmannNecklace":
        neck = cls(obj["n"], obj["sets"])
        if neck.k != obj.get("k", neck.k):
            raise InvalidNecklace(f"declared k={obj['k']} but entries have size {neck.k}")
        return neck


def necklace_from_perm(sigma: DecoratedPermutation) -> GrassmannNecklace:
    """Necklace whose i-th entry is the set of weak i-excedances."""
    masks = weak_excedance_masks(sigma.n, sigma.image, sigma._coloop_mask())
    return GrassmannNecklace(sigma.n, [set_of(m) for m in masks])


def perm_from_necklace(neck: GrassmannNecklace) -> DecoratedPermutation:
    """Inverse of necklace_from_perm, reading the transitions I_i -> I_{i+1}."""
    n = neck.n
    image = {}
    coloops = []
    for i in range(1, n + 1):
        cur = neck.sets[i - 1]
        nxt = neck.sets[i % n]
        if i in cur:
            extra = nxt - (cur - {i})
            if extra == {i}:
                image[i] = i
                coloops.append(i)
            else:
                (j,) = extra
                image[j] = i
        else:
            image[i] = i
    if sorted(image) != list(range(1, n + 1)):
        raise InvalidNecklace("transitions do not assemble into a permutation")
    return DecoratedPermutation([image[j] for j in range(1, n + 1)], coloops)


def necklace_from_matroid(matroid: Matroid) -> GrassmannNecklace:
    """Necklace of Gale-minimal bases, one per i-order."""
    n = matroid.n
    bases = [set_of(m) for m in matroid.basis_masks]
    entries = []
    for i in range(1, n + 1):
        cur = bases[0]
        for b in bases[1:]:
            if gale_leq(i, b, cur, n):
                cur = b
        # a matroid always has a unique i-Gale minimum; check it anyway
        assert all(gale_leq(i, cur, b, n) for b in bases), (
            f"no Gale minimum in the {i}-order"
        )
        entries.append(cur)
    return GrassmannNecklace(n, entries)


def bases_from_necklace(neck: GrassmannNecklace, validate: bool = True) -> Matroid:
    """Positroid of a necklace: all k-subsets dominating every entry.

    With validate=True the resulting basis family is run through the full
    exchange check; the necklace construction guarantees it passes.
    """
    n, k = neck.n, neck.k
    sorted_entries = [i_sorted(i, neck.sets[i - 1], n) for i in range(1, n + 1)]
    masks = []
    for cand in combinations(range(1, n + 1), k):
        ok = True
        for i in range(1, n + 1):
            cs = i_sorted(i, cand, n)
            if any(
                (a - i) % n < (b - i) % n
                for a, b in zip(cs, sorted_entries[i - 1])
            ):
                ok = False
                break
        if ok:
            masks.append(mask_of(cand, n))
    if validate:
        return Matroid.from_bases(n, [set_of(m) for m in masks])
    return Matroid(n, tuple(sorted(masks)))


def positroid_from_perm(sigma: DecoratedPermutation) -> Matroid:
    return bases_from_necklace(necklace_from_perm(sigma))


def is_positroid(matroid: Matroid) -> bool:
    """True iff the matroid equals the positroid of its own necklace."""
    envelope = bases_from_necklace(necklace_from_matroid(matroid), validate=False)
    return envelope.basis_masks == matroid.basis_masks


def smallest_containing_positroid(matroid: Matroid) -> Matroid:
    """Positroid of the matroid's necklace; equals the matroid iff it is one."""
    return bases_from_necklace(necklace_from_matroid(matroid), validate=False)
