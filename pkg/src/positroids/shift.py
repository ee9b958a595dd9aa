"""Freeze/shift/decorate moves on decorated permutations.

A move freezes the VALUES in a set A at their current positions, rotates
the remaining values one step through the unfrozen positions (left or
right), and decorates any resulting fixed point (loop for left shifts,
coloop for right shifts).  Left shifts of the rank-k uniform permutation
produce rank-(k-1) positroids whose circuits admit the closed form
implemented by predicted_circuits.

Decoration fine print (the definition leaves non-generic cases open; the
choices here are validated against the worked examples and the duality
identity): a frozen decorated fixed point keeps its decoration; an
unfrozen fixed point of the result is (re)decorated by the direction of
the shift, even in the degenerate case where a single unfrozen value maps
to itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cyclic import CyclicInterval, cyclic_components, interval_length, interval_set
from .errors import IntervalTooLong, ParseError
from .matroid import mask_of
from .positroid import DecoratedPermutation, uniform_perm


class FreezeSet:
    """A subset of {1..n} with its decomposition into maximal cyclic arcs."""

    __slots__ = ("n", "elements", "components")

    def __init__(self, n: int, elements):
        self.n = n
        self.elements = frozenset(elements)
        self.components = tuple(cyclic_components(self.elements, n))

    @classmethod
    def parse(cls, text: str, n: int) -> "FreezeSet":
        """Parse "9-1,6" style interval lists; intervals may wrap."""
        elements: set[int] = set()
        for token in text.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                if "-" in token:
                    a, b = (int(p) for p in token.split("-", 1))
                    elements |= interval_set(CyclicInterval(a, b), n)
                else:
                    elements.add(int(token))
            except ValueError:
                raise ParseError(f"bad freeze-set token {token!r}") from None
        for x in elements:
            if not 1 <= x <= n:
                raise ParseError(f"freeze element {x} out of range 1..{n}")
        return cls(n, elements)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(interval_length(c, self.n) for c in self.components)

    @property
    def endpoints(self) -> tuple[int, ...]:
        """Clockwise-last element of each component."""
        return tuple(c.b for c in self.components)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, FreezeSet)
            and self.n == other.n
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.n, self.elements))

    def __repr__(self):
        return f"FreezeSet(n={self.n}, {{{','.join(map(str, sorted(self.elements)))}}})"

    @classmethod
    def coerce(cls, value, n: int) -> "FreezeSet":
        if isinstance(value, FreezeSet):
            if value.n != n:
                raise ValueError(f"freeze set lives on [{value.n}], expected [{n}]")
            return value
        return cls(n, value)


def _shift(perm: DecoratedPermutation, values, step: int) -> DecoratedPermutation:
    n = perm.n
    frozen = FreezeSet.coerce(values, n).elements
    image = perm.image
    unfrozen = [p for p in range(1, n + 1) if image[p - 1] not in frozen]
    new_image = list(image)
    t = len(unfrozen)
    for r, p in enumerate(unfrozen):
        new_image[p - 1] = image[unfrozen[(r + step) % t] - 1]
    coloops = []
    for p in range(1, n + 1):
        if new_image[p - 1] != p:
            continue
        if image[p - 1] == p and p in frozen:
            if p in perm.coloops:
                coloops.append(p)
        elif step == -1:
            coloops.append(p)
    return DecoratedPermutation(new_image, coloops)


def shift_left(perm: DecoratedPermutation, values) -> DecoratedPermutation:
    """Freeze the values in A, rotate the rest one step left, decorate loops."""
    return _shift(perm, values, +1)


def shift_right(perm: DecoratedPermutation, values) -> DecoratedPermutation:
    """Mirror move: rotate right, decorate new fixed points as coloops."""
    return _shift(perm, values, -1)


def _check_component_lengths(k: int, freeze: FreezeSet) -> None:
    if k < 1:
        raise ValueError(f"rank must be at least 1, got {k}")
    for comp, length in zip(freeze.components, freeze.lengths):
        if length > k - 1:
            raise IntervalTooLong(
                f"component {comp} has length {length} > k-1 = {k - 1}"
            )


def predicted_rank(k: int, n: int, freeze) -> int:
    """Rank of the left shift of the rank-k uniform permutation: always k-1.

    Requires every frozen component shorter than k.  The claim is
    re-verified against the actual shift before returning.
    """
    freeze = FreezeSet.coerce(freeze, n)
    _check_component_lengths(k, freeze)
    shifted = shift_left(uniform_perm(k, n), freeze)
    assert shifted.rank == k - 1, f"shift of rank-{k} uniform has rank {shifted.rank}"
    return k - 1


@dataclass(frozen=True)
class PredictedCircuits:
    """Circuit family of a left-shifted uniform positroid.

    `small` holds one interval per frozen component: the arc of length
    k - l_j that extends the component to a full arc of length k.  The
    remaining circuits are the k-subsets containing no small interval.
    """

    n: int
    k: int
    small: tuple[CyclicInterval, ...]
    circuits: frozenset[frozenset[int]] = field(repr=False)

    @property
    def small_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(interval_set(c, self.n) for c in self.small)


def predicted_circuits(k: int, n: int, freeze) -> PredictedCircuits:
    freeze = FreezeSet.coerce(freeze, n)
    _check_component_lengths(k, freeze)
    small = tuple(
        CyclicInterval(c.b % n + 1, (c.b + k - length - 1) % n + 1)
        for c, length in zip(freeze.components, freeze.lengths)
    )
    small_sets = [interval_set(c, n) for c in small]
    circuits = set(small_sets)
    for cand in combinations(range(1, n + 1), k):
        cset = frozenset(cand)
        if not any(s <= cset for s in small_sets):
            circuits.add(cset)
    return PredictedCircuits(n, k, small, frozenset(circuits))


def circuit_cover_uniform(k: int, n: int, freeze) -> bool:
    """Can every (k+1)-subset be written as a union of predicted circuits?

    This is the covering property that makes the shifted positroid a
    quotient of the rank-k uniform one.
    """
    pred = predicted_circuits(k, n, freeze)
    circuit_masks = [mask_of(c, n) for c in pred.circuits]
    for target in combinations(range(1, n + 1), k + 1):
        tmask = mask_of(target, n)
        union = 0
        for c in circuit_masks:
            if not c & ~tmask:
                union |= c
                if union == tmask:
                    break
        if union != tmask:
            return False
    return True
