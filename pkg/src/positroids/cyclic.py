"""Cyclic total orders on {1..n}, Gale comparison, and cyclic intervals.

Elements are one-indexed throughout.  The order <_i is the rotation of the
natural order that starts at i:

    i <_i i+1 <_i ... <_i n <_i 1 <_i ... <_i i-1

Subsets are plain frozensets of ints; a cyclic interval [a, b] is the arc
a, a+1, ..., b read cyclically (wrapping past n when b < a).
"""

from __future__ import annotations

from typing import Iterable, NamedTuple


class CyclicInterval(NamedTuple):
    a: int
    b: int

    def __str__(self):
        return f"[{self.a}]" if self.a == self.b else f"[{self.a},{self.b}]"


def check_element(x: int, n: int) -> int:
    if not 1 <= x <= n:
        raise ValueError(f"element {x} out of range 1..{n}")
    return x


def i_position(i: int, x: int, n: int) -> int:
    """Rank of x in the i-order, from 0 (for x = i) to n-1."""
    return (x - i) % n


def i_precedes(i: int, a: int, b: int, n: int) -> bool:
    """True iff a comes strictly before b in the i-order."""
    for x in (i, a, b):
        check_element(x, n)
    return (a - i) % n < (b - i) % n


def i_sorted(i: int, elements: Iterable[int], n: int) -> tuple[int, ...]:
    """Elements sorted ascending in the i-order."""
    return tuple(sorted(elements, key=lambda x: (x - i) % n))


def gale_leq(i: int, s: Iterable[int], t: Iterable[int], n: int) -> bool:
    """Gale comparison S <=_i T: sort both in the i-order, compare slotwise."""
    s = i_sorted(i, s, n)
    t = i_sorted(i, t, n)
    if len(s) != len(t):
        raise ValueError(f"cardinality mismatch: |S|={len(s)}, |T|={len(t)}")
    return gale_leq_sorted(i, s, t, n)


def gale_leq_sorted(i, s_sorted, t_sorted, n) -> bool:
    """Gale comparison of sequences already sorted in the i-order."""
    return all((a - i) % n <= (b - i) % n for a, b in zip(s_sorted, t_sorted))


def interval_length(iv: CyclicInterval, n: int) -> int:
    return (iv.b - iv.a) % n + 1


def interval_set(iv: CyclicInterval, n: int) -> frozenset[int]:
    """The elements of [a, b] as a set."""
    a, b = iv
    return frozenset((a - 1 + j) % n + 1 for j in range(interval_length(iv, n)))


def cyclic_components(a_set: Iterable[int], n: int) -> list[CyclicInterval]:
    """Decompose A into maximal disjoint cyclic intervals.

    The whole ground set decomposes as the single interval [1, n] (the
    circle has no canonical start, so a start is fixed deterministically).
    Components are listed by their smallest contained element.
    """
    members = frozenset(a_set)
    for x in members:
        check_element(x, n)
    if not members:
        return []
    if len(members) == n:
        return [CyclicInterval(1, n)]
    components = []
    starts = [x for x in members if (x - 2) % n + 1 not in members]
    for a in starts:
        b = a
        while b % n + 1 in members:
            b = b % n + 1
        components.append(CyclicInterval(a, b))
    components.sort(key=lambda iv: min(interval_set(iv, n)))
    return components
