"""The poset of positroid quotients and everything enumerated over it.

Elements are the decorated permutations on {1..n}; the covering relation
pairs a rank-(k-1) positroid with a rank-k positroid when the first is a
quotient of the second, and the order is the transitive closure of the
covers.  On top of the poset this module provides the Moebius value of the
full interval, the census of uniform-positroid covers against the
shift-move characterization, the two conjecture checkers, and DOT / JSON /
CSV exports.

The inner loops run on bitmask tables (numpy for the subset-lattice
sweeps); every derived quantity is cross-checked in the test suite against
the plain set-based implementations in the sibling modules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, islice, permutations, product
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .errors import CapExceeded
from .matroid import Matroid, mask_of, set_of, union_of_contained
from .positroid import DecoratedPermutation, uniform_perm, weak_excedance_masks
from .shift import shift_left

DEFAULT_CAP = 10
LONG_RUNNING_MIN = 9

Key = tuple[tuple[int, ...], int]  # (image, coloop mask)


# -- enumeration ---------------------------------------------------------


def _decorated_keys(n: int) -> Iterator[Key]:
    """All (image, coloop mask) pairs: images in lex order, loops before coloops."""
    for image in permutations(range(1, n + 1)):
        fixed = [i for i in range(1, n + 1) if image[i - 1] == i]
        if not fixed:
            yield image, 0
            continue
        for bits in product((0, 1), repeat=len(fixed)):
            yield image, sum(1 << (f - 1) for f, b in zip(fixed, bits) if b)


def _key_rank(key: Key) -> int:
    image, coloop_mask = key
    exc = sum(1 for i, v in enumerate(image, start=1) if v > i and v != i)
    return exc + coloop_mask.bit_count()


def _key_perm(key: Key) -> DecoratedPermutation:
    image, coloop_mask = key
    return DecoratedPermutation(image, set_of(coloop_mask))


def decorated_permutations(
    n: int, k: Optional[int] = None, cap: int = DEFAULT_CAP
) -> list[DecoratedPermutation]:
    """All decorated permutations on {1..n}, optionally only those of rank k."""
    if n > cap:
        raise CapExceeded(f"enumeration capped at n={cap}, got n={n}")
    keys = _decorated_keys(n)
    if k is not None:
        keys = (key for key in keys if _key_rank(key) == k)
    return [_key_perm(key) for key in keys]


# -- bitmask engine -------------------------------------------------------


@lru_cache(maxsize=None)
def _position_tables(n: int, k: int):
    """Per k-subset, its sorted positions in every i-order.

    Returns (masks, index, pos) with pos[r, i-1] the ascending i-order
    positions of subset r; Gale domination is a componentwise >=.
    """
    combos = list(combinations(range(1, n + 1), k))
    masks = tuple(mask_of(c, n) for c in combos)
    pos = np.zeros((len(combos), n, k), dtype=np.int8)
    for r, combo in enumerate(combos):
        for i in range(1, n + 1):
            pos[r, i - 1] = sorted((x - i) % n for x in combo)
    index = {m: r for r, m in enumerate(masks)}
    return masks, index, pos


def _basis_masks_for_key(n: int, key: Key) -> tuple[int, ...]:
    image, coloop_mask = key
    wmasks = weak_excedance_masks(n, image, coloop_mask)
    k = wmasks[0].bit_count()
    masks, index, pos = _position_tables(n, k)
    rows = [index[m] for m in wmasks]
    mins = pos[rows, np.arange(n)]
    good = (pos >= mins[None, :, :]).all(axis=(1, 2))
    return tuple(sorted(masks[r] for r in np.flatnonzero(good)))


@lru_cache(maxsize=None)
def _sos_indices(n: int):
    idx = np.arange(1 << n)
    return [np.flatnonzero((idx >> b) & 1 == 0) for b in range(n)]


def _circuit_masks_np(n: int, basis_masks) -> np.ndarray:
    """Circuit masks via a vectorized subset-lattice sweep."""
    ind = np.zeros(1 << n, dtype=bool)
    ind[list(basis_masks)] = True
    for b, without in enumerate(_sos_indices(n)):
        ind[without] |= ind[without + (1 << b)]
    ok = ~ind
    for b, without in enumerate(_sos_indices(n)):
        with_b = without + (1 << b)
        ok[with_b] &= ind[without]
    return np.flatnonzero(ok).astype(np.int64)


def _covers_all_targets(circuits: np.ndarray, targets: np.ndarray) -> bool:
    """Is every target mask a union of the circuit masks inside it?"""
    if targets.size == 0:
        return True
    if circuits.size == 0:
        return False
    contained = (circuits[:, None] & ~targets[None, :]) == 0
    unions = np.bitwise_or.reduce(
        np.where(contained, circuits[:, None], 0), axis=0
    )
    return bool((unions == targets).all())


@lru_cache(maxsize=None)
def _uniform_circuit_targets(n: int, k: int) -> np.ndarray:
    """Circuits of the rank-k uniform matroid: all (k+1)-subsets (none if k = n)."""
    if k >= n:
        return np.zeros(0, dtype=np.int64)
    return np.array(
        sorted(mask_of(c, n) for c in combinations(range(1, n + 1), k + 1)),
        dtype=np.int64,
    )


# -- the poset -------------------------------------------------------------


class QuotientPoset:
    """Positroid quotient poset: graded elements, cover edges, reachability."""

    def __init__(self, n, elements, ranks, covers):
        self.n = n
        self.elements = tuple(elements)
        self.ranks = tuple(ranks)
        self.covers = tuple(sorted(covers))
        self.index_of = {p: i for i, p in enumerate(self.elements)}
        groups: list[list[int]] = [[] for _ in range(n + 1)]
        for i, r in enumerate(self.ranks):
            groups[r].append(i)
        self.rank_groups = tuple(tuple(g) for g in groups)
        down = [1 << i for i in range(len(self.elements))]
        for lo, hi in self.covers:
            down[hi] |= down[lo]
        changed = True
        while changed:  # covers are rank-adjacent, so one pass per rank suffices
            changed = False
            for lo, hi in self.covers:
                merged = down[hi] | down[lo]
                if merged != down[hi]:
                    down[hi] = merged
                    changed = True
        self._down = tuple(down)
        (self.bottom,) = self.rank_groups[0]
        (self.top,) = self.rank_groups[n]

    def leq(self, lo: int, hi: int) -> bool:
        """Order relation on element indices (transitive closure of covers)."""
        return bool(self._down[hi] >> lo & 1)

    def down_set(self, idx: int) -> list[int]:
        mask = self._down[idx]
        return [i for i in range(len(self.elements)) if mask >> i & 1]

    def covers_of(self, hi: int) -> list[int]:
        return [lo for lo, h in self.covers if h == hi]

    def covered_by(self, lo: int) -> list[int]:
        return [hi for l, hi in self.covers if l == lo]

    def __repr__(self):
        return (
            f"QuotientPoset(n={self.n}, elements={len(self.elements)}, "
            f"covers={len(self.covers)})"
        )


def build_poset(n: int, cap: int = DEFAULT_CAP) -> QuotientPoset:
    """Enumerate D_n, test quotients between adjacent ranks, close the order."""
    if n > cap:
        raise CapExceeded(f"poset construction capped at n={cap}, got n={n}")
    keys = list(_decorated_keys(n))
    ranks = [_key_rank(key) for key in keys]
    circuits = [
        tuple(int(c) for c in _circuit_masks_np(n, _basis_masks_for_key(n, key)))
        for key in keys
    ]
    by_rank: list[list[int]] = [[] for _ in range(n + 1)]
    for i, r in enumerate(ranks):
        by_rank[r].append(i)
    covers = []
    for k in range(1, n + 1):
        for hi in by_rank[k]:
            hi_circuits = circuits[hi]
            for lo in by_rank[k - 1]:
                lo_circuits = circuits[lo]
                if all(
                    union_of_contained(lo_circuits, c) == c for c in hi_circuits
                ):
                    covers.append((lo, hi))
    return QuotientPoset(n, [_key_perm(key) for key in keys], ranks, covers)


def rank_sizes(poset: QuotientPoset) -> tuple[int, ...]:
    return tuple(len(g) for g in poset.rank_groups)


def mobius(poset: QuotientPoset) -> int:
    """Moebius value of the full interval, by the usual recursion."""
    mu = [0] * len(poset.elements)
    mu[poset.bottom] = 1
    order = sorted(range(len(poset.elements)), key=lambda i: poset.ranks[i])
    for x in order:
        if x == poset.bottom:
            continue
        below = poset._down[x] & ~(1 << x)
        total = 0
        i = 0
        while below:
            if below & 1:
                total += mu[i]
            below >>= 1
            i += 1
        mu[x] = -total
    return mu[poset.top]


# -- census of uniform-positroid covers -----------------------------------


@dataclass(frozen=True)
class CensusRow:
    """One Table-style row: covers of the rank-k uniform positroid on [n]."""

    n: int
    k: int
    total: int
    characterized: int
    missing: int
    witnesses: tuple[DecoratedPermutation, ...]

    def csv(self) -> str:
        return f"{self.n},{self.k},{self.total},{self.characterized},{self.missing}"


def shift_characterized_keys(k: int, n: int) -> set[Key]:
    """Left shifts of the rank-k uniform permutation by all A with |A| <= k-1."""
    pi = uniform_perm(k, n)
    out: set[Key] = set()
    for size in range(min(k - 1, n) + 1):
        for a_set in combinations(range(1, n + 1), size):
            shifted = shift_left(pi, a_set)
            out.add((shifted.image, mask_of(shifted.coloops, n)))
    return out


def _census_quotient_keys_chunk(
    n: int, k: int, start: int, stop: int
) -> list[Key]:
    """Quotient covers of the rank-k uniform among permutations start..stop.

    Only loop-decorated elements can appear: a coloop forces a rank drop
    when deleted, which the uniform matroid (k < n) never exhibits, so a
    coloopful positroid is never a quotient of it.  The k = n census does
    not use this path.
    """
    targets = _uniform_circuit_targets(n, k)
    out = []
    for image in islice(permutations(range(1, n + 1)), start, stop):
        exc = 0
        for i, v in enumerate(image, start=1):
            if v > i:
                exc += 1
        if exc != k - 1:
            continue
        key = (image, 0)
        bases = _basis_masks_for_key(n, key)
        circuits = _circuit_masks_np(n, bases)
        if _covers_all_targets(circuits, targets):
            out.append(key)
    return out


def _census_quotient_keys(
    n: int,
    k: int,
    threads: int = 1,
    progress: Optional[Callable[[str], None]] = None,
    checkpoint: Optional[str] = None,
) -> list[Key]:
    if k == n:
        # no circuits upstairs: every rank-(n-1) element qualifies
        return [key for key in _decorated_keys(n) if _key_rank(key) == n - 1]
    import math

    total_perms = math.factorial(n)
    chunk_count = 1
    if total_perms > 50000:
        chunk_count = max(threads, 1) * 8
    bounds = [
        (total_perms * c // chunk_count, total_perms * (c + 1) // chunk_count)
        for c in range(chunk_count)
    ]
    done: dict[int, list[Key]] = {}
    if checkpoint:
        done = _load_checkpoint(checkpoint, n, k, chunk_count)
    pending = [c for c in range(chunk_count) if c not in done]
    if threads > 1 and len(pending) > 1:
        import multiprocessing

        with multiprocessing.Pool(threads) as pool:
            jobs = {
                c: pool.apply_async(
                    _census_quotient_keys_chunk, (n, k, *bounds[c])
                )
                for c in pending
            }
            for c in pending:
                done[c] = [(tuple(img), cm) for img, cm in jobs[c].get()]
                _report_chunk(progress, checkpoint, n, k, chunk_count, done, c)
    else:
        for c in pending:
            done[c] = _census_quotient_keys_chunk(n, k, *bounds[c])
            _report_chunk(progress, checkpoint, n, k, chunk_count, done, c)
    out: list[Key] = []
    for c in range(chunk_count):
        out.extend(done[c])
    return out


def _report_chunk(progress, checkpoint, n, k, chunk_count, done, c):
    if progress:
        progress(f"census n={n} k={k}: chunk {len(done)}/{chunk_count} done")
    if checkpoint:
        _save_checkpoint(checkpoint, n, k, chunk_count, done)


def _checkpoint_obj(n, k, chunk_count, done):
    return {
        "n": n,
        "k": k,
        "chunks": chunk_count,
        "done": {str(c): [[list(img), cm] for img, cm in keys] for c, keys in done.items()},
    }


def _save_checkpoint(path, n, k, chunk_count, done):
    import os

    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(_checkpoint_obj(n, k, chunk_count, done), fh)
    os.replace(tmp, path)


def _load_checkpoint(path, n, k, chunk_count) -> dict[int, list[Key]]:
    import os

    if not os.path.exists(path):
        return {}
    with open(path) as fh:
        obj = json.load(fh)
    if (obj.get("n"), obj.get("k"), obj.get("chunks")) != (n, k, chunk_count):
        return {}
    return {
        int(c): [(tuple(img), cm) for img, cm in keys]
        for c, keys in obj["done"].items()
    }


def uniform_quotient_census(
    k: int,
    n: int,
    cap: int = DEFAULT_CAP,
    long_running: bool = False,
    threads: int = 1,
    progress: Optional[Callable[[str], None]] = None,
    checkpoint: Optional[str] = None,
) -> CensusRow:
    """Count covers of the rank-k uniform positroid and the shift-characterized ones."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > cap:
        raise CapExceeded(f"census capped at n={cap}, got n={n}")
    if n >= LONG_RUNNING_MIN and not long_running:
        raise CapExceeded(
            f"census with n={n} >= {LONG_RUNNING_MIN} runs only with --long-running"
        )
    quotient_keys = _census_quotient_keys(
        n, k, threads=threads, progress=progress, checkpoint=checkpoint
    )
    characterized = shift_characterized_keys(k, n)
    witnesses = tuple(
        _key_perm(key) for key in quotient_keys if key not in characterized
    )
    total = len(quotient_keys)
    return CensusRow(n, k, total, total - len(witnesses), len(witnesses), witnesses)


# -- conjecture checkers ---------------------------------------------------


def _necklace_masks_of(poset: QuotientPoset, idx: int) -> list[int]:
    p = poset.elements[idx]
    return weak_excedance_masks(p.n, p.image, mask_of(p.coloops, p.n))


def check_necklace_containment(poset: QuotientPoset):
    """Violations of componentwise necklace containment along cover edges."""
    violations = []
    neck = [_necklace_masks_of(poset, i) for i in range(len(poset.elements))]
    for lo, hi in poset.covers:
        if any(a & ~b for a, b in zip(neck[lo], neck[hi])):
            violations.append((poset.elements[lo], poset.elements[hi]))
    return violations


@dataclass(frozen=True)
class ShiftConjectureReport:
    """Search results for shift-move witnesses of every cover edge.

    For each cover (sigma, pi) all freeze sets A in {1..n} with
    shift_left(pi, A) = sigma are recorded.  `covers_without_prefix_witness`
    lists covers with witnesses but none inside {1..rank(pi)}, keeping both
    readings of the conjectured bound separate.  `shifts_not_covers` are
    rank-dropping shift results that are not covers.
    """

    n: int
    cover_count: int
    covers_without_witness: tuple
    covers_without_prefix_witness: tuple
    shifts_not_covers: tuple
    witness_sets: dict

    @property
    def clean(self) -> bool:
        return not self.covers_without_witness


def check_shift_conjecture(poset: QuotientPoset) -> ShiftConjectureReport:
    n = poset.n
    no_witness = []
    no_prefix_witness = []
    not_covers = []
    witness_sets = {}
    all_subsets = [frozenset(c) for size in range(n + 1) for c in combinations(range(1, n + 1), size)]
    cover_lookup = set(poset.covers)
    for hi, pi in enumerate(poset.elements):
        k = poset.ranks[hi]
        if k == 0:
            continue
        images: dict[DecoratedPermutation, list[frozenset[int]]] = {}
        for a_set in all_subsets:
            images.setdefault(shift_left(pi, a_set), []).append(a_set)
        cover_elems = {poset.elements[lo]: lo for lo in poset.covers_of(hi)}
        prefix = set(range(1, k + 1))
        for sigma, lo in cover_elems.items():
            found = images.get(sigma, [])
            witness_sets[(sigma, pi)] = tuple(sorted(found, key=sorted))
            if not found:
                no_witness.append((sigma, pi))
            elif not any(a <= prefix for a in found):
                no_prefix_witness.append((sigma, pi))
        for sigma, a_sets in images.items():
            if sigma.rank == k - 1 and sigma not in cover_elems:
                lo = poset.index_of[sigma]
                if (lo, hi) not in cover_lookup:
                    not_covers.append((sigma, pi, tuple(sorted(a_sets, key=sorted))))
    return ShiftConjectureReport(
        n,
        len(poset.covers),
        tuple(no_witness),
        tuple(no_prefix_witness),
        tuple(not_covers),
        witness_sets,
    )


@dataclass(frozen=True)
class OrderComparison:
    """Quotient pairs versus reachability through cover edges."""

    direct_not_closure: tuple
    closure_not_direct: tuple

    @property
    def clean(self) -> bool:
        return not self.direct_not_closure and not self.closure_not_direct


def closure_vs_direct(poset: QuotientPoset) -> OrderComparison:
    """Compare the rank-increasing quotient relation with the cover closure."""
    n = poset.n
    count = len(poset.elements)
    circuits = []
    for p in poset.elements:
        key = (p.image, mask_of(p.coloops, n))
        circuits.append(
            tuple(int(c) for c in _circuit_masks_np(n, _basis_masks_for_key(n, key)))
        )
    direct_not_closure = []
    closure_not_direct = []
    for lo in range(count):
        for hi in range(count):
            if poset.ranks[lo] >= poset.ranks[hi]:
                continue
            direct = all(
                union_of_contained(circuits[lo], c) == c for c in circuits[hi]
            )
            closure = poset.leq(lo, hi)
            if direct and not closure:
                direct_not_closure.append((poset.elements[lo], poset.elements[hi]))
            elif closure and not direct:
                closure_not_direct.append((poset.elements[lo], poset.elements[hi]))
    return OrderComparison(tuple(direct_not_closure), tuple(closure_not_direct))


# -- exports ----------------------------------------------------------------


def to_dot(poset: QuotientPoset) -> str:
    """Hasse diagram in DOT, one rank per layer, edges pointing up."""
    lines = [
        "digraph quotients {",
        "  rankdir=BT;",
        "  node [shape=box];",
    ]
    for group in poset.rank_groups:
        names = " ".join(f'"{poset.elements[i]}";' for i in group)
        lines.append("  { rank=same; " + names + " }")
    for lo, hi in poset.covers:
        lines.append(f'  "{poset.elements[lo]}" -> "{poset.elements[hi]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_json_obj(poset: QuotientPoset) -> dict:
    return {
        "n": poset.n,
        "elements": [str(p) for p in poset.elements],
        "covers": [list(edge) for edge in poset.covers],
    }


def census_csv(rows: Iterable[CensusRow]) -> str:
    return "n,k,total,characterized,missing\n" + "".join(
        row.csv() + "\n" for row in rows
    )


def positroid_of(perm: DecoratedPermutation) -> Matroid:
    """Fast-path positroid of a decorated permutation (engine tables)."""
    key = (perm.image, mask_of(perm.coloops, perm.n))
    return Matroid(perm.n, tuple(_basis_masks_for_key(perm.n, key)))
