from itertools import combinations

import pytest

from positroids.errors import (
    CapExceeded,
    EmptyBases,
    ExchangeViolation,
    GroundSetMismatch,
    MixedCardinality,
    NonIncreasingPoints,
    NotAQuotient,
)
from positroids.matroid import (
    ExactMatrix,
    Matroid,
    det_int,
    matroid_from_matrix,
    realize_uniform,
    uniform,
    vandermonde_product,
)

M1 = Matroid.from_bases(4, [{1}, {3}, {4}])


def brute_circuits(m):
    """Oracle: scan subsets by increasing size for minimal dependent sets."""
    found = []
    for size in range(1, m.k + 2):
        for cand in combinations(range(1, m.n + 1), size):
            cset = frozenset(cand)
            if m.is_independent(cset):
                continue
            if all(m.is_independent(cset - {x}) for x in cset):
                found.append(cset)
    return frozenset(found)


def all_subsets(n):
    for bits in range(1 << n):
        yield frozenset(e for e in range(1, n + 1) if bits >> (e - 1) & 1)


# -- construction -----------------------------------------------------------


def test_from_bases_valid_rank_one():
    assert M1.k == 1
    assert M1.bases == {frozenset({1}), frozenset({3}), frozenset({4})}


def test_from_bases_exchange_violation_with_recheckable_witness():
    with pytest.raises(ExchangeViolation) as info:
        Matroid.from_bases(4, [{1, 2}, {3, 4}])
    err = info.value
    family = {frozenset({1, 2}), frozenset({3, 4})}
    assert err.b1 in family and err.b2 in family and err.x in err.b1 - err.b2
    # the witness really violates exchange
    for y in err.b2 - err.b1:
        assert (err.b1 - {err.x}) | {y} not in family


def test_from_bases_error_cases():
    with pytest.raises(EmptyBases):
        Matroid.from_bases(3, [])
    with pytest.raises(MixedCardinality):
        Matroid.from_bases(3, [{1}, {1, 2}])
    with pytest.raises(ValueError):
        Matroid.from_bases(3, [{4}])


def test_from_bases_all_two_subsets_is_uniform():
    m = Matroid.from_bases(3, [{1, 2}, {1, 3}, {2, 3}])
    assert m == uniform(2, 3)


def test_uniform_edges():
    assert uniform(0, 3).bases == {frozenset()}
    assert uniform(3, 3).bases == {frozenset({1, 2, 3})}
    assert len(uniform(2, 4).bases) == 6
    with pytest.raises(ValueError):
        uniform(4, 3)


# -- rank and independence ----------------------------------------------------


def test_rank_examples():
    assert uniform(2, 4).rank_of({1, 2, 3}) == 2
    assert M1.rank_of({2}) == 0  # 2 is a loop
    assert M1.rank_of(set()) == 0


def test_is_independent_examples():
    assert uniform(2, 3).is_independent({1, 3})
    assert not uniform(2, 3).is_independent({1, 2, 3})
    assert M1.is_independent(set())


def test_rank_monotone_and_submodular():
    corpus = [M1, uniform(2, 4), uniform(3, 5), M1.dual(),
              Matroid.from_bases(5, [{1, 2}, {1, 4}, {2, 3}, {3, 4}, {1, 3}, {2, 4}])]
    for m in corpus:
        ranks = {s: m.rank_of(s) for s in all_subsets(m.n)}
        for a in all_subsets(m.n):
            for b in all_subsets(m.n):
                assert ranks[a | b] + ranks[a & b] <= ranks[a] + ranks[b]
                if a <= b:
                    assert ranks[a] <= ranks[b]
        table = m.rank_table()
        for s in all_subsets(m.n):
            assert table[sum(1 << (e - 1) for e in s)] == ranks[s]


# -- circuits -------------------------------------------------------------------


def test_circuit_examples():
    assert uniform(2, 3).circuits() == {frozenset({1, 2, 3})}
    assert M1.circuits() == {
        frozenset({2}),
        frozenset({1, 3}),
        frozenset({1, 4}),
        frozenset({3, 4}),
    }
    assert uniform(3, 3).circuits() == frozenset()


def test_circuits_match_brute_force_and_bases():
    corpus = [
        uniform(k, n) for n in range(1, 6) for k in range(n + 1)
    ] + [M1, M1.dual()]
    for m in corpus:
        circuits = m.circuits()
        assert circuits == brute_circuits(m)
        for s in all_subsets(m.n):
            contains_circuit = any(c <= s for c in circuits)
            assert m.is_independent(s) == (not contains_circuit)


def test_degenerate_ranks():
    assert uniform(0, 4).circuits() == {frozenset({e}) for e in range(1, 5)}
    assert uniform(4, 4).circuits() == frozenset()


def test_cap_on_exhaustive_operations():
    big = uniform(1, 17)
    with pytest.raises(CapExceeded):
        big.circuits()
    with pytest.raises(CapExceeded):
        big.rank_table()


# -- duality ---------------------------------------------------------------------


def test_dual_examples():
    assert uniform(2, 5).dual() == uniform(3, 5)
    assert M1.dual().dual() == M1
    assert M1.dual().bases == {
        frozenset({2, 3, 4}),
        frozenset({1, 2, 4}),
        frozenset({1, 2, 3}),
    }
    assert M1.dual().k == M1.n - M1.k


# -- quotients ---------------------------------------------------------------------


def test_quotient_examples():
    assert uniform(1, 3).is_quotient(uniform(2, 3))
    assert M1.is_quotient(M1)
    for n in range(1, 6):
        for k in range(n + 1):
            for l in range(n + 1):
                assert uniform(k, n).is_quotient(uniform(l, n)) == (k <= l)
                assert uniform(k, n).is_quotient_by_rank(uniform(l, n)) == (k <= l)


def test_quotient_by_rank_counterexample():
    m, n = uniform(2, 3), uniform(1, 3)
    assert not m.is_quotient_by_rank(n)
    # witnessed by A = {} inside B = {1,2}: rank gap 1 upstairs, 2 downstairs
    assert n.rank_of({1, 2}) - n.rank_of(set()) == 1
    assert m.rank_of({1, 2}) - m.rank_of(set()) == 2


def test_quotient_ground_set_mismatch():
    with pytest.raises(GroundSetMismatch):
        uniform(1, 3).is_quotient(uniform(1, 4))
    with pytest.raises(GroundSetMismatch):
        uniform(1, 3).is_quotient_by_rank(uniform(1, 4))


def test_quotient_tests_agree_small():
    # all ordered pairs of matroids drawn from uniforms and M1-like families
    corpus = [uniform(k, 4) for k in range(5)] + [M1, M1.dual()]
    for m in corpus:
        for n in corpus:
            direct = m.is_quotient(n)
            by_rank = m.is_quotient_by_rank(n)
            assert direct == by_rank
            assert direct == n.dual().is_quotient(m.dual())


# -- flags ---------------------------------------------------------------------------


def test_flags_worked_example():
    flags = M1.flags(uniform(3, 4))
    assert len(flags) == 9
    pairs = {(tuple(sorted(f.lower)), tuple(sorted(f.upper))) for f in flags}
    assert ((1,), (1, 2, 3)) in pairs
    assert ((4,), (2, 3, 4)) in pairs
    # every basis appears on both sides
    assert {f.lower for f in flags} == M1.bases
    assert {f.upper for f in flags} == uniform(3, 4).bases


def test_flags_trivial_cases():
    assert len(uniform(1, 2).flags(uniform(2, 2))) == 2
    flags = uniform(0, 3).flags(uniform(2, 3))
    assert len(flags) == 3
    assert all(f.lower == frozenset() for f in flags)


def test_flags_requires_quotient():
    with pytest.raises(NotAQuotient):
        uniform(2, 3).flags(uniform(1, 3))
    with pytest.raises(NotAQuotient):
        uniform(2, 3).flags(uniform(2, 3))  # no rank gap


# -- realization -----------------------------------------------------------------------


def test_realize_uniform_worked_example():
    mat = realize_uniform(3, 5, [1, 2, 3, 4, 5])
    assert mat.entries == (
        (1, 1, 1, 1, 1),
        (1, 2, 3, 4, 5),
        (1, 4, 9, 16, 25),
    )
    minors = mat.maximal_minors()
    assert len(minors) == 10
    assert all(v > 0 for v in minors.values())


def test_realize_uniform_small_cases():
    mat = realize_uniform(2, 3, [1, 2, 4])
    assert mat.minor([1, 2]) == 1
    assert mat.minor([1, 3]) == 3
    assert mat.minor([2, 3]) == 2
    one_row = realize_uniform(1, 4, [3, 5, 7, 11])
    assert all(v == 1 for v in one_row.maximal_minors().values())


def test_realize_uniform_rejects_bad_points():
    with pytest.raises(NonIncreasingPoints):
        realize_uniform(2, 3, [1, 1, 2])
    with pytest.raises(NonIncreasingPoints):
        realize_uniform(2, 3, [0, 1, 2])
    with pytest.raises(ValueError):
        realize_uniform(2, 3, [1, 2])


def test_minor_matches_vandermonde_product():
    points = [2, 3, 5, 8]
    mat = realize_uniform(3, 4, points)
    for cols in combinations(range(1, 5), 3):
        assert mat.minor(cols) == vandermonde_product(points, cols)


def test_det_int_exactness():
    # a matrix whose determinant overflows doubles
    big = [[10**20, 1], [1, 10**20]]
    assert det_int(big) == 10**40 - 1
    assert det_int([[2]]) == 2
    assert det_int([]) == 1
    assert det_int([[0, 1], [0, 2]]) == 0


def test_matroid_from_matrix_paper_pair():
    m_a = matroid_from_matrix(ExactMatrix(((1, 1, 0, -2), (0, 1, 1, 2))))
    m_b = matroid_from_matrix(ExactMatrix(((1, 0, 1, 0), (0, 1, 2, 1))))
    assert m_a == uniform(2, 4)
    assert m_b.bases == {
        frozenset(b) for b in [{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}]
    }


def test_json_round_trip():
    for m in [M1, uniform(2, 4), uniform(0, 2)]:
        assert Matroid.from_json_obj(__import__("json").loads(m.to_json())) == m
