from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from positroids.cyclic import gale_leq
from positroids.errors import InvalidNecklace, ParseError
from positroids.matroid import Matroid, mask_of, uniform
from positroids.poset import _basis_masks_for_key, decorated_permutations
from positroids.positroid import (
    DecoratedPermutation,
    GrassmannNecklace,
    bases_from_necklace,
    is_positroid,
    necklace_from_matroid,
    necklace_from_perm,
    perm_from_necklace,
    positroid_from_perm,
    smallest_containing_positroid,
    uniform_perm,
)

SIGMA = DecoratedPermutation.from_string("5,2_,6,1,3,4")
SIGMA_NECKLACE = GrassmannNecklace(
    6, [{1, 3}, {3, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 1}]
)
M_B = Matroid.from_bases(4, [{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}])


def necklace_oracle(matroid):
    """Oracle: per i-order, find the basis below all others under gale_leq."""
    entries = []
    for i in range(1, matroid.n + 1):
        minima = [
            b
            for b in matroid.bases
            if all(gale_leq(i, b, c, matroid.n) for c in matroid.bases)
        ]
        assert len(minima) == 1
        entries.append(minima[0])
    return GrassmannNecklace(matroid.n, entries)


# -- decorated permutations ---------------------------------------------------


def test_parse_and_print_round_trip():
    for text in ["5,2_,6,1,3,4", "1^,2^,3^", "1_,2_,3_", "3,4,1,2", "2,1,3^"]:
        assert str(DecoratedPermutation.from_string(text)) == text


def test_parse_errors():
    with pytest.raises(ParseError):
        DecoratedPermutation.from_string("1,2,2")  # not a bijection
    with pytest.raises(ParseError):
        DecoratedPermutation.from_string("2,1,3")  # undeclared fixed point
    with pytest.raises(ParseError):
        DecoratedPermutation.from_string("2_,1,3^")  # marker off a fixed point
    with pytest.raises(ParseError):
        DecoratedPermutation.from_string("a,b")


def test_weak_excedances_examples():
    assert SIGMA.weak_excedances(1) == {1, 3}
    assert SIGMA.rank == 2
    for k, n in [(2, 5), (3, 7), (0, 4), (4, 4)]:
        assert uniform_perm(k, n).weak_excedances(1) == set(range(1, k + 1))
    all_loops = DecoratedPermutation(range(1, 5))
    for i in range(1, 5):
        assert all_loops.weak_excedances(i) == set()


def test_weak_excedance_count_constant_small():
    for n in range(1, 5):
        for sigma in decorated_permutations(n):
            counts = {len(sigma.weak_excedances(i)) for i in range(1, n + 1)}
            assert len(counts) == 1


def test_uniform_perm_shape():
    assert str(uniform_perm(2, 4)) == "3,4,1,2"
    assert str(uniform_perm(5, 9)) == "5,6,7,8,9,1,2,3,4"
    assert str(uniform_perm(0, 3)) == "1_,2_,3_"
    assert str(uniform_perm(3, 3)) == "1^,2^,3^"


# -- permutation <-> necklace -----------------------------------------------------


def test_necklace_from_perm_examples():
    assert necklace_from_perm(SIGMA) == SIGMA_NECKLACE
    assert necklace_from_perm(DecoratedPermutation([3, 4, 1, 2])) == GrassmannNecklace(
        4, [{1, 2}, {2, 3}, {3, 4}, {4, 1}]
    )
    n = 5
    coloops = DecoratedPermutation(range(1, n + 1), range(1, n + 1))
    assert necklace_from_perm(coloops).sets == tuple([frozenset(range(1, n + 1))] * n)


def test_perm_from_necklace_examples():
    assert perm_from_necklace(SIGMA_NECKLACE) == SIGMA
    assert perm_from_necklace(
        GrassmannNecklace(4, [{1, 2}, {2, 3}, {3, 4}, {4, 1}])
    ) == DecoratedPermutation([3, 4, 1, 2])
    for k, n in [(0, 3), (2, 5), (3, 7), (7, 7)]:
        assert perm_from_necklace(necklace_from_perm(uniform_perm(k, n))) == uniform_perm(k, n)


def test_necklace_validation():
    with pytest.raises(InvalidNecklace):
        GrassmannNecklace(4, [{1, 2}, {3, 4}, {3, 4}, {4, 1}])  # drops 2 illegally
    with pytest.raises(InvalidNecklace):
        GrassmannNecklace(3, [{1}, {2}])  # wrong length
    with pytest.raises(InvalidNecklace):
        GrassmannNecklace(3, [{1}, {2, 3}, {3}])  # mixed sizes
    with pytest.raises(InvalidNecklace):
        GrassmannNecklace(2, [{3}, {3}])  # element out of range


def test_round_trips_exhaustive_small():
    for n in range(1, 5):
        for sigma in decorated_permutations(n):
            neck = necklace_from_perm(sigma)
            assert perm_from_necklace(neck) == sigma
            assert necklace_from_perm(perm_from_necklace(neck)) == neck


@given(data=st.data(), n=st.integers(min_value=1, max_value=9))
def test_round_trip_random(data, n):
    image = data.draw(st.permutations(range(1, n + 1)))
    fixed = [i for i in range(1, n + 1) if image[i - 1] == i]
    coloops = [f for f in fixed if data.draw(st.booleans())]
    sigma = DecoratedPermutation(image, coloops)
    assert perm_from_necklace(necklace_from_perm(sigma)) == sigma


# -- matroid <-> necklace -----------------------------------------------------------


def test_necklace_from_matroid_examples():
    assert necklace_from_matroid(M_B) == GrassmannNecklace(
        4, [{1, 2}, {2, 3}, {3, 4}, {4, 1}]
    )
    for k, n in [(1, 4), (2, 4), (3, 5), (0, 3)]:
        # entry i is the cyclic interval [i, i+k-1]
        expected = GrassmannNecklace(
            n,
            [
                frozenset((i - 1 + j) % n + 1 for j in range(k))
                for i in range(1, n + 1)
            ],
        )
        assert necklace_from_matroid(uniform(k, n)) == expected
    m1 = Matroid.from_bases(4, [{1}, {3}, {4}])
    assert necklace_from_matroid(m1) == GrassmannNecklace(4, [{1}, {3}, {3}, {4}])
    assert necklace_from_matroid(m1) == necklace_oracle(m1)


def test_bases_from_necklace_examples():
    neck = GrassmannNecklace(4, [{1, 2}, {2, 3}, {3, 4}, {4, 1}])
    assert bases_from_necklace(neck) == uniform(2, 4)
    constant = GrassmannNecklace(3, [{1}, {1}, {1}])
    assert bases_from_necklace(constant).bases == {frozenset({1})}


def test_shifted_uniform_necklace_matches_table():
    sigma = DecoratedPermutation.from_string("7,6,8,2,9,1,3,4,5")
    positroid = bases_from_necklace(necklace_from_perm(sigma))
    neck = necklace_from_matroid(positroid)
    assert neck.sets[0] == {1, 2, 3, 5}
    assert neck.sets[1] == {2, 3, 5, 6}
    assert neck.sets[6] == {7, 8, 9, 2}
    assert neck == necklace_from_perm(sigma)


def test_is_positroid_examples():
    assert is_positroid(uniform(2, 4))
    assert not is_positroid(M_B)
    for k, n in [(0, 2), (1, 3), (2, 5), (3, 5), (5, 5)]:
        assert is_positroid(uniform(k, n))


def test_smallest_containing_positroid():
    envelope = smallest_containing_positroid(M_B)
    assert envelope == uniform(2, 4)
    assert M_B.bases < envelope.bases


def test_every_matroid_within_its_envelope():
    corpus = [
        Matroid.from_bases(4, [{1}, {3}, {4}]),
        M_B,
        uniform(2, 5),
        Matroid.from_bases(5, [{1, 2}, {1, 4}, {2, 3}, {3, 4}, {1, 3}, {2, 4}]),
    ]
    for m in corpus:
        assert m.bases <= smallest_containing_positroid(m).bases


def test_positroid_from_perm_examples():
    assert positroid_from_perm(uniform_perm(2, 4)) == uniform(2, 4)
    p = positroid_from_perm(SIGMA)
    assert p.k == 2
    assert frozenset({2}) in p.circuits()
    coloops = DecoratedPermutation(range(1, 5), range(1, 5))
    assert positroid_from_perm(coloops).bases == {frozenset(range(1, 5))}


def test_loops_and_coloops_in_bases():
    for n in range(1, 5):
        for sigma in decorated_permutations(n):
            p = positroid_from_perm(sigma)
            for b in p.bases:
                assert not (sigma.loops() & b)
                assert sigma.coloops <= b


def test_perm_inverse_examples():
    for k, n in [(0, 4), (1, 4), (2, 5), (3, 3)]:
        assert uniform_perm(k, n).inverse() == uniform_perm(n - k, n)
    assert SIGMA.inverse().inverse() == SIGMA
    loops = DecoratedPermutation(range(1, 4))
    assert loops.inverse() == DecoratedPermutation(range(1, 4), range(1, 4))


def test_perm_inverse_gives_dual_positroid():
    for n in range(1, 5):
        for sigma in decorated_permutations(n):
            assert positroid_from_perm(sigma.inverse()) == positroid_from_perm(sigma).dual()


# -- round trips through the matroid ------------------------------------------------


def test_positroid_round_trips_small():
    for n in range(1, 5):
        for sigma in decorated_permutations(n):
            neck = necklace_from_perm(sigma)
            p = bases_from_necklace(neck)
            assert necklace_from_matroid(p) == neck
            assert bases_from_necklace(necklace_from_matroid(p)) == p


def test_engine_matches_public_conversion():
    # position-table fast path vs the sort-based public path
    for n in range(1, 5):
        for sigma in decorated_permutations(n):
            key = (sigma.image, mask_of(sigma.coloops, n))
            assert _basis_masks_for_key(n, key) == positroid_from_perm(sigma).basis_masks


def test_necklace_json_round_trip():
    for neck in [SIGMA_NECKLACE, GrassmannNecklace(3, [set(), set(), set()])]:
        import json

        assert GrassmannNecklace.from_json_obj(json.loads(neck.to_json())) == neck
