from hypothesis import given, settings
from hypothesis import strategies as st

from mixmult import RandomStream
from mixmult.staircase import (
    count_divisible,
    degree_monomials,
    minimalize,
    product_exps,
    power_exps,
    simplex_count,
    std_counts,
    total_std_count,
)

import oracles


def test_minimalize_drops_multiples():
    got = minimalize([(2, 0), (3, 0), (2, 1), (0, 1)])
    assert got == ((0, 1), (2, 0))


def test_minimalize_large_matches_small():
    rng = RandomStream(7)
    exps = [
        (rng.randint(0, 6), rng.randint(0, 6), rng.randint(0, 6)) for _ in range(900)
    ]
    assert minimalize(exps) == tuple(oracles.minimal_gens(exps))


def test_product_exps():
    got = product_exps(((2, 0), (0, 3)), ((2, 0), (0, 3)))
    assert got == ((4, 0), (2, 3), (0, 6))


def test_power_exps_matches_oracle():
    gens = ((1, 0), (0, 1))
    got = power_exps(gens, 4)
    want = tuple(oracles.minimal_gens(oracles.power_set(set(gens), 4, 2)))
    assert got == want


def test_degree_monomials_counts():
    for n in (1, 2, 3, 4):
        for e in (0, 1, 3, 6):
            assert len(degree_monomials(n, e)) == simplex_count(n, e)


gen_strategy = st.lists(
    st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)).filter(
        lambda t: sum(t) > 0
    ),
    min_size=1,
    max_size=5,
)


@given(gen_strategy)
@settings(max_examples=40)
def test_std_counts_match_enumeration(gens):
    counts = std_counts(gens, 3, 12)
    for e in (0, 1, 4, 7, 12):
        assert counts[e] == oracles.std_count_at(gens, 3, e)


@given(gen_strategy)
@settings(max_examples=40)
def test_count_divisible_is_complement(gens):
    mins = minimalize(gens)
    for e in (0, 2, 5, 9):
        assert simplex_count(3, e) - count_divisible(mins, 3, e) == oracles.std_count_at(
            gens, 3, e
        )


def test_total_std_count_box():
    # k[x,y]/(x^2, y^3) has monomial basis {1, x, y, xy, y^2, xy^2}
    assert total_std_count(((2, 0), (0, 3)), 2) == 6


def test_std_counts_unit_ideal():
    assert std_counts([(0, 0)], 2, 4) == [0] * 5


def test_std_counts_zero_ideal():
    assert std_counts([], 2, 3) == [1, 2, 3, 4]
