import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixmult import (
    IdealHandle,
    LocalRingModel,
    NotMPrimaryError,
    RandomStream,
    RingContext,
    hilbert_samuel,
    ideal_power,
    ideal_product,
    is_m_primary,
    length_quotient,
    m_adic_exponent,
    parse_poly,
    total_colength,
)

import oracles

CTX2 = RingContext(("x", "y"))


def I(ctx, *gens):
    return IdealHandle(ctx, [parse_poly(ctx, g) for g in gens])


@pytest.fixture
def A():
    return LocalRingModel(CTX2)


def test_maximal_ideal_is_primary(A):
    assert is_m_primary(A, A.maximal_ideal())


def test_hyperplane_not_primary(A):
    assert not is_m_primary(A, I(CTX2, "x"))


def test_power_box_is_primary(A):
    assert is_m_primary(A, I(CTX2, "x^2", "y^3"))


def test_m_adic_exponent(A):
    assert m_adic_exponent(A, A.maximal_ideal()) == 1
    assert m_adic_exponent(A, I(CTX2, "x^2", "y^3")) == 4  # x*y^3 needs degree 4


def test_cotangent_space(A):
    m = A.maximal_ideal()
    assert length_quotient(A, m, m) == 2


def test_minimal_generator_count(A):
    m = A.maximal_ideal()
    U = ideal_product(m, I(CTX2, "x^2", "y^3"))
    # U = (x^3, x^2 y, x y^3, y^4), four staircase corners
    assert length_quotient(A, U, m) == 4


def test_power_lengths(A):
    m = A.maximal_ideal()
    for n0 in range(5):
        assert length_quotient(A, ideal_power(m, n0), m) == n0 + 1


def test_rejects_non_primary(A):
    with pytest.raises(NotMPrimaryError):
        length_quotient(A, I(CTX2, "x"), I(CTX2, "x"))


def test_cutoff_soundness(A):
    # pushing the summation cutoff further never changes the value
    J = I(CTX2, "x^2", "y^3")
    U = ideal_product(A.maximal_ideal(), J)
    base = length_quotient(A, U, J)
    assert length_quotient(A, U, J, extra_cutoff=3) == base


@given(st.integers(0, 10**9))
@settings(max_examples=15)
def test_length_additivity(seed):
    # for m-primary U: len(U/JU) = len(A/JU) - len(A/U), both colengths finite
    rng = RandomStream(seed)
    A = LocalRingModel(CTX2)
    U = IdealHandle(
        CTX2,
        [
            CTX2.monomial((rng.randint(1, 3), 0)),
            CTX2.monomial((0, rng.randint(1, 3))),
            CTX2.monomial((rng.randint(0, 2), rng.randint(0, 2))),
        ],
    )
    J = A.maximal_ideal()
    JU = ideal_product(J, U)
    direct = length_quotient(A, U, J)
    col_U = oracles.colength([next(iter(g.terms)) for g in U.gens], 2)
    col_JU = oracles.colength([next(iter(g.terms)) for g in JU.gens], 2)
    assert direct == col_JU - col_U


def test_length_matches_brute_force(A):
    J = I(CTX2, "x^2", "y^3")
    m = A.maximal_ideal()
    U = ideal_product(ideal_power(m, 2), J)
    JU = ideal_product(J, U)
    got = length_quotient(A, U, J)
    want = oracles.brute_length(
        [next(iter(g.terms)) for g in U.gens],
        [next(iter(g.terms)) for g in JU.gens],
        [],
        2,
        U.max_gen_degree() + 6,
    )
    assert got == want


def test_gb_path_matches_staircase_path(A):
    J = I(CTX2, "x^2", "y^3")
    U = ideal_product(A.maximal_ideal(), J)
    assert length_quotient(A, U, J, method="gb") == length_quotient(
        A, U, J, method="staircase"
    )


# -- Hilbert-Samuel ---------------------------------------------------------------


def test_regular_ring(A):
    assert hilbert_samuel(A, A.maximal_ideal(), IdealHandle.zero(CTX2)) == (2, 1)


def test_complete_intersection(A):
    # oracle: colengths of (x^2,y^3)^n fit 3n^2 + lower; e = 2! * 3 = 6
    J = I(CTX2, "x^2", "y^3")
    cl = [
        oracles.colength(
            [next(iter(g.terms)) for g in ideal_power(J, n).gens], 2
        )
        for n in range(1, 7)
    ]
    second = [cl[i + 2] - 2 * cl[i + 1] + cl[i] for i in range(len(cl) - 2)]
    assert set(second) == {6}
    assert hilbert_samuel(A, J, IdealHandle.zero(CTX2)) == (2, 6)


def test_hyperplane_section(A):
    assert hilbert_samuel(A, A.maximal_ideal(), I(CTX2, "x")) == (1, 1)


def test_dimension_zero_quotient(A):
    dim, mult = hilbert_samuel(A, A.maximal_ideal(), I(CTX2, "x^2", "y^3"))
    assert dim == 0 and mult == 6


def test_generating_set_invariance(A):
    J1 = I(CTX2, "x^2", "y^3")
    J2 = I(CTX2, "y^3", "x^2", "x^3", "x^2*y")  # same ideal, redundant presentation
    z = IdealHandle.zero(CTX2)
    assert hilbert_samuel(A, J1, z) == hilbert_samuel(A, J2, z)


@pytest.mark.parametrize("arity", [1, 2, 3, 4])
def test_regular_case_every_arity(arity):
    ctx = RingContext(("x", "y", "z", "w")[:arity])
    A = LocalRingModel(ctx)
    m = A.maximal_ideal()
    assert hilbert_samuel(A, m, IdealHandle.zero(ctx)) == (arity, 1)


def test_total_colength(A):
    assert total_colength(A, I(CTX2, "x^2", "y^3")) == 6
    assert total_colength(A, I(CTX2, "x", "y")) == 1
