import pytest

from mixmult import (
    FreeAlgebraSpec,
    IdealHandle,
    InconsistencyError,
    InputError,
    LocalRingModel,
    NilpotentError,
    RingContext,
    free_algebra_report,
    free_quotient_report,
    mixed_difference,
    mixed_multiplicities,
    parse_poly,
    parse_problem,
    positivity,
)
from mixmult.mixed import HilbertTable, InstanceOptions, ProblemInstance

import oracles

CTX2 = RingContext(("x", "y"))


def I(ctx, *gens):
    return IdealHandle(ctx, [parse_poly(ctx, g) for g in gens])


def make_instance(J_gens, ideal_gen_lists, gamma_gens=(), base0=None, window=None):
    model = LocalRingModel(CTX2, I(CTX2, *gamma_gens))
    J = I(CTX2, *J_gens)
    ideals = [I(CTX2, *gens) for gens in ideal_gen_lists]
    return ProblemInstance(
        model, J, ideals, InstanceOptions(base0=base0, window=window)
    )


@pytest.fixture(scope="module")
def golden():
    return make_instance(("x", "y"), [("x^2", "y^3")], base0=4, window=3)


@pytest.fixture(scope="module")
def two_lines():
    return make_instance(("x", "y"), [("x",), ("y",)], base0=2, window=2)


# -- hilbert_value -----------------------------------------------------------------


def test_two_lines_closed_form(two_lines):
    for n in [(0, 0, 0), (1, 2, 3), (4, 1, 1), (3, 3, 3)]:
        assert two_lines.hilbert_value(n) == n[0] + 1


def test_golden_values(golden):
    assert golden.hilbert_value((1, 1)) == 4
    assert golden.hilbert_value((0, 1)) == 2  # pre-stabilization point


def test_golden_values_match_brute_force(golden):
    J = {(1, 0), (0, 1)}
    I1 = {(2, 0), (0, 3)}
    for n in [(1, 1), (2, 1), (1, 2), (4, 4), (5, 4), (4, 5)]:
        assert golden.hilbert_value(n) == oracles.brute_hilbert_value(
            J, [I1], [], 2, n
        )


# -- build_table --------------------------------------------------------------------


def test_two_lines_table(two_lines):
    table = two_lines.build_table()
    assert table.stabilized and table.ell == 2
    assert all(v == n[0] + 1 for n, v in table.values.items())


def test_golden_table(golden):
    table = golden.build_table()
    assert table.stabilized and table.ell == 2
    assert all(v == n[0] + 2 * n[1] + 1 for n, v in table.values.items())


def test_degenerate_diagonal_family():
    inst = make_instance(("x", "y"), [("x", "y")], base0=2, window=3)
    table = inst.build_table()
    assert table.ell == 2
    assert all(v == n[0] + n[1] + 1 for n, v in table.values.items())


def test_window_too_small_rejected(golden):
    with pytest.raises(InputError):
        golden.build_table(window=1)


def test_nilpotent_family_rejected():
    with pytest.raises(NilpotentError):
        make_instance(("x", "y"), [("x",)], gamma_gens=("x^2",))


# -- mixed multiplicities --------------------------------------------------------------


def test_two_lines_report(two_lines):
    rep = mixed_multiplicities(two_lines.build_table())
    assert rep.entries == {(1, 0, 0): 1, (0, 1, 0): 0, (0, 0, 1): 0}


def test_golden_report(golden):
    rep = mixed_multiplicities(golden.build_table())
    assert rep.entries == {(1, 0): 1, (0, 1): 2}
    assert rep.ell == 2 and rep.route == "direct-table"


def test_golden_report_matches_difference_oracle(golden):
    # independent oracle: brute-force grid + one-step differences at the base
    J = {(1, 0), (0, 1)}
    I1 = {(2, 0), (0, 3)}
    H = {
        (a, b): oracles.brute_hilbert_value(J, [I1], [], 2, (a, b))
        for a in (4, 5)
        for b in (4, 5)
    }
    assert H[(5, 4)] - H[(4, 4)] == 1
    assert H[(4, 5)] - H[(4, 4)] == 2


def test_constant_table_order_zero():
    values = {(n,): 5 for n in range(2, 6)}
    table = HilbertTable((2,), 3, values, 1, True)
    rep = mixed_multiplicities(table)
    assert rep.entries == {(0,): 5}


def test_inconsistent_table_raises():
    # constant values cannot carry a degree-1 polynomial: extraction is all-zero
    values = {(a, b): 7 for a in range(2, 5) for b in range(2, 5)}
    table = HilbertTable((2, 2), 2, values, 2, True)
    with pytest.raises(InconsistencyError):
        mixed_multiplicities(table)


def test_permutation_equivariance():
    inst = make_instance(("x", "y"), [("x^2", "y^3"), ("y",)], base0=4)
    swapped = inst.swapped(1, 2)
    rep = mixed_multiplicities(inst.build_table())
    rep_sw = mixed_multiplicities(swapped.build_table())
    for (k0, k1, k2), v in rep.entries.items():
        assert rep_sw.entries[(k0, k2, k1)] == v


def test_degree_consistency_on_stabilized(golden):
    # ell - 1 is the top non-vanishing difference order on the grid
    table = golden.build_table()
    top = [v for k, v in mixed_multiplicities(table).entries.items()]
    assert any(top)


# -- free algebra route ------------------------------------------------------------------


def free_model(d, p=32003):
    ctx = RingContext(("x", "y", "z", "w")[:d], p)
    return LocalRingModel(ctx)


def test_free_single_direction_pattern():
    for d, t in [(2, 2), (3, 2), (2, 3)]:
        A = free_model(d)
        rep = free_algebra_report(FreeAlgebraSpec(A, A.maximal_ideal(), (t,)))
        assert rep.ell == d + t - 1
        for (k0, k1), v in rep.entries.items():
            assert v == (1 if k1 == t - 1 else 0)


def test_free_nonregular_J():
    A = free_model(2)
    J = IdealHandle(A.ctx, [parse_poly(A.ctx, "x^2"), parse_poly(A.ctx, "y")])
    rep = free_algebra_report(FreeAlgebraSpec(A, J, (2,)))
    assert rep.entries[(1, 1)] == 2
    assert all(v == 0 for k, v in rep.entries.items() if k != (1, 1))


def test_free_bigraded_dimension():
    A = free_model(3)
    spec = FreeAlgebraSpec(A, A.maximal_ideal(), (1, 1))
    rep = free_algebra_report(spec)
    assert rep.ell == 3  # equals dim A
    assert rep.entries[(2, 0, 0)] == 1


def test_free_quotient_collapse_flagged():
    A = free_model(3)
    spec = FreeAlgebraSpec(A, A.maximal_ideal(), (1, 1))
    rep = free_quotient_report(spec, 1)
    assert rep == {"ell_before": 3, "ell_after": 0, "drop": 3, "flagged": True}


def test_free_quotient_unit_drop_not_flagged():
    A = free_model(2)
    spec = FreeAlgebraSpec(A, A.maximal_ideal(), (2,))
    rep = free_quotient_report(spec, 1)
    assert rep["drop"] == 1 and not rep["flagged"]


# -- positivity ---------------------------------------------------------------------------


def test_positivity_golden(golden):
    table = golden.build_table()
    res = positivity(golden, (0, 1), [3, 4, 5], table=table)
    assert res.status == "positive-certified"
    assert res.dims == [2, 1]


def test_positivity_zero_direction(two_lines):
    table = two_lines.build_table()
    res = positivity(two_lines, (0, 1, 0), [3, 4, 5], table=table)
    assert res.status == "zero-certified"


def test_positivity_trivial_type(golden):
    table = golden.build_table()
    res = positivity(golden, (1, 0), [1], table=table)
    assert res.status == "positive-certified"
    assert res.dims == [2]


def test_mixed_difference_annihilates_lower_order():
    values = {(a, b): 3 * a + 7 * b + 2 for a in range(5) for b in range(5)}
    assert mixed_difference(values, (1, 1), (1, 0)) == 3
    assert mixed_difference(values, (1, 1), (0, 1)) == 7
    assert mixed_difference(values, (0, 0), (1, 1)) == 0
