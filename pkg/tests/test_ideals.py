import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixmult import (
    GREVLEX,
    HomogeneityError,
    IdealHandle,
    InputError,
    RandomStream,
    RingContext,
    buchberger,
    graded_piece_dim,
    ideal_colon,
    ideal_combine,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_saturate,
    ideal_sum,
    krull_dim_quotient,
    normal_form,
    parse_poly,
)

CTX2 = RingContext(("x", "y"))
CTX3 = RingContext(("x", "y", "z"))


def I(ctx, *gens):
    return IdealHandle(ctx, [parse_poly(ctx, g) for g in gens])


# -- Buchberger ----------------------------------------------------------------


def test_monomial_input_is_its_own_basis():
    gb = buchberger([CTX2.variable("x"), CTX2.variable("y")], GREVLEX)
    assert sorted(str(g) for g in gb) == ["x", "y"]


def test_one_spair_example():
    # y^3 = y*(x^2+y^2) - x*(x*y), checked by hand
    gb = buchberger(
        [parse_poly(CTX2, "x^2 + y^2"), parse_poly(CTX2, "x*y")], GREVLEX
    )
    assert sorted(str(g) for g in gb) == ["x*y", "x^2 + y^2", "y^3"]


def test_redundancy_eliminated():
    gb = buchberger(
        [parse_poly(CTX2, "x - y"), parse_poly(CTX2, "y - x")], GREVLEX
    )
    assert len(gb) == 1 and str(gb.elements[0]) == "x - y"


def test_empty_generators_give_zero_basis():
    assert len(buchberger([], GREVLEX)) == 0


# -- normal form ----------------------------------------------------------------


def test_membership_reduces_to_zero():
    gb = I(CTX2, "x").groebner()
    assert normal_form(parse_poly(CTX2, "x^2"), gb).is_zero


def test_single_reduction():
    gb = I(CTX2, "x").groebner()
    assert normal_form(parse_poly(CTX2, "x + y"), gb) == CTX2.variable("y")


def test_cubic_in_ideal():
    gb = I(CTX2, "x^2 + y^2", "x*y").groebner()
    assert normal_form(parse_poly(CTX2, "y^3"), gb).is_zero


# -- combine / power --------------------------------------------------------------


def test_principal_product():
    assert ideal_combine(I(CTX2, "x"), I(CTX2, "y"), "product").same(I(CTX2, "x*y"))


def test_square_of_maximal_ideal():
    sq = ideal_power(I(CTX2, "x", "y"), 2)
    assert sq.same(I(CTX2, "x^2", "x*y", "y^2"))


def test_product_minimalized():
    p = ideal_product(I(CTX2, "x^2", "y^3"), I(CTX2, "x^2", "y^3"))
    assert [str(g) for g in p.gens] == ["x^4", "x^2*y^3", "y^6"]


def test_power_zero_is_unit():
    assert ideal_power(I(CTX2, "x"), 0).is_unit()


def test_sum_concatenates():
    s = ideal_combine(I(CTX2, "x^2"), I(CTX2, "x"), "sum")
    assert s.same(I(CTX2, "x"))


# -- intersection -----------------------------------------------------------------


def test_coprime_principal_intersection():
    assert ideal_intersect(I(CTX2, "x"), I(CTX2, "y")).same(I(CTX2, "x*y"))


def test_lcm_enumeration():
    got = ideal_intersect(I(CTX2, "x^2", "x*y"), I(CTX2, "y"))
    assert got.same(I(CTX2, "x*y"))


def test_intersection_idempotent():
    a = I(CTX2, "x")
    assert ideal_intersect(a, a).same(a)


def test_general_path_matches_monomial_path():
    a = I(CTX2, "x^2", "x*y")
    b = I(CTX2, "y")
    assert ideal_intersect(a, b, force_general=True).same(ideal_intersect(a, b))


# -- colon and saturation ----------------------------------------------------------


def test_colon_by_variable():
    got = ideal_colon(I(CTX2, "x^2", "x*y"), I(CTX2, "x"))
    assert got.same(I(CTX2, "x", "y"))


def test_saturation_stabilizes():
    got = ideal_saturate(I(CTX2, "x^2", "x*y"), I(CTX2, "y"))
    assert got.same(I(CTX2, "x"))


def test_colon_by_unit():
    got = ideal_colon(I(CTX2, "x"), IdealHandle.unit(CTX2))
    assert got.same(I(CTX2, "x"))


# -- graded pieces and dimension -----------------------------------------------------


def test_graded_piece_full():
    assert graded_piece_dim(ideal_power(I(CTX2, "x", "y"), 2), 2) == 3


def test_graded_piece_count():
    # degree-3 monomials in (x^2, y^3): x^3, x^2 y, y^3
    assert graded_piece_dim(I(CTX2, "x^2", "y^3"), 3) == 3


def test_graded_piece_degree_zero():
    assert graded_piece_dim(I(CTX2, "x^2", "y^3"), 0) == 0


def test_graded_piece_rejects_inhomogeneous():
    with pytest.raises(HomogeneityError):
        graded_piece_dim(I(CTX2, "x + x^2"), 1)


def test_dim_hyperplane():
    assert krull_dim_quotient(I(CTX2, "x")) == 1


def test_dim_two_planes():
    assert krull_dim_quotient(I(CTX3, "x*y", "x*z")) == 2


def test_dim_irrelevant():
    assert krull_dim_quotient(I(CTX2, "x", "y")) == 0


def test_dim_zero_ideal():
    assert krull_dim_quotient(IdealHandle.zero(CTX3)) == 3


def test_dim_unit_sentinel():
    assert krull_dim_quotient(IdealHandle.unit(CTX2)) == -1


# -- randomized properties -----------------------------------------------------------


def random_monomial_ideal(rng, ctx, max_deg=5, max_gens=4):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        exps = [0] * ctx.nvars
        for _ in range(rng.randint(1, max_deg)):
            exps[rng.randint(0, ctx.nvars - 1)] += 1
        gens.append(ctx.monomial(tuple(exps)))
    return IdealHandle(ctx, gens)


@given(st.integers(0, 10**9), st.sampled_from([CTX2, CTX3]))
@settings(max_examples=25)
def test_monomial_vs_elimination_oracle(seed, ctx):
    rng = RandomStream(seed)
    a = random_monomial_ideal(rng, ctx)
    b = random_monomial_ideal(rng, ctx)
    assert ideal_intersect(a, b).same(ideal_intersect(a, b, force_general=True))
    assert ideal_colon(a, b).same(ideal_colon(a, b, force_general=True))
    assert ideal_saturate(a, b).same(ideal_saturate(a, b, force_general=True))


@given(st.integers(0, 10**9))
@settings(max_examples=25)
def test_membership_consistency(seed):
    rng = RandomStream(seed)
    a = random_monomial_ideal(rng, CTX2)
    combo = sum(
        (g.scale(rng.randint(1, 32002)) for g in a.gens), CTX2.zero_poly()
    ) * CTX2.monomial((rng.randint(0, 2), rng.randint(0, 2)))
    assert normal_form(combo, a.groebner()).is_zero
    if a.is_proper():
        assert not normal_form(CTX2.one(), a.groebner()).is_zero


@given(st.integers(0, 10**9))
@settings(max_examples=15)
def test_reduced_basis_unique_under_presentation(seed):
    rng = RandomStream(seed)
    a = random_monomial_ideal(rng, CTX2)
    gens = list(a.gens)
    # a genuinely different presentation: shuffled, with redundant combinations
    shuffled = rng.shuffle(gens)
    extra = shuffled + [shuffled[0] * parse_poly(CTX2, "x + y")]
    gb1 = buchberger(gens, GREVLEX)
    gb2 = buchberger(extra, GREVLEX)
    assert gb1.elements == gb2.elements


@given(st.integers(0, 10**9))
@settings(max_examples=20)
def test_colon_laws(seed):
    rng = RandomStream(seed)
    a = random_monomial_ideal(rng, CTX2)
    b = random_monomial_ideal(rng, CTX2)
    quot = ideal_colon(a, b)
    # (a : b) * b inside a
    prod = ideal_product(quot, b)
    agb = a.groebner()
    assert all(normal_form(g, agb).is_zero for g in prod.gens)
    # a inside a : b
    qgb = quot.groebner()
    assert all(normal_form(g, qgb).is_zero for g in a.gens)
    # saturation idempotent
    sat = ideal_saturate(a, b)
    assert ideal_saturate(sat, b).same(sat)
