"""Seeded random monomial instances for differential and property testing."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MMError
from .ideals import IdealHandle
from .localmodel import LocalRingModel
from .mixed import InstanceOptions, ProblemInstance
from .ring import GREVLEX, RandomStream, RingContext, derive_seed

_VAR_POOL = ("x", "y", "z", "w")


@dataclass
class RandomInstanceConfig:
    nvars_choices: tuple = (2, 2, 3)
    s_choices: tuple = (1, 2)
    max_degree: int = 4
    p: int = 32003
    gamma_prob_percent: int = 20
    extra_gen_prob_percent: int = 40
    distinct_degrees: bool = True  # distinct-degree I-generators keep strata singletons


def _random_monomial(rng, ctx, degree):
    exps = [0] * ctx.nvars
    for _ in range(degree):
        exps[rng.randint(0, ctx.nvars - 1)] += 1
    return ctx.monomial(tuple(exps))


def random_m_primary_ideal(rng, ctx, max_degree, extra_prob):
    """Pure powers of every variable, plus an occasional extra monomial."""
    gens = [
        ctx.monomial(
            tuple(rng.randint(1, max_degree) if i == j else 0 for i in range(ctx.nvars))
        )
        for j in range(ctx.nvars)
    ]
    if rng.randint(1, 100) <= extra_prob:
        gens.append(_random_monomial(rng, ctx, rng.randint(2, max_degree)))
    return IdealHandle(ctx, gens)


def random_monomial_ideal(rng, ctx, max_degree, max_gens=2, distinct_degrees=True):
    count = rng.randint(1, max_gens)
    if distinct_degrees and count > 1:
        degrees = rng.shuffle(range(1, max_degree + 1))[:count]
    else:
        degrees = [rng.randint(1, max_degree) for _ in range(count)]
    gens = [_random_monomial(rng, ctx, d) for d in degrees]
    return IdealHandle(ctx, gens)


def random_monomial_instance(config, seed, attempts=50):
    """One valid random monomial instance (resamples degenerate draws)."""
    for attempt in range(attempts):
        rng = RandomStream(derive_seed(seed, attempt))
        nvars = rng.choice(config.nvars_choices)
        ctx = RingContext(_VAR_POOL[:nvars], config.p, GREVLEX)
        s = rng.choice(config.s_choices)
        gamma_gens = []
        if rng.randint(1, 100) <= config.gamma_prob_percent:
            gamma_gens = [_random_monomial(rng, ctx, rng.randint(2, config.max_degree))]
        gamma = IdealHandle(ctx, gamma_gens)
        if gamma.is_unit():
            continue
        try:
            model = LocalRingModel(ctx, gamma)
            J = random_m_primary_ideal(
                rng, ctx, config.max_degree, config.extra_gen_prob_percent
            )
            ideals = [
                random_monomial_ideal(
                    rng,
                    ctx,
                    config.max_degree,
                    distinct_degrees=config.distinct_degrees,
                )
                for _ in range(s)
            ]
            # start certification low; base doubling and the difference
            # cross-checks police false stabilizations
            options = InstanceOptions(
                base0=config.max_degree + 2, seed=derive_seed(seed, 7)
            )
            return ProblemInstance(model, J, ideals, options)
        except MMError:
            continue
    raise MMError(f"could not draw a valid instance from seed {seed}")


def instance_stream(config, seed, count):
    """Deterministic list of `count` valid instances."""
    return [
        random_monomial_instance(config, derive_seed(seed, 1000 + i))
        for i in range(count)
    ]
