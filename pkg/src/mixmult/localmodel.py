"""The local-ring model A = (k[y1..yd]/Gamma) localized at (y1..yd).

Only homogeneous ideals are accepted, so graded lengths equal local
lengths; that restriction is enforced here, not assumed.  Provides
m-primariness tests, exact lengths of U/JU, and Hilbert-Samuel
multiplicities extracted by integer forward differences.
"""

from __future__ import annotations

from . import staircase
from .errors import (
    HomogeneityError,
    InputError,
    NotMPrimaryError,
    StabilizationError,
)
from .ideals import (
    IdealHandle,
    ideal_power,
    ideal_product,
    ideal_sum,
    krull_dim_quotient,
)

M_ADIC_CAP = 100


class LocalRingModel:
    """Ambient context plus the defining homogeneous ideal Gamma."""

    def __init__(self, ctx, gamma=None):
        gamma = gamma if gamma is not None else IdealHandle.zero(ctx)
        if gamma.ctx != ctx:
            raise InputError("gamma from a different context")
        gamma.require_homogeneous()
        if gamma.is_unit():
            raise InputError("gamma must be a proper ideal")
        self.ctx = ctx
        self.gamma = gamma
        self._dim = None
        self._mprimary = {}
        self._madic = {}

    def __repr__(self):
        return f"LocalRingModel(vars={self.ctx.variables}, gamma={self.gamma!r})"

    @property
    def dim(self):
        if self._dim is None:
            self._dim = krull_dim_quotient(self.gamma)
        return self._dim

    def maximal_ideal(self):
        return IdealHandle(self.ctx, [self.ctx.variable(v) for v in self.ctx.variables])

    def quotient_by(self, extra):
        """Model of A/(extra), keeping the ambient presentation."""
        return LocalRingModel(self.ctx, ideal_sum(self.gamma, extra))

    def image_is_zero(self, f):
        """Does f vanish in A?"""
        return self.gamma.contains(f)


def is_m_primary(model, J):
    """True iff the quotient by Gamma + J is zero-dimensional."""
    J.require_homogeneous()
    key = J.gens
    cached = model._mprimary.get(key)
    if cached is None:
        cached = krull_dim_quotient(ideal_sum(model.gamma, J)) <= 0
        model._mprimary[key] = cached
    return cached


def m_adic_exponent(model, J, cap=M_ADIC_CAP):
    """Least c with m^c contained in J + Gamma (exists for m-primary J)."""
    key = J.gens
    cached = model._madic.get(key)
    if cached is not None:
        return cached
    total = ideal_sum(J, model.gamma)
    n = model.ctx.nvars
    leads = total.lead_exps()
    for c in range(cap + 1):
        if staircase.count_divisible(leads, n, c) == staircase.simplex_count(n, c):
            model._madic[key] = c
            return c
    raise InputError(f"m-adic exponent exceeds cap {cap}; is J m-primary?")


def _std_array(handle, upto, method):
    """Standard-monomial counts of the ambient quotient by `handle`."""
    n = handle.ctx.nvars
    if method == "staircase":
        if not handle.is_monomial:
            raise InputError("staircase method needs monomial data")
        return staircase.std_counts(handle.monomial_exps(), n, upto)
    leads = handle.lead_exps()
    return [
        staircase.simplex_count(n, e) - staircase.count_divisible(leads, n, e)
        for e in range(upto + 1)
    ]


def length_quotient(model, U, J, method="auto", JU=None, extra_cutoff=0):
    """Exact length of U/JU over the model (J m-primary, all homogeneous).

    Sums graded dimension differences from the least generator degree of
    U up to g + c - 1, where g bounds the generator degrees of U + Gamma
    and m^c lies in J + Gamma.  `method` picks the counting route:
    'staircase' (monomial lattice counts) or 'gb' (lead-term enumeration);
    'auto' uses the staircase whenever all data is monomial.
    """
    U.require_homogeneous()
    J.require_homogeneous()
    if not is_m_primary(model, J):
        raise NotMPrimaryError("J is not m-primary in the model")
    if U.is_zero:
        return 0
    if JU is None:
        JU = ideal_product(J, U)
    big = ideal_sum(U, model.gamma)
    small = ideal_sum(JU, model.gamma)
    monomial = big.is_monomial and small.is_monomial
    if method == "auto":
        method = "staircase" if monomial else "gb"
    if method == "staircase" and not monomial:
        raise InputError("staircase method requires monomial ideals throughout")
    if method not in ("staircase", "gb"):
        raise InputError(f"unknown length method {method!r}")
    g = big.max_gen_degree()
    c = m_adic_exponent(model, J)
    hi = g + c - 1 + extra_cutoff
    lo = U.min_gen_degree()
    if hi < lo:
        return 0
    std_big = _std_array(big, hi, method)
    std_small = _std_array(small, hi, method)
    return sum(std_small[e] - std_big[e] for e in range(lo, hi + 1))


def total_colength(model, H=None):
    """Length of A/H (H + Gamma must be zero-dimensional)."""
    total = ideal_sum(model.gamma, H) if H is not None else model.gamma
    total.require_homogeneous()
    if total.is_unit():
        return 0
    if krull_dim_quotient(total) > 0:
        raise InputError("quotient has positive dimension; length is infinite")
    n = model.ctx.nvars
    if total.is_monomial:
        return staircase.total_std_count(total.monomial_exps(), n)
    leads = total.lead_exps()
    out, e = 0, 0
    while True:
        std = staircase.simplex_count(n, e) - staircase.count_divisible(leads, n, e)
        if std == 0:
            return out
        out += std
        e += 1


def _forward_diffs(values, order):
    """order-th forward differences of a value list."""
    cur = list(values)
    for _ in range(order):
        cur = [b - a for a, b in zip(cur, cur[1:])]
    return cur


def hilbert_samuel(model, J, H, base_cap=64, method="auto"):
    """(dimension, multiplicity) of A/H with respect to m-primary J.

    Evaluates n -> length((J^n + H)/(J^(n+1) + H)) and extracts the
    normalized leading coefficient as the (D-1)-th forward difference at
    a base where a window of three D-th differences vanishes.
    """
    J.require_homogeneous()
    H.require_homogeneous()
    quotient_ideal = ideal_sum(model.gamma, H)
    if quotient_ideal.is_unit():
        raise InputError("H must present a nonzero quotient ring")
    sub = LocalRingModel(model.ctx, quotient_ideal)
    if not is_m_primary(sub, J):
        raise NotMPrimaryError("J is not m-primary in the model")
    D = sub.dim
    if D == 0:
        return 0, total_colength(sub)

    values = {}
    powers = {0: IdealHandle.unit(model.ctx)}

    def f(n):
        if n not in values:
            top = max(powers)
            while top < n + 1:
                powers[top + 1] = ideal_product(powers[top], J)
                top += 1
            values[n] = length_quotient(
                sub, powers[n], J, method=method, JU=powers[n + 1]
            )
        return values[n]

    base = D + 2
    while True:
        window = [f(n) for n in range(base, base + D + 3)]
        top_diffs = _forward_diffs(window, D)
        if top_diffs[:3] == [0, 0, 0]:
            mult = _forward_diffs(window, D - 1)[0]
            if mult > 0:
                return D, mult
        if base * 2 > base_cap:
            raise StabilizationError(
                f"Hilbert-Samuel data not stable by base {base}", table=dict(values)
            )
        base *= 2
