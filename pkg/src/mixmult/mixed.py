"""Multivariate Hilbert tables and mixed multiplicity extraction.

Builds the exact value grid of n -> length(J^n0 I1^n1 ... Is^ns / J^(n0+1) ...),
certifies stabilization by difference vanishing plus base-shift invariance,
and reads every mixed multiplicity off as a mixed forward difference at
the base point.  Also carries the closed form for free multigraded
extensions and the positivity criterion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import (
    InconsistencyError,
    InputError,
    NilpotentError,
    NotMPrimaryError,
    StabilizationError,
)
from .ideals import (
    IdealHandle,
    ideal_product,
    ideal_saturate,
    ideal_sum,
    krull_dim_quotient,
)
from .localmodel import LocalRingModel, is_m_primary, length_quotient

BASE_CAP = 32


def compositions(total, parts):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def mixed_difference(values, anchor, k):
    """Mixed forward difference of multi-order k at `anchor` on a value map."""
    out = 0
    for beta in itertools.product(*(range(ki + 1) for ki in k)):
        point = tuple(a + b for a, b in zip(anchor, beta))
        sign = (-1) ** (sum(k) - sum(beta))
        weight = 1
        for ki, bi in zip(k, beta):
            weight *= math.comb(ki, bi)
        out += sign * weight * values[point]
    return out


@dataclass
class HilbertTable:
    """Exact values on an integer grid plus stabilization metadata."""

    base: tuple
    window: int
    values: dict
    ell: int
    stabilized: bool

    def value(self, n):
        return self.values[tuple(n)]

    def difference(self, k, anchor=None):
        return mixed_difference(self.values, anchor or self.base, k)

    def as_json(self):
        return {
            "base": list(self.base),
            "window": self.window,
            "ell": self.ell,
            "stabilized": self.stabilized,
            "values": {
                "(" + ",".join(str(x) for x in n) + ")": v
                for n, v in sorted(self.values.items())
            },
        }


@dataclass
class MixedReport:
    """All mixed multiplicities of one instance, keyed by type tuple."""

    ell: int
    entries: dict
    route: str

    def as_json(self):
        return {
            "ell": self.ell,
            "e": {
                "(" + ",".join(str(x) for x in k) + ")": v
                for k, v in sorted(self.entries.items())
            },
            "route": self.route,
        }


@dataclass
class InstanceOptions:
    base0: int | None = None
    window: int | None = None
    seed: int = 1
    retries: int = 8
    base_cap: int = BASE_CAP

    def merged(self, **overrides):
        out = InstanceOptions(**vars(self))
        for key, val in overrides.items():
            if val is not None:
                setattr(out, key, val)
        return out


class ProblemInstance:
    """The local model, the m-primary ideal J, and the ideal family I1..Is.

    Owns all per-instance caches: family powers, grid products, Hilbert
    values and the default stabilized table.
    """

    def __init__(self, model, J, ideals, options=None):
        options = options or InstanceOptions()
        J.require_homogeneous()
        for I in ideals:
            I.require_homogeneous()
        if not ideals:
            raise InputError("need at least one ideal in the family")
        if not is_m_primary(model, J):
            raise NotMPrimaryError("J is not m-primary")
        self.model = model
        self.J = J
        self.ideals = tuple(ideals)
        self.options = options
        prod = None
        for I in self.ideals:
            prod = I if prod is None else ideal_product(prod, I)
        self.I_product = prod
        self.saturation = ideal_saturate(model.gamma, prod)
        if self.saturation.is_unit():
            raise NilpotentError("I = I1...Is is nilpotent in the model")
        self.ell = krull_dim_quotient(self.saturation)
        if self.ell < 1:
            raise InputError("degenerate instance: ell < 1")
        self._products = {}
        self._values = {}
        self._tables = {}

    @property
    def s(self):
        return len(self.ideals)

    def family(self):
        return (self.J,) + self.ideals

    def swapped(self, i, j):
        """Same instance with ideals i and j exchanged (1-based)."""
        ideals = list(self.ideals)
        ideals[i - 1], ideals[j - 1] = ideals[j - 1], ideals[i - 1]
        return ProblemInstance(self.model, self.J, ideals, self.options)

    # -- grid products -------------------------------------------------------
    def power_product(self, n):
        """J^n0 * I1^n1 * ... * Is^ns, built incrementally along the grid."""
        n = tuple(int(x) for x in n)
        if len(n) != self.s + 1 or any(x < 0 for x in n):
            raise InputError(f"bad exponent vector {n}")
        cached = self._products.get(n)
        if cached is not None:
            return cached
        if sum(n) == 0:
            out = IdealHandle.unit(self.model.ctx)
        else:
            axis = max(i for i, x in enumerate(n) if x > 0)
            prev = self.power_product(n[:axis] + (n[axis] - 1,) + n[axis + 1 :])
            out = ideal_product(prev, self.family()[axis])
        self._products[n] = out
        return out

    def default_base0(self):
        maxdeg = max(I.max_gen_degree() for I in self.family())
        return 2 * maxdeg + 2

    # -- Hilbert values -------------------------------------------------------
    def hilbert_value(self, n, method="auto"):
        n = tuple(int(x) for x in n)
        key = (n, method)
        if key not in self._values:
            U = self.power_product(n)
            JU = self.power_product((n[0] + 1,) + n[1:])
            self._values[key] = length_quotient(
                self.model, U, self.J, method=method, JU=JU
            )
        return self._values[key]

    # -- table ----------------------------------------------------------------
    def build_table(self, base0=None, window=None, base_cap=None, method="auto"):
        opts = self.options
        window = window if window is not None else (opts.window or self.ell + 1)
        if window < self.ell:
            raise InputError(
                f"window {window} too small to test order-{self.ell} differences"
            )
        base0 = base0 if base0 is not None else (opts.base0 or self.default_base0())
        base_cap = base_cap if base_cap is not None else opts.base_cap
        key = (base0, window, method)
        if key in self._tables:
            return self._tables[key]
        axes = self.s + 1
        b = base0
        table = None
        while True:
            grid = {}
            for n in itertools.product(range(b, b + window + 1), repeat=axes):
                grid[n] = self.hilbert_value(n, method=method)
            table = HilbertTable((b,) * axes, window, grid, self.ell, False)
            if self._grid_stable(grid, (b,) * axes, window):
                table.stabilized = True
                self._tables[key] = table
                return table
            if b * 2 > base_cap:
                raise StabilizationError(
                    f"table not stabilized by base {b} (cap {base_cap})",
                    table=table,
                )
            b *= 2

    def _grid_stable(self, grid, base, window):
        axes = self.s + 1
        ell = self.ell
        # every order-ell mixed difference that fits in the grid vanishes
        for k in compositions(ell, axes):
            if any(ki > window for ki in k):
                continue
            ranges = [range(base[i], base[i] + window - k[i] + 1) for i in range(axes)]
            for anchor in itertools.product(*ranges):
                if mixed_difference(grid, anchor, k) != 0:
                    return False
        # order-(ell-1) differences agree across a diagonal base shift
        shifted = tuple(x + 1 for x in base)
        for k in compositions(ell - 1, axes):
            if any(ki + 1 > window for ki in k):
                return False
            if mixed_difference(grid, base, k) != mixed_difference(grid, shifted, k):
                return False
        return True

    def table(self):
        return self.build_table()

    def certified_base(self):
        return self.table().base[0]


def build_table(instance, base0=None, window=None):
    return instance.build_table(base0=base0, window=window)


def mixed_multiplicities(table):
    """Extract every mixed multiplicity from a stabilized table."""
    if not table.stabilized:
        raise InputError("table is not stabilized")
    axes = len(table.base)
    entries = {}
    for k in compositions(table.ell - 1, axes):
        entries[k] = table.difference(k)
    if any(v < 0 for v in entries.values()):
        bad = {k: v for k, v in entries.items() if v < 0}
        raise InconsistencyError(
            f"negative mixed multiplicities {bad}; stabilization was a false positive"
        )
    if entries and all(v == 0 for v in entries.values()):
        raise InconsistencyError(
            "all mixed multiplicities vanish; stabilization was a false positive"
        )
    return MixedReport(table.ell, entries, "direct-table")


# ---------------------------------------------------------------------------
# free multigraded extensions (closed form)
# ---------------------------------------------------------------------------


@dataclass
class FreeAlgebraSpec:
    """A[t_i fresh variables in direction i], with multidegree bookkeeping."""

    model: LocalRingModel
    J: IdealHandle
    t: tuple

    def __post_init__(self):
        self.t = tuple(int(x) for x in self.t)
        if any(ti < 1 for ti in self.t):
            raise InputError("every direction needs at least one variable")
        if not is_m_primary(self.model, self.J):
            raise NotMPrimaryError("J is not m-primary")
        if self.model.dim < 1:
            raise InputError("the base model must have positive dimension")
        self._lenJ = {}
        self._powers = {0: IdealHandle.unit(self.model.ctx)}

    def lenJ(self, n0):
        """length of J^n0 / J^(n0+1) in the base model."""
        if n0 not in self._lenJ:
            top = max(self._powers)
            while top < n0 + 1:
                self._powers[top + 1] = ideal_product(self._powers[top], self.J)
                top += 1
            self._lenJ[n0] = length_quotient(
                self.model, self._powers[n0], self.J, JU=self._powers[n0 + 1]
            )
        return self._lenJ[n0]

    def closed_value(self, n):
        """H(n0; n1..ns) = len(J^n0/J^n0+1) * prod binom(ni + ti - 1, ti - 1)."""
        if any(x < 0 for x in n):
            return 0
        out = self.lenJ(n[0])
        for ni, ti in zip(n[1:], self.t):
            out *= math.comb(ni + ti - 1, ti - 1)
        return out

    @property
    def ell(self):
        return self.model.dim + sum(ti - 1 for ti in self.t)


def _closed_form_table(value_fn, axes, ell, base0, window, base_cap=BASE_CAP):
    b = base0
    while True:
        grid = {}
        for n in itertools.product(range(b, b + window + 1), repeat=axes):
            grid[n] = value_fn(n)
        table = HilbertTable((b,) * axes, window, grid, ell, False)
        stable = True
        for k in compositions(ell, axes):
            if any(ki > window for ki in k):
                continue
            ranges = [range(b, b + window - k[i] + 1) for i in range(axes)]
            for anchor in itertools.product(*ranges):
                if mixed_difference(grid, anchor, k) != 0:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            shifted = tuple(x + 1 for x in table.base)
            for k in compositions(ell - 1, axes):
                if mixed_difference(grid, table.base, k) != mixed_difference(
                    grid, shifted, k
                ):
                    stable = False
                    break
        if stable:
            table.stabilized = True
            return table
        if b * 2 > base_cap:
            raise StabilizationError(f"closed form not stable by base {b}", table=table)
        b *= 2


def free_algebra_report(spec, base0=None):
    """Mixed multiplicities of the free extension, from the closed form."""
    ell = spec.ell
    axes = len(spec.t) + 1
    if base0 is None:
        base0 = 2 * max(spec.J.max_gen_degree(), 1) + 2
    table = _closed_form_table(spec.closed_value, axes, ell, base0, ell + 1)
    report = mixed_multiplicities(table)
    return MixedReport(report.ell, report.entries, "closed-form")


def free_quotient_report(spec, direction, base0=None):
    """Dimension bookkeeping after quotienting by one fresh variable.

    The quotient's diagonal Hilbert values are first differences of the
    closed form along `direction`; the report gives the dimension drop and
    flags (without failing) any drop different from 1.
    """
    if not 1 <= direction <= len(spec.t):
        raise InputError(f"direction {direction} out of range")
    ell = spec.ell
    if base0 is None:
        base0 = 2 * max(spec.J.max_gen_degree(), 1) + 2

    def quotient_diagonal(n):
        point = (n,) * (len(spec.t) + 1)
        lower = tuple(
            x - 1 if i == direction else x for i, x in enumerate(point)
        )
        return spec.closed_value(point) - spec.closed_value(lower)

    width = ell + 2
    b = base0
    while True:
        vals = [quotient_diagonal(n) for n in range(b, b + 2 * width + 1)]
        order = _detect_poly_order(vals)
        vals_shift = [quotient_diagonal(n) for n in range(b + 1, b + 2 * width + 2)]
        if order is not None and order == _detect_poly_order(vals_shift):
            ell_after = order
            break
        if b * 2 > BASE_CAP * 4:
            raise StabilizationError("quotient diagonal did not stabilize")
        b *= 2
    drop = ell - ell_after
    return {
        "ell_before": ell,
        "ell_after": ell_after,
        "drop": drop,
        "flagged": drop != 1,
    }


def _detect_poly_order(vals):
    """Smallest r with the r-th differences all zero, or None."""
    cur = list(vals)
    for r in range(len(vals)):
        if all(v == 0 for v in cur):
            return r
        cur = [b - a for a, b in zip(cur, cur[1:])]
        if not cur:
            return None
    return None


# ---------------------------------------------------------------------------
# positivity criterion
# ---------------------------------------------------------------------------


@dataclass
class PositivityResult:
    status: str  # positive-certified | zero-certified | undetermined
    seed_used: int | None = None
    dims: list = field(default_factory=list)
    table_value: int | None = None
    failures: int = 0

    def as_json(self):
        return {
            "status": self.status,
            "seed_used": self.seed_used,
            "dims": list(self.dims),
            "table_value": self.table_value,
            "failures": self.failures,
        }


def positivity(instance, k, seeds, table=None, retries=None):
    """Theorem-based positivity certification of the type-k multiplicity.

    positive-certified: some seed produced a weak sequence whose final
    saturation dimension equals ell - t.  zero-certified: the direct table
    reports 0 (and no certifying sequence was found).  undetermined: the
    search failed and no table was supplied or cached.  A certifying
    sequence while the table reports 0 raises InconsistencyError.
    """
    from .fc import build_sequence  # local import; fc depends on this module
    from .errors import SearchFailureError

    k = tuple(int(x) for x in k)
    if sum(k) != instance.ell - 1:
        raise InputError(f"type {k} does not sum to ell-1 = {instance.ell - 1}")
    t = sum(k[1:])
    found = None
    failures = 0
    for seed in seeds:
        try:
            record = build_sequence(instance, k, seed, retries=retries)
        except SearchFailureError:
            failures += 1
            continue
        if record.dims[-1] == instance.ell - t:
            found = (seed, record)
            break
        failures += 1

    if table is None:
        table = next(iter(instance._tables.values()), None)
    table_value = None
    if table is not None and table.stabilized:
        table_value = table.difference(k)

    if found is not None:
        if table_value == 0:
            raise InconsistencyError(
                f"type {k}: certifying sequence found but the table reports 0"
            )
        return PositivityResult(
            "positive-certified", found[0], found[1].dims, table_value, failures
        )
    if table_value == 0:
        return PositivityResult("zero-certified", None, [], 0, failures)
    return PositivityResult("undetermined", None, [], table_value, failures)
