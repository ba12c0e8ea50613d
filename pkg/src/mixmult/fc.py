"""Weak element construction and the two-route multiplicity verification.

Candidates are random homogeneous combinations drawn from one degree
stratum of a family ideal; every acceptance is backed by exact checks
(the intersection condition on a grid, filter-regularity, and optionally
the dimension drop).  Randomness only picks candidates; a pass is a proof
for the checked grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ComputationLimitError, InputError, SearchFailureError
from .ideals import (
    IdealHandle,
    ideal_colon,
    ideal_intersect,
    ideal_product,
    ideal_saturate,
    ideal_sum,
    krull_dim_quotient,
    normal_form,
)
from .localmodel import LocalRingModel, hilbert_samuel
from .mixed import mixed_multiplicities, positivity
from .ring import derive_seed, random_homogeneous_combo


@dataclass
class FCChecks:
    fc1: bool
    fc2: bool
    fc3: bool | None = None  # recorded, never required

    def as_json(self):
        return {"fc1": self.fc1, "fc2": self.fc2, "fc3": self.fc3}


@dataclass
class FCCandidate:
    element: object
    direction: int  # index into (J, I1..Is); 0 means J
    seed: int
    checks: FCChecks

    def as_json(self):
        return {
            "element": str(self.element),
            "direction": self.direction,
            "seed": self.seed,
            "checks": self.checks.as_json(),
        }


@dataclass
class FCSequenceRecord:
    elements: list
    models: list  # model after each quotient; models[0] is the start
    dims: list  # dim A_i/(0 : I^inf), sentinel -1 once I is nilpotent
    maximal: bool

    def as_json(self):
        return {
            "elements": [c.as_json() for c in self.elements],
            "dims": list(self.dims),
            "maximal": self.maximal,
        }


def _family_product(model, family, n, cache):
    """prod_j family[j]^(n_j) as an ambient ideal, memoized per model step."""
    n = tuple(n)
    out = cache.get(n)
    if out is not None:
        return out
    if sum(n) == 0:
        out = IdealHandle.unit(model.ctx)
    else:
        axis = max(i for i, x in enumerate(n) if x > 0)
        prev = _family_product(
            model, family, n[:axis] + (n[axis] - 1,) + n[axis + 1 :], cache
        )
        out = ideal_product(prev, family[axis])
    cache[n] = out
    return out


def check_fc1(model, family, x, i, base, window=1, cache=None):
    """Intersection condition on the grid {base..base+window}^len(family).

    True iff (x) meet prod_j F_j^(n_j) equals x * prod_j F_j^(n_j - d_ij)
    as ideals of the model, at every grid point.
    """
    if window < 1:
        raise InputError("fc1 grid needs window >= 1")
    if base < 1:
        raise InputError("fc1 grid base must be >= 1")
    if not 0 <= i < len(family):
        raise InputError(f"direction {i} out of range")
    cache = cache if cache is not None else {}
    gamma = model.gamma
    x_ideal = ideal_sum(IdealHandle(model.ctx, [x]), gamma)
    for n in itertools.product(range(base, base + window + 1), repeat=len(family)):
        T = _family_product(model, family, n, cache)
        n_minus = n[:i] + (n[i] - 1,) + n[i + 1 :]
        T_minus = _family_product(model, family, n_minus, cache)
        lhs = ideal_intersect(x_ideal, ideal_sum(T, gamma))
        rhs = ideal_sum(ideal_product(IdealHandle(model.ctx, [x]), T_minus), gamma)
        if not lhs.same(rhs):
            return False
    return True


def check_fc2(model, I, x):
    """Filter-regularity: (0 : x) contained in (0 : I^inf), in the model."""
    if model.gamma.is_zero:
        return not x.is_zero
    colon = ideal_colon(model.gamma, IdealHandle(model.ctx, [x]))
    sat = ideal_saturate(model.gamma, I)
    if sat.is_unit():
        return True
    gb = sat.groebner()
    return all(normal_form(g, gb).is_zero for g in colon.gens)


def check_fc3(model, I, x):
    """Dimension drop: dim A/((x) : I^inf) == dim A/(0 : I^inf) - 1."""
    before = krull_dim_quotient(ideal_saturate(model.gamma, I))
    grown = ideal_sum(model.gamma, IdealHandle(model.ctx, [x]))
    after = krull_dim_quotient(ideal_saturate(grown, I))
    return after == before - 1


def require_member(model, ideal, x):
    """Membership of x in the image of `ideal` in the model (precondition)."""
    lifted = ideal_sum(ideal, model.gamma)
    if not lifted.contains(x):
        raise InputError(f"candidate {x} is not in its direction ideal")


def _stratum_basis(model, ideal, degree):
    """Spanning set of the degree-`degree` piece of the image ideal.

    Monomial multiples of the generators, with zero images dropped; this
    is the candidate pool the random combinations are drawn from.
    """
    from .mixed import compositions

    ctx = model.ctx
    gb = model.gamma.groebner()
    out = []
    seen = set()
    for g in ideal.gens:
        dg = g.homogeneous_degree()
        if dg is None or dg > degree:
            continue
        for exp in compositions(degree - dg, ctx.nvars):
            cand = g.mul_term(exp)
            key = frozenset(cand.terms.items())
            if key in seen:
                continue
            seen.add(key)
            if not normal_form(cand, gb).is_zero:
                out.append(cand)
    return out


def build_sequence(instance, k, seed, retries=None, fc1_window=1):
    """Greedy random construction of a weak sequence of type k.

    Draws k_i elements from I_i (directions in order), verifying the
    intersection condition and filter-regularity in the current quotient,
    then re-verifying on a shifted grid before accepting.  Exhausted
    retries raise SearchFailureError carrying the partial record.
    """
    k = tuple(int(x) for x in k)
    if len(k) != instance.s + 1 or any(x < 0 for x in k):
        raise InputError(f"bad type vector {k}")
    t = sum(k[1:])
    if t > instance.ell:
        raise InputError(
            f"requested {t} elements but sequences are capped at ell = {instance.ell}"
        )
    retries = retries if retries is not None else instance.options.retries
    base = instance.certified_base()
    family = instance.family()
    I = instance.I_product

    model = instance.model
    sat = instance.saturation
    dims = [instance.ell]
    elements = []
    models = [model]

    def record(maximal=False):
        return FCSequenceRecord(elements, models, dims, maximal)

    step = 0
    for direction in range(1, instance.s + 1):
        for _ in range(k[direction]):
            if sat.is_unit():
                raise SearchFailureError(
                    f"step {step}: I became nilpotent; no further elements exist",
                    record=record(),
                )
            live = [
                g
                for g in family[direction].gens
                if not normal_form(g, model.gamma.groebner()).is_zero
            ]
            if not live:
                raise SearchFailureError(
                    f"step {step}: direction {direction} has zero image",
                    record=record(),
                )
            d0 = min(g.homogeneous_degree() for g in live)
            accepted = None
            cache = {}
            for stratum_idx, degree in enumerate((d0, d0 + 1)):
                gens = _stratum_basis(model, family[direction], degree)
                if not gens:
                    continue
                for attempt in range(retries):
                    cand_seed = derive_seed(seed, step, stratum_idx, attempt)
                    x = random_homogeneous_combo(gens, degree, cand_seed)
                    if normal_form(x, model.gamma.groebner()).is_zero:
                        continue
                    try:
                        if not check_fc1(
                            model, family, x, direction, base, fc1_window, cache
                        ):
                            continue
                        if not check_fc2(model, I, x):
                            continue
                        # re-verification: membership, homogeneity, shifted grid
                        require_member(model, family[direction], x)
                        x.homogeneous_degree()
                        if not check_fc1(
                            model, family, x, direction, base + 1, fc1_window, cache
                        ):
                            continue
                        if not check_fc2(model, I, x):
                            continue
                        fc3 = check_fc3(model, I, x)
                    except ComputationLimitError:
                        # a candidate whose verification blows the resource
                        # caps is skipped, never accepted unverified
                        continue
                    accepted = FCCandidate(x, direction, cand_seed, FCChecks(True, True, fc3))
                    break
                if accepted:
                    break
            if accepted is None:
                raise SearchFailureError(
                    f"step {step}: no candidate passed in direction {direction} "
                    f"after {retries} retries per stratum",
                    record=record(),
                )
            elements.append(accepted)
            model = model.quotient_by(IdealHandle(model.ctx, [accepted.element]))
            models.append(model)
            sat = ideal_saturate(model.gamma, I)
            dims.append(krull_dim_quotient(sat) if sat.is_proper() else -1)
            step += 1

    maximal = bool(elements) and sat.is_unit() and dims[-2] >= 0
    return FCSequenceRecord(elements, models, dims, maximal)


@dataclass
class VerifyReport:
    type: tuple
    ell: int
    t: int
    e_direct: int
    route: str  # fc-reduction | zero-positivity
    e_reduced: int | None = None
    reduced_dim: int | None = None
    dims: list | None = None
    dims_consistent: bool | None = None
    equal: bool | None = None
    positivity_status: str | None = None
    inconclusive: str | None = None

    def as_json(self):
        out = {
            "type": "(" + ",".join(str(x) for x in self.type) + ")",
            "ell": self.ell,
            "t": self.t,
            "e_direct": self.e_direct,
            "route": self.route,
        }
        if self.route == "fc-reduction":
            out.update(
                {
                    "e_reduced": self.e_reduced,
                    "reduced_dim": self.reduced_dim,
                    "dims": self.dims,
                    "dims_consistent": self.dims_consistent,
                    "equal": self.equal,
                }
            )
        else:
            out["positivity"] = self.positivity_status
        if self.inconclusive:
            out["inconclusive"] = self.inconclusive
        return out


def verify_theorem43(instance, k, seed, positivity_seeds=5):
    """Cross-check the direct table value of type k against the reduction.

    Nonzero direct value: build a weak sequence, saturate the quotient,
    and compare with the Hilbert-Samuel multiplicity there, reporting the
    dimension ledger.  Zero direct value: run the positivity criterion.
    """
    k = tuple(int(x) for x in k)
    table = instance.table()
    report = mixed_multiplicities(table)
    if k not in report.entries:
        raise InputError(f"type {k} does not sum to ell-1 = {table.ell - 1}")
    e_direct = report.entries[k]
    t = sum(k[1:])

    if e_direct == 0:
        seeds = [derive_seed(seed, 101 + j) for j in range(positivity_seeds)]
        result = positivity(instance, k, seeds, table=table)
        return VerifyReport(
            k,
            table.ell,
            t,
            e_direct,
            "zero-positivity",
            positivity_status=result.status,
        )

    if t == 0:
        H = instance.saturation
        dims = [instance.ell]
    else:
        try:
            record = build_sequence(instance, k, seed)
        except SearchFailureError as exc:
            return VerifyReport(
                k,
                table.ell,
                t,
                e_direct,
                "fc-reduction",
                dims=list(exc.record.dims) if exc.record else None,
                inconclusive=str(exc),
            )
        dims = list(record.dims)
        grown = instance.model.gamma
        for cand in record.elements:
            grown = ideal_sum(grown, IdealHandle(instance.model.ctx, [cand.element]))
        H = ideal_saturate(grown, instance.I_product)

    reduced_dim = krull_dim_quotient(H)
    dims_consistent = reduced_dim == instance.ell - t
    D, e_reduced = hilbert_samuel(instance.model, instance.J, H)
    return VerifyReport(
        k,
        table.ell,
        t,
        e_direct,
        "fc-reduction",
        e_reduced=e_reduced,
        reduced_dim=reduced_dim,
        dims=dims,
        dims_consistent=dims_consistent,
        equal=e_reduced == e_direct,
    )
