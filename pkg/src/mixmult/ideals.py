"""Groebner engine and ideal calculus.

Buchberger with the coprime and chain criteria, reduced bases, and the
ideal operations (sum, product, power, intersection, colon, saturation,
graded piece dimensions, Krull dimension of the quotient).  Monomial
ideals take combinatorial fast paths throughout; `force_general=True`
routes even monomial inputs through the elimination machinery so the two
paths can be differential-tested against each other.
"""

from __future__ import annotations

import heapq
import itertools

from . import staircase
from .errors import ComputationLimitError, HomogeneityError, InputError
from .ring import (
    MonomialOrder,
    Polynomial,
    RingContext,
    elimination_order,
    order_key,
)

MAX_PAIRS = 50_000
MAX_DEGREE = 200


class GroebnerBasis:
    """A reduced Groebner basis: monic, pairwise reduced, sorted by lead."""

    __slots__ = ("elements", "order")

    def __init__(self, elements, order):
        self.elements = tuple(elements)
        self.order = order

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order == other.order
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.elements, self.order))

    def leads(self):
        return [g.leading(self.order)[0] for g in self.elements]

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}])"


def _reduce(f, polys, order):
    """Full normal form of f against a list of polynomials."""
    if not polys:
        return f
    ctx = f.ctx
    leads = [(p.leading(order)) for p in polys]
    work = dict(f.terms)
    remainder = {}
    while work:
        exp = max(work, key=lambda e: order_key(order, e))
        coeff = work.pop(exp)
        for (lexp, lc), g in zip(leads, polys):
            if all(a >= b for a, b in zip(exp, lexp)):
                shift = tuple(a - b for a, b in zip(exp, lexp))
                factor = ctx.cmul(coeff, ctx.cinv(lc))
                for ge, gc in g.terms.items():
                    e2 = tuple(a + b for a, b in zip(ge, shift))
                    if e2 == exp:
                        continue
                    s = ctx.cadd(
                        work.get(e2, ctx.coeff(0)), ctx.cneg(ctx.cmul(gc, factor))
                    )
                    if s:
                        work[e2] = s
                    else:
                        work.pop(e2, None)
                break
        else:
            remainder[exp] = coeff
    return Polynomial(ctx, remainder)


def normal_form(f, gb):
    """Remainder of f modulo a Groebner basis; zero iff f is in the ideal."""
    if gb.elements and f.ctx != gb.elements[0].ctx:
        raise InputError("polynomial and basis from different contexts")
    return _reduce(f, list(gb.elements), gb.order)


def _spoly(f, g, order):
    ctx = f.ctx
    (ef, cf), (eg, cg) = f.leading(order), g.leading(order)
    lcm = staircase.exp_lcm(ef, eg)
    mf = tuple(a - b for a, b in zip(lcm, ef))
    mg = tuple(a - b for a, b in zip(lcm, eg))
    return f.mul_term(mf, ctx.cinv(cf)) - g.mul_term(mg, ctx.cinv(cg))


def _autoreduce(polys, order):
    """Interreduce to the unique reduced basis of the same leading ideal."""
    polys = [p for p in polys if p]
    changed = True
    while changed:
        changed = False
        polys.sort(key=lambda p: order_key(order, p.leading(order)[0]))
        for i in range(len(polys)):
            rest = polys[:i] + polys[i + 1 :]
            r = _reduce(polys[i], rest, order)
            if r != polys[i]:
                changed = True
                if r:
                    polys[i] = r.monic(order)
                else:
                    del polys[i]
                break
    return sorted(
        (p.monic(order) for p in polys),
        key=lambda p: order_key(order, p.leading(order)[0]),
    )


def buchberger(gens, order, max_pairs=MAX_PAIRS, max_degree=MAX_DEGREE):
    """Reduced Groebner basis of the given generators.

    Monomial input short-circuits to the minimal generating set.  Raises
    ComputationLimitError when the pair or degree cap is exceeded.
    """
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerBasis((), order)
    ctx = gens[0].ctx
    if any(g.ctx != ctx for g in gens):
        raise InputError("generators from different contexts")
    if all(g.is_term() for g in gens):
        exps = staircase.minimalize(next(iter(g.terms)) for g in gens)
        out = [ctx.monomial(e) for e in sorted(exps, key=lambda e: order_key(order, e))]
        return GroebnerBasis(out, order)

    basis = [g.monic(order) for g in _autoreduce(list(gens), order)]
    if any(b.degree() == 0 for b in basis):
        return GroebnerBasis((ctx.one(),), order)

    leads = [b.leading(order)[0] for b in basis]
    heap = []
    pending = set()
    popped = set()

    def push(i, j):
        lcm = staircase.exp_lcm(leads[i], leads[j])
        heapq.heappush(heap, (order_key(order, lcm), i, j))
        pending.add((i, j))

    for i, j in itertools.combinations(range(len(basis)), 2):
        push(i, j)

    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        popped.add((i, j))
        processed += 1
        if processed > max_pairs:
            raise ComputationLimitError(
                f"S-pair cap {max_pairs} exceeded", pairs=processed
            )
        li, lj = leads[i], leads[j]
        lcm = staircase.exp_lcm(li, lj)
        # coprime-lead criterion
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        # chain criterion: some k with lead dividing the lcm and both
        # flanking pairs already handled
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if staircase.divides(leads[k], lcm):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in popped and p2 in popped:
                    skip = True
                    break
        if skip:
            continue
        r = _reduce(_spoly(basis[i], basis[j], order), basis, order)
        if not r:
            continue
        if r.degree() > max_degree:
            raise ComputationLimitError(
                f"degree cap {max_degree} exceeded (reached {r.degree()})",
                pairs=processed,
                degree=r.degree(),
            )
        r = r.monic(order)
        basis.append(r)
        leads.append(r.leading(order)[0])
        new = len(basis) - 1
        for k in range(new):
            push(k, new)

    return GroebnerBasis(_autoreduce(basis, order), order)


class IdealHandle:
    """An ideal given by generators, with a per-order Groebner cache.

    Monomial ideals (every generator a single term) are normalized to
    their unique minimal monic generating set at construction.
    """

    __slots__ = ("ctx", "gens", "is_monomial", "_gb")

    def __init__(self, ctx, gens):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ctx != ctx:
                raise InputError("generator from a different context")
        self.ctx = ctx
        self.is_monomial = all(g.is_term() for g in gens)
        if self.is_monomial and gens:
            exps = staircase.minimalize(next(iter(g.terms)) for g in gens)
            gens = tuple(ctx.monomial(e) for e in exps)
        self.gens = gens
        self._gb = {}

    # -- construction helpers ----------------------------------------------
    @classmethod
    def from_min_exps(cls, ctx, exps):
        """Monomial ideal from an already-minimal sorted exponent set."""
        self = object.__new__(cls)
        self.ctx = ctx
        self.is_monomial = True
        self.gens = tuple(ctx.monomial(e) for e in exps)
        self._gb = {}
        return self

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def unit(cls, ctx):
        return cls(ctx, (ctx.one(),))

    def __repr__(self):
        return f"IdealHandle({', '.join(str(g) for g in self.gens)})"

    def __eq__(self, other):
        return (
            isinstance(other, IdealHandle)
            and self.ctx == other.ctx
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.ctx, self.gens))

    # -- structure ----------------------------------------------------------
    @property
    def is_zero(self):
        return not self.gens

    def monomial_exps(self):
        if not self.is_monomial:
            raise InputError("not a monomial ideal")
        return tuple(next(iter(g.terms)) for g in self.gens)

    def groebner(self, order=None):
        order = order or self.ctx.order
        key = order.cache_key()
        gb = self._gb.get(key)
        if gb is None:
            # write-once memo; concurrent fills would compute the same basis
            gb = buchberger(self.gens, order)
            self._gb[key] = gb
        return gb

    def is_unit(self):
        if self.is_monomial:
            return any(sum(e) == 0 for e in self.monomial_exps())
        gb = self.groebner()
        return len(gb) == 1 and gb.elements[0].degree() == 0

    def is_proper(self):
        return not self.is_unit()

    def contains(self, f):
        if f.is_zero:
            return True
        if self.is_zero:
            return False
        if self.is_monomial and f.is_term():
            exp = next(iter(f.terms))
            return any(staircase.divides(g, exp) for g in self.monomial_exps())
        return normal_form(f, self.groebner()).is_zero

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def require_homogeneous(self):
        for g in self.gens:
            if not g.is_homogeneous():
                raise HomogeneityError(f"generator {g} is not homogeneous")

    def max_gen_degree(self):
        return max((g.degree() for g in self.gens), default=0)

    def min_gen_degree(self):
        return min((g.degree() for g in self.gens), default=0)

    def same(self, other):
        """Ideal equality (not generator-list equality)."""
        if self.ctx != other.ctx:
            raise InputError("ideals from different contexts")
        if self.is_monomial and other.is_monomial:
            return self.gens == other.gens
        return self.groebner().elements == other.groebner().elements

    def lead_exps(self, order=None):
        """Minimal generators of the lead-term ideal."""
        if self.is_monomial:
            return self.monomial_exps()
        return staircase.minimalize(self.groebner(order).leads())


# ---------------------------------------------------------------------------
# ideal operations
# ---------------------------------------------------------------------------


def _need_same_ctx(a, b):
    if a.ctx != b.ctx:
        raise InputError("ideals from different contexts")


def ideal_sum(a, b):
    _need_same_ctx(a, b)
    if a.is_monomial and b.is_monomial:
        exps = staircase.minimalize(a.monomial_exps() + b.monomial_exps())
        return IdealHandle.from_min_exps(a.ctx, exps)
    return IdealHandle(a.ctx, a.gens + b.gens)


def ideal_product(a, b):
    _need_same_ctx(a, b)
    if a.is_zero or b.is_zero:
        return IdealHandle.zero(a.ctx)
    if a.is_monomial and b.is_monomial:
        exps = staircase.product_exps(a.monomial_exps(), b.monomial_exps())
        return IdealHandle.from_min_exps(a.ctx, exps)
    return IdealHandle(a.ctx, [f * g for f in a.gens for g in b.gens])


def ideal_combine(a, b, op):
    if op == "sum":
        return ideal_sum(a, b)
    if op == "product":
        return ideal_product(a, b)
    raise InputError(f"unknown combine op {op!r}")


def ideal_power(a, n):
    if n < 0:
        raise InputError("negative ideal power")
    out = IdealHandle.unit(a.ctx)
    for _ in range(n):
        out = ideal_product(out, a)
    return out


def _extend_ctx(ctx):
    """Context with one auxiliary elimination variable prepended."""
    name = "_w"
    while name in ctx.variables:
        name += "_"
    return RingContext((name,) + ctx.variables, ctx.p, ctx.order), name


def _lift(poly, ext):
    return Polynomial(ext, {(0,) + e: c for e, c in poly.terms.items()})


def _drop(poly, ctx):
    return Polynomial(ctx, {e[1:]: c for e, c in poly.terms.items()})


def ideal_intersect(a, b, force_general=False):
    """Intersection; monomial inputs use pairwise lcm, otherwise the
    auxiliary-variable elimination w*a + (1-w)*b."""
    _need_same_ctx(a, b)
    ctx = a.ctx
    if a.is_zero or b.is_zero:
        return IdealHandle.zero(ctx)
    if a.is_monomial and b.is_monomial and not force_general:
        exps = staircase.intersect_exps(a.monomial_exps(), b.monomial_exps())
        return IdealHandle.from_min_exps(ctx, exps)
    ext, _ = _extend_ctx(ctx)
    w = ext.variable(ext.variables[0])
    one = ext.one()
    gens = [w * _lift(f, ext) for f in a.gens]
    gens += [(one - w) * _lift(g, ext) for g in b.gens]
    gb = buchberger(gens, elimination_order(1))
    kept = [g for g in gb if all(e[0] == 0 for e in g.terms)]
    return IdealHandle(ctx, [_drop(g, ctx) for g in kept])


def divide_exact(g, f):
    """Quotient g/f for g a known multiple of f (exact division)."""
    ctx = g.ctx
    order = ctx.order
    lexp, lc = f.leading(order)
    work = g
    quot = {}
    while work:
        exp, coeff = work.leading(order)
        if not all(a >= b for a, b in zip(exp, lexp)):
            raise InputError("exact division failed; not a multiple")
        shift = tuple(a - b for a, b in zip(exp, lexp))
        c = ctx.cmul(coeff, ctx.cinv(lc))
        quot[shift] = c
        work = work - f.mul_term(shift, c)
    return Polynomial(ctx, quot)


def _colon_single(a, f, force_general=False):
    """(a : f) for a single nonzero polynomial f."""
    ctx = a.ctx
    if a.is_zero:
        return IdealHandle.zero(ctx)
    if f.degree() == 0:
        return a
    if a.is_monomial and f.is_term() and not force_general:
        exp = next(iter(f.terms))
        exps = staircase.colon_exps(a.monomial_exps(), exp)
        return IdealHandle.from_min_exps(ctx, exps)
    meet = ideal_intersect(a, IdealHandle(ctx, [f]), force_general=force_general)
    return IdealHandle(ctx, [divide_exact(g, f) for g in meet.gens])


def ideal_colon(a, b, force_general=False):
    """(a : b), intersected generator-by-generator over b."""
    _need_same_ctx(a, b)
    if b.is_zero:
        return IdealHandle.unit(a.ctx)
    out = None
    for f in b.gens:
        c = _colon_single(a, f, force_general=force_general)
        out = c if out is None else ideal_intersect(out, c, force_general=force_general)
    return out


def ideal_saturate(a, b, force_general=False, max_steps=200):
    """a : b^infinity, by iterating the colon until the chain stabilizes."""
    _need_same_ctx(a, b)
    prev = a
    for _ in range(max_steps):
        nxt = ideal_colon(prev, b, force_general=force_general)
        if nxt.same(prev):
            return nxt
        prev = nxt
    raise ComputationLimitError("saturation did not stabilize")


def graded_piece_dim(a, e):
    """dim_k of the degree-e piece of a homogeneous ideal.

    Counted as the number of degree-e monomials divisible by a lead term
    of the reduced basis (brute-force enumeration; this is the oracle
    side of the dual-path check).
    """
    if e < 0:
        raise InputError("degree must be nonnegative")
    a.require_homogeneous()
    if a.is_zero:
        return 0
    return staircase.count_divisible(a.lead_exps(), a.ctx.nvars, e)


def krull_dim_quotient(a):
    """Krull dimension of ring/a via independent variable subsets.

    Returns -1 for the unit ideal (empty quotient).
    """
    n = a.ctx.nvars
    if a.is_zero:
        return n
    a.require_homogeneous()
    leads = a.lead_exps()
    if any(sum(e) == 0 for e in leads):
        return -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    for size in range(n, 0, -1):
        for subset in itertools.combinations(range(n), size):
            sub = frozenset(subset)
            if not any(s <= sub for s in supports):
                return size
    return 0
