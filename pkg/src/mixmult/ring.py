"""Exact polynomial arithmetic over GF(p) (or QQ) with monomial orders.

Polynomials are sparse maps from exponent tuples to nonzero coefficients,
bound to a RingContext that fixes the variables, the characteristic and a
default monomial order.  Everything is immutable after construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import HomogeneityError, InputError, StratumError

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state):
    """One splitmix64 step; returns (next_state, output)."""
    state = (state + _GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, (z ^ (z >> 31)) & MASK64


def derive_seed(seed, *salts):
    """Deterministically mix extra salts into a seed (for per-step streams)."""
    s = seed & MASK64
    for salt in salts:
        s, out = splitmix64(s ^ ((salt * _GOLDEN) & MASK64))
        s = out
    return s


class RandomStream:
    """Deterministic 64-bit stream; the only randomness source in the package."""

    def __init__(self, seed):
        self._state = seed & MASK64

    def next_u64(self):
        self._state, out = splitmix64(self._state)
        return out

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here)."""
        if hi < lo:
            raise InputError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        if not seq:
            raise InputError("choice from empty sequence")
        return seq[self.next_u64() % len(seq)]

    def shuffle(self, items):
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.next_u64() % (i + 1)
            items[i], items[j] = items[j], items[i]
        return items


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order on exponent vectors.

    kind: 'grevlex', 'lex' or 'elim'; for 'elim', the first `block`
    variables are eliminated (any monomial touching them is larger than
    any monomial that avoids them, comparing grevlex within each block).
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise InputError(f"unknown order kind {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise InputError("elimination order needs block >= 1")

    def cache_key(self):
        return (self.kind, self.block)


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


_KEY_CACHE = {}


def order_key(order, exps):
    """Sort key: bigger key == bigger monomial under `order` (memoized)."""
    cache = _KEY_CACHE.setdefault(order.cache_key(), {})
    key = cache.get(exps)
    if key is None:
        if order.kind == "grevlex":
            key = _grevlex_key(exps)
        elif order.kind == "lex":
            key = tuple(exps)
        else:
            k = order.block
            key = (_grevlex_key(exps[:k]), _grevlex_key(exps[k:]))
        cache[exps] = key
        if len(cache) > 1 << 20:
            cache.clear()
    return key


def compare(order, a, b):
    """Three-way comparison of exponent vectors; -1 / 0 / +1."""
    if len(a) != len(b):
        raise InputError("exponent vectors of different arity")
    ka, kb = order_key(order, a), order_key(order, b)
    return (ka > kb) - (ka < kb)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(block):
    return MonomialOrder("elim", block)


@dataclass(frozen=True)
class RingContext:
    """Ambient polynomial ring: named variables, characteristic, default order."""

    variables: tuple
    p: int = 32003
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        if not isinstance(self.variables, tuple):
            object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) < 1:
            raise InputError("need at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("variable names must be unique")
        if self.p != 0 and not is_prime(self.p):
            raise InputError(f"characteristic {self.p} is not prime (use 0 for QQ)")

    @property
    def nvars(self):
        return len(self.variables)

    def var_index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    # -- coefficient field ------------------------------------------------
    def coeff(self, v):
        if self.p:
            return int(v) % self.p
        return v if isinstance(v, Fraction) else Fraction(v)

    def cadd(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def cmul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def cneg(self, a):
        return (-a) % self.p if self.p else -a

    def cinv(self, a):
        if not a:
            raise InputError("division by zero in the coefficient field")
        return pow(a, -1, self.p) if self.p else 1 / a

    def zero_poly(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: 1})

    def variable(self, name):
        exp = [0] * self.nvars
        exp[self.var_index(name)] = 1
        return Polynomial(self, {tuple(exp): 1})

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff})


class Polynomial:
    """Immutable sparse polynomial over a RingContext."""

    __slots__ = ("ctx", "terms", "_hash", "_lead")

    def __init__(self, ctx, terms):
        clean = {}
        n = ctx.nvars
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise InputError(f"bad exponent vector {exp} for arity {n}")
            c = ctx.coeff(c)
            if c:
                clean[exp] = c
        self.ctx = ctx
        self.terms = clean
        self._hash = None
        self._lead = None

    # -- basic structure ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Total degree of a homogeneous polynomial (None for zero)."""
        degs = {sum(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise HomogeneityError(f"polynomial {self} is not homogeneous")
        return degs.pop()

    def is_term(self):
        return len(self.terms) == 1

    def leading(self, order=None):
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        order = order or self.ctx.order
        key = order.cache_key()
        if self._lead is None:
            self._lead = {}
        exp = self._lead.get(key)
        if exp is None:
            exp = max(self.terms, key=lambda e: order_key(order, e))
            self._lead[key] = exp
        return exp, self.terms[exp]

    def sort_key(self, order=None):
        order = order or self.ctx.order
        return tuple(
            sorted(((order_key(order, e), e) for e in self.terms), reverse=True)
        )

    # -- arithmetic ---------------------------------------------------------
    def _need_ctx(self, other):
        if self.ctx != other.ctx:
            raise InputError("polynomials from different ring contexts")

    def __add__(self, other):
        self._need_ctx(other)
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = ctx.cadd(out.get(e, 0 if ctx.p else Fraction(0)), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(ctx, out)

    def __neg__(self):
        ctx = self.ctx
        return Polynomial(ctx, {e: ctx.cneg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._need_ctx(other)
            ctx = self.ctx
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = ctx.cadd(out.get(e, 0 if ctx.p else Fraction(0)), ctx.cmul(c1, c2))
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return Polynomial(ctx, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative polynomial power")
        out = self.ctx.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        ctx = self.ctx
        c = ctx.coeff(c)
        if not c:
            return ctx.zero_poly()
        return Polynomial(ctx, {e: ctx.cmul(v, c) for e, v in self.terms.items()})

    def mul_term(self, exp, coeff=1):
        ctx = self.ctx
        coeff = ctx.coeff(coeff)
        if not coeff:
            return ctx.zero_poly()
        return Polynomial(
            ctx,
            {
                tuple(a + b for a, b in zip(e, exp)): ctx.cmul(c, coeff)
                for e, c in self.terms.items()
            },
        )

    def monic(self, order=None):
        if not self.terms:
            return self
        _, lc = self.leading(order)
        return self.scale(self.ctx.cinv(lc))

    def __repr__(self):
        return f"Polynomial({poly_to_text(self)!r})"

    def __str__(self):
        return poly_to_text(self)


def poly_arith(f, g, op):
    """Dispatch table for the four basic operations (see tests)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise InputError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# text syntax: terms joined by +/-, term = coefficient '*' variable powers,
# e.g.  3*x^2*y - y^3
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<caret>\^)|(?P<star>\*)|(?P<plus>\+)|(?P<minus>-)"
)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"bad character {text[pos]!r} at position {pos}")
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return out


def parse_poly(ctx, text):
    """Parse the generator text syntax into a Polynomial."""
    toks = _tokenize(text)
    if not toks:
        raise InputError("empty polynomial text")
    terms = {}
    i = 0
    n = ctx.nvars
    first = True
    while i < len(toks):
        sign = 1
        while i < len(toks) and toks[i][0] in ("plus", "minus"):
            if toks[i][0] == "minus":
                sign = -sign
            i += 1
            first = False
        if i >= len(toks):
            raise InputError("dangling sign at end of polynomial")
        if not first and toks[i][2] == toks[0][2]:
            pass
        coeff = Fraction(1)
        exps = [0] * n
        saw_factor = False
        while True:
            kind, val, pos = toks[i]
            if kind == "num":
                if "/" in val:
                    a, b = val.split("/")
                    coeff *= Fraction(int(a), int(b))
                else:
                    coeff *= int(val)
            elif kind == "name":
                idx = ctx.var_index(val)
                e = 1
                if i + 1 < len(toks) and toks[i + 1][0] == "caret":
                    if i + 2 >= len(toks) or toks[i + 2][0] != "num":
                        raise InputError(f"missing exponent at position {pos}")
                    e = int(toks[i + 2][1])
                    i += 2
                exps[idx] += e
            else:
                raise InputError(f"unexpected token {val!r} at position {pos}")
            saw_factor = True
            if i + 1 < len(toks) and toks[i + 1][0] == "star":
                i += 2
                if i >= len(toks):
                    raise InputError("dangling '*' at end of polynomial")
                continue
            break
        if not saw_factor:
            raise InputError("empty term")
        if ctx.p:
            if coeff.denominator != 1:
                num = coeff.numerator % ctx.p
                den = pow(coeff.denominator, -1, ctx.p)
                c = num * den % ctx.p
            else:
                c = coeff.numerator % ctx.p
            c = (sign * c) % ctx.p
        else:
            c = sign * coeff
        key = tuple(exps)
        prev = terms.get(key, 0)
        terms[key] = ctx.cadd(ctx.coeff(prev), ctx.coeff(c))
        i += 1
        first = False
    return Polynomial(ctx, terms)


def _coeff_repr(ctx, c):
    """Symmetric representative for display: 32002 prints as -1 mod 32003."""
    if ctx.p:
        return c - ctx.p if c > ctx.p // 2 else c
    return c


def _monomial_text(ctx, exp):
    parts = []
    for name, e in zip(ctx.variables, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_text(f):
    """Canonical text: terms sorted descending by the context's default order."""
    if not f.terms:
        return "0"
    ctx = f.ctx
    exps = sorted(f.terms, key=lambda e: order_key(ctx.order, e), reverse=True)
    out = []
    for i, e in enumerate(exps):
        c = _coeff_repr(ctx, f.terms[e])
        neg = c < 0
        mag = -c if neg else c
        mono = _monomial_text(ctx, e)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def random_homogeneous_combo(gens, degree, seed):
    """Random nonzero-coefficient combination of the degree-`degree` generators.

    Pure function of (gens, degree, seed): coefficients come from a
    splitmix64 stream seeded with `seed`, drawn uniformly from the nonzero
    field elements, one per generator in list order.
    """
    stratum = [
        g
        for g in gens
        if g and g.is_homogeneous() and g.homogeneous_degree() == degree
    ]
    if not stratum:
        raise StratumError(f"no generators of degree {degree}")
    ctx = stratum[0].ctx
    rng = RandomStream(seed)
    out = ctx.zero_poly()
    for g in stratum:
        if ctx.p:
            c = 1 + rng.next_u64() % (ctx.p - 1)
        else:
            c = 1 + rng.next_u64() % 65521
        out = out + g.scale(c)
    return out
