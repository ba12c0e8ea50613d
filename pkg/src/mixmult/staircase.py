"""Lattice combinatorics of monomial ideals.

Exponent tuples stand for monomials.  Provides minimal generating sets,
products/powers, degree-by-degree standard monomial counts (the staircase
route), and brute-force enumeration counts (the oracle route used by the
Groebner path).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

# candidate sets below this size are minimalized in pure python
_NP_THRESHOLD = 48


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def exp_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _minimalize_small(exps):
    out = []
    for m in sorted(set(exps), key=lambda e: (sum(e), e)):
        if not any(divides(k, m) for k in out):
            out.append(m)
    return tuple(out)


def _minimalize_np(exps):
    arr = np.unique(np.array(sorted(set(exps)), dtype=np.int64), axis=0)
    deg = arr.sum(axis=1)
    kept = []
    kept_arr = None
    for d in np.unique(deg):
        batch = arr[deg == d]
        if kept_arr is not None and len(kept_arr):
            # same-degree distinct monomials never divide each other
            mask = np.ones(len(batch), dtype=bool)
            step = max(1, 20_000_000 // (len(kept_arr) * batch.shape[1] + 1))
            for lo in range(0, len(batch), step):
                chunk = batch[lo : lo + step]
                hit = (chunk[:, None, :] >= kept_arr[None, :, :]).all(2).any(1)
                mask[lo : lo + len(chunk)] = ~hit
            batch = batch[mask]
        if len(batch):
            kept.append(batch)
            kept_arr = np.concatenate(kept)
    if not kept:
        return ()
    rows = [tuple(int(x) for x in row) for row in np.concatenate(kept)]
    return tuple(sorted(rows, key=lambda e: (sum(e), e)))


def minimalize(exps):
    """Unique minimal generating set of the monomial ideal, sorted."""
    exps = list(exps)
    if len(exps) <= _NP_THRESHOLD:
        return _minimalize_small(exps)
    return _minimalize_np(exps)


def product_exps(a_exps, b_exps):
    """Minimal generators of the product of two monomial ideals."""
    if not a_exps or not b_exps:
        return ()
    if len(a_exps) * len(b_exps) <= _NP_THRESHOLD:
        return minimalize(exp_mul(a, b) for a in a_exps for b in b_exps)
    a = np.array(a_exps, dtype=np.int64)
    b = np.array(b_exps, dtype=np.int64)
    sums = (a[:, None, :] + b[None, :, :]).reshape(-1, a.shape[1])
    return _minimalize_np(map(tuple, sums))


def power_exps(exps, n):
    """Minimal generators of the n-th power (n >= 0)."""
    nv = len(exps[0]) if exps else 1
    out = ((0,) * nv,)
    for _ in range(n):
        out = product_exps(out, exps)
    return out


def intersect_exps(a_exps, b_exps):
    """Minimal generators of the intersection (pairwise lcm)."""
    return minimalize(exp_lcm(a, b) for a in a_exps for b in b_exps)


def colon_exps(a_exps, f):
    """Minimal generators of (a : f) for a single monomial f."""
    return minimalize(
        tuple(max(m[i] - f[i], 0) for i in range(len(f))) for m in a_exps
    )


def simplex_count(nvars, e):
    """Number of degree-e monomials in nvars variables."""
    if e < 0:
        return 0
    return math.comb(e + nvars - 1, nvars - 1)


# ---------------------------------------------------------------------------
# standard monomial counting (staircase route)
# ---------------------------------------------------------------------------


def std_counts(gens, nvars, upto):
    """Per-degree counts of monomials NOT in the ideal, degrees 0..upto.

    Works by slicing on the first variable: the slice ideal is constant
    between consecutive distinct first-exponents, so each slice contributes
    a shifted window of a lower-dimensional count, accumulated via prefix
    sums.  Generators need not be minimal.
    """
    gens = list(set(gens))
    if any(sum(g) == 0 for g in gens):
        return [0] * (upto + 1)
    if not gens:
        return [simplex_count(nvars, e) for e in range(upto + 1)]
    if nvars == 1:
        g = min(g[0] for g in gens)
        return [1 if e < g else 0 for e in range(upto + 1)]

    firsts = sorted({g[0] for g in gens})
    out = [0] * (upto + 1)
    # ranges of the first exponent on which the slice ideal is constant
    bounds = []
    if firsts[0] > 0:
        bounds.append((0, firsts[0] - 1, None))
    for j, v in enumerate(firsts):
        hi = firsts[j + 1] - 1 if j + 1 < len(firsts) else upto
        if v <= upto:
            bounds.append((v, min(hi, upto), v))
    for lo, hi, cutoff in bounds:
        if lo > upto:
            continue
        if cutoff is None:
            sub = [simplex_count(nvars - 1, f) for f in range(upto - lo + 1)]
        else:
            tails = {g[1:] for g in gens if g[0] <= cutoff}
            sub = std_counts(tails, nvars - 1, upto - lo)
        prefix = [0] * (len(sub) + 1)
        for i, v in enumerate(sub):
            prefix[i + 1] = prefix[i] + v
        for e in range(lo, upto + 1):
            top = min(hi, e)
            # sum of sub[e-a] for a in [lo, top]
            out[e] += prefix[e - lo + 1] - prefix[e - top]
    return out


def total_std_count(gens, nvars, hard_cap=100_000):
    """Total number of standard monomials; requires a zero-dimensional ideal."""
    bound = 16
    while True:
        counts = std_counts(gens, nvars, bound)
        if 0 in counts:
            # once a graded piece fills up, all higher ones do
            return sum(counts[: counts.index(0)])
        bound *= 2
        if bound > hard_cap:
            raise OverflowError("ideal does not look zero-dimensional")


# ---------------------------------------------------------------------------
# enumeration counting (Groebner / oracle route)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def degree_monomials(nvars, e):
    """All exponent vectors of total degree e, as an int32 array (cached)."""
    if nvars == 1:
        return np.array([[e]], dtype=np.int32)
    blocks = []
    for a in range(e + 1):
        sub = degree_monomials(nvars - 1, e - a)
        col = np.full((len(sub), 1), a, dtype=np.int32)
        blocks.append(np.hstack([col, sub]))
    return np.vstack(blocks)


def count_divisible(gen_exps, nvars, e):
    """How many degree-e monomials are divisible by some generator."""
    if e < 0 or not gen_exps:
        return 0
    gens = np.array(sorted(set(gen_exps)), dtype=np.int32)
    mons = degree_monomials(nvars, e)
    hits = 0
    step = max(1, 20_000_000 // (len(gens) * nvars + 1))
    for lo in range(0, len(mons), step):
        chunk = mons[lo : lo + step]
        hits += int((chunk[:, None, :] >= gens[None, :, :]).all(2).any(1).sum())
    return hits
