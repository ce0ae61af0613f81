"""Analytic reference quantities: li, its inverse, Mertens-type sums, summation identities."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .prime_stats import DomainError, _neumaier_apply
from .quadrature import QuadratureError, integrate
from .sieve import ResidueClass, SieveConfig, SieveError, iter_prime_blocks

ABS_TOL = 1e-12
REL_TOL = 1e-10
MAX_DEPTH = 60


class SingularityError(DomainError):
    """li is evaluated at its pole t = 1."""


@dataclass(frozen=True)
class LiEvaluation:
    x: float
    value: float
    abs_error_bound: float

    def __float__(self):
        return self.value


def _inv_log(t):
    return 1.0 / np.log(t)


def _exp_over_u(u):
    return np.exp(u) / u


def _left_of_one(eps: float) -> tuple[float, float]:
    # integral over [0, 1 - eps]; the integrand vanishes at t = 0
    return integrate(_inv_log, 0.0, 1.0 - eps, ABS_TOL * 0.1, REL_TOL * 0.01, MAX_DEPTH)


def _right_of_one(eps: float, upper: float) -> tuple[float, float]:
    return integrate(_inv_log, 1.0 + eps, upper, ABS_TOL * 0.1, REL_TOL * 0.01, MAX_DEPTH)


def _principal_value(upper: float, eps0: float, levels: int = 9) -> tuple[float, float]:
    """PV of the integral of 1/log t over [0, upper], upper > 1.

    The excised integral I(eps) differs from the PV by an odd power series in
    eps (the 1/(t-1) part cancels exactly between the two sides), so the
    Richardson table eliminates eps, eps^3, eps^5, ... in turn.
    """
    table: list[list[float]] = []
    quad_err = 0.0
    for j in range(levels):
        eps = eps0 / 2**j
        lv, le = _left_of_one(eps)
        rv, re = _right_of_one(eps, upper)
        quad_err = max(quad_err, le + re)
        row = [lv + rv]
        for i in range(1, j + 1):
            factor = 2.0 ** (2 * i - 1)
            row.append((factor * row[i - 1] - table[j - 1][i - 1]) / (factor - 1.0))
        table.append(row)
    best = table[-1][-1]
    extrap_err = abs(best - table[-2][-2])
    return best, extrap_err + 4 * quad_err


@lru_cache(maxsize=1)
def _li_two() -> tuple[float, float]:
    return _principal_value(2.0, 0.25)


def li(x: float) -> LiEvaluation:
    """Logarithmic integral, principal value of the integral of dt/log t from 0 to x."""
    x = float(x)
    if x < 0 or math.isnan(x):
        raise DomainError(f"li is defined for x >= 0, got {x}")
    if x == 1.0:
        raise SingularityError("li has a logarithmic singularity at x = 1")
    if x == 0.0:
        return LiEvaluation(0.0, 0.0, 0.0)
    if x < 1.0:
        v, e = integrate(_inv_log, 0.0, x, ABS_TOL * 0.1, REL_TOL * 0.01, MAX_DEPTH)
        return LiEvaluation(x, v, e)
    if x < 2.0:
        v, e = _principal_value(x, min(0.25, (x - 1.0) / 2))
        return LiEvaluation(x, v, e)
    base, base_err = _li_two()
    if x == 2.0:
        return LiEvaluation(x, base, base_err)
    tail, tail_err = li_from_2_raw(x)
    return LiEvaluation(x, base + tail, base_err + tail_err)


def li_from_2_raw(x: float) -> tuple[float, float]:
    # substitute t = e^u to flatten the integrand over many decades
    return integrate(_exp_over_u, math.log(2.0), math.log(x), ABS_TOL, REL_TOL * 0.01, MAX_DEPTH)


def li_from_2(x: float) -> float:
    """Offset logarithmic integral, the integral of dt/log t from 2 to x."""
    if x < 2:
        return li(x).value - li(2.0).value
    return li_from_2_raw(float(x))[0]


def li_inverse(y: float, rel_tol: float = 1e-13, max_iter: int = 100) -> float:
    """The x > 2 with li(x) = y, by Newton steps guarded by a bisection bracket."""
    li2 = li(2.0).value
    if not y >= li2 or math.isinf(y):
        raise DomainError(f"li_inverse needs finite y >= li(2) = {li2:.12f}, got {y}")
    if y == li2:
        return 2.0
    lo, hi = 2.0, 4.0
    while li(hi).value < y:
        lo, hi = hi, hi * 4
    x = min(max(y * math.log(y) if y > 1 else 2.5, lo), hi)
    for _ in range(max_iter):
        fx = li(x).value - y
        if fx > 0:
            hi = x
        else:
            lo = x
        step = fx * math.log(x)
        nxt = x - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= rel_tol * x:
            return nxt
        x = nxt
    raise QuadratureError(f"li_inverse did not converge for y={y}", x, abs(hi - lo))


# -- prime sums ---------------------------------------------------------------

def stieltjes_sums(f, bounds, residue_class: ResidueClass, **sieve_kwargs) -> list[float]:
    """``sum f(p)`` over class primes ``p <= b`` for each bound, in one pass.

    ``f`` is called on numpy arrays of primes (as float64) and may return a
    scalar, which is broadcast.
    """
    bounds = [int(b) for b in bounds]
    order = sorted(range(len(bounds)), key=lambda i: bounds[i])
    out = [0.0] * len(bounds)
    limit = max(bounds) if bounds else 0
    if limit < 2:
        return out
    s = c = 0.0
    pos = 0
    while pos < len(order) and bounds[order[pos]] < 2:
        pos += 1
    cache_dir = sieve_kwargs.pop("cache_dir", None)
    for block in iter_prime_blocks(SieveConfig(limit, **sieve_kwargs), cache_dir=cache_dir):
        arr = residue_class.select(block)
        vals = np.broadcast_to(np.asarray(f(arr.astype(np.float64)), dtype=np.float64), arr.shape)
        vals = np.ascontiguousarray(vals)
        start = 0
        while pos < len(order) and bounds[order[pos]] < int(block[-1]):
            cut = int(np.searchsorted(arr, bounds[order[pos]], side="right"))
            s, c = _neumaier_apply(vals[start:cut], s, c)
            start = cut
            out[order[pos]] = s + c
            pos += 1
        s, c = _neumaier_apply(vals[start:], s, c)
    for i in order[pos:]:
        out[i] = s + c
    return out


def stieltjes_prime_sum(f, x: int, residue_class: ResidueClass, **sieve_kwargs) -> float:
    """The Stieltjes integral of f against the class prime-counting function, i.e. sum f(p)."""
    return stieltjes_sums(f, [x], residue_class, **sieve_kwargs)[0]


def _reciprocal(t):
    return 1.0 / t


def mertens_ap_sum(x: int, residue_class: ResidueClass, **sieve_kwargs) -> float:
    """Compensated sum of 1/p over class primes p <= x."""
    if x < 2:
        raise DomainError("mertens_ap_sum needs x >= 2")
    return stieltjes_prime_sum(_reciprocal, x, residue_class, **sieve_kwargs)


@dataclass
class MertensFit:
    residue_class: ResidueClass
    samples: list[tuple[int, float]]
    B_estimate: float
    residual_bound: float
    deviations: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "m": self.residue_class.modulus,
            "n": self.residue_class.residue,
            "samples": [[x, repr(s)] for x, s in self.samples],
            "B_estimate": repr(self.B_estimate),
            "residual_bound": repr(self.residual_bound),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def estimate_mertens_B(residue_class: ResidueClass, x_grid, **sieve_kwargs) -> MertensFit:
    """Mean of ``sum_{p<=x} 1/p - loglog(x)/phi(m)`` over the grid, with its max deviation."""
    grid = [int(x) for x in x_grid]
    if len(grid) < 4:
        raise SieveError("estimate_mertens_B needs at least 4 grid points")
    if grid[0] < 1000:
        raise SieveError("grid points must be >= 1000")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise SieveError("grid must be strictly ascending")
    sums = stieltjes_sums(_reciprocal, grid, residue_class, **sieve_kwargs)
    phi = residue_class.totient
    resid = [s - math.log(math.log(x)) / phi for x, s in zip(grid, sums)]
    mean = math.fsum(resid) / len(resid)
    devs = [r - mean for r in resid]
    return MertensFit(residue_class, list(zip(grid, sums)), mean, max(abs(d) for d in devs), devs)


# -- Abel summation -----------------------------------------------------------------

def abel_summation_check(a, f, fprime, x: float, y: float, abs_tol: float = 1e-13,
                         rel_tol: float = 1e-12) -> float:
    """``|sum_{x<n<=y} a(n) f(n) - (A(y) f(y) - A(x) f(x) - int_x^y A f')|``.

    ``a`` holds the arithmetic function on 1..N (``a[0]`` is a(1)) with
    ``N >= floor(y)``; ``f`` and ``fprime`` accept numpy arrays.  The integral
    is split where the step function A jumps and each constant piece is
    integrated by adaptive quadrature.
    """
    if not x < y:
        raise DomainError("abel_summation_check needs x < y")
    a = np.asarray(a, dtype=np.float64)
    top = math.floor(y)
    if a.size < top:
        raise DomainError(f"a must cover 1..{top}")
    n = np.arange(1, top + 1)
    A = np.concatenate([[0.0], np.cumsum(a[:top])])  # A[j] = sum_{i<=j} a(i)

    def A_at(t):
        j = min(max(math.floor(t), 0), top)
        return float(A[j])

    inside = (n > x) & (n <= y)
    pts = n[inside].astype(np.float64)
    lhs_terms = a[:top][inside] * np.broadcast_to(f(pts), pts.shape)
    lhs = _neumaier_apply(np.ascontiguousarray(lhs_terms, dtype=np.float64), 0.0, 0.0)
    lhs = lhs[0] + lhs[1]

    jumps = [float(v) for v in n[inside & (a[:top] != 0)]]
    edges = [float(x)] + [v for v in jumps if x < v < y] + [float(y)]
    pieces = []
    for lo, hi in zip(edges, edges[1:]):
        level = A_at(lo)
        if level == 0.0 or hi == lo:
            continue
        val, _ = integrate(fprime, lo, hi, abs_tol, rel_tol)
        pieces.append(level * val)
    integral = _neumaier_apply(np.array(pieces, dtype=np.float64), 0.0, 0.0)
    integral = integral[0] + integral[1]
    fy = _eval_at(f, y) if A_at(y) else 0.0
    fx = _eval_at(f, x) if A_at(x) else 0.0
    rhs = A_at(y) * fy - A_at(x) * fx - integral
    return abs(lhs - rhs)


def _eval_at(f, t: float) -> float:
    return float(np.broadcast_to(f(np.array([float(t)])), (1,))[0])
