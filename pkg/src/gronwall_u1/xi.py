"""Boundary roots xi(p, alpha) of  x**lam = x + log p.

For a prime power p**alpha exactly dividing N, multiplying N by p raises
G(N) precisely when log N > xi(p, alpha).  The solver brackets the root with
the a-priori bounds from :func:`xi_bounds`, bisects on a strictly increasing
working function and finishes with a few guarded Newton steps.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import mpmath

from .errors import DomainError, NumericError, RangeError

_INT_POW_CAP = 2**62


@dataclass(frozen=True)
class ToleranceConfig:
    cmp_guard: float = 1e-9  # AMBIGUOUS band on the log N axis
    solver_tol: float = 1e-13
    max_bisect: int = 200

    def __post_init__(self):
        if self.cmp_guard <= 0 or self.solver_tol <= 0 or self.max_bisect <= 0:
            raise ValueError("tolerances must be positive")
        if self.cmp_guard < self.solver_tol:
            raise ValueError("cmp_guard must be >= solver_tol")

    def as_dict(self) -> dict:
        return {"cmp_guard": self.cmp_guard, "solver_tol": self.solver_tol, "max_bisect": self.max_bisect}


@dataclass(frozen=True)
class XiValue:
    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int


def geometric_sum(p: int, alpha: int) -> float:
    """p + p**2 + ... + p**(alpha+1), as a float."""
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    if p ** (alpha + 2) <= _INT_POW_CAP:
        return float((p ** (alpha + 2) - p) // (p - 1))
    return p * math.expm1((alpha + 1) * math.log(p)) / (p - 1)


def lam(p: int, alpha: int) -> float:
    """Exponent (p**(alpha+2) - 1) / (p**(alpha+2) - p) = 1 + 1/(p + ... + p**(alpha+1))."""
    if p < 2:
        raise DomainError(f"p must be prime, got {p}")
    s = geometric_sum(p, alpha)
    if not math.isfinite(s):
        raise RangeError(f"p**(alpha+2) overflows for p={p}, alpha={alpha}")
    return 1.0 + 1.0 / s


def xi_bounds(p: int, alpha: int) -> tuple[float, float]:
    """Certified open bracket around xi(p, alpha)."""
    if alpha == 0:
        return p - math.log(p), float(p)
    base = float(p) ** (alpha + 1) / (alpha + 1)
    return base, 3.0 * base


def f_alpha0(x: float, p: int) -> float:
    """log x / p - log(1 + log p / x); increasing, zero at xi(p, 0)."""
    return math.log(x) / p - math.log1p(math.log(p) / x)


def g_scaled(t: float, p: int, alpha: int) -> float:
    """Working function in the scaled variable t = (alpha+1) x / p**(alpha+1).

    Increasing in t, and negative at t=1 / positive at t=3 for every
    p >= 2, alpha >= 1.
    """
    a1 = alpha + 1
    logp = math.log(p)
    pa1 = float(p) ** a1
    s = geometric_sum(p, alpha)  # = p**(alpha+1) * w
    return math.log(t) - math.log(a1) + a1 * logp - s * math.log1p(a1 * logp / (t * pa1))


def power_form_residual(x: float, p: int, alpha: int) -> float:
    """x**lam - x - log p written as x*expm1((lam-1) log x) - log p."""
    return x * math.expm1(math.log(x) / geometric_sum(p, alpha)) - math.log(p)


def _bisect(fn, lo: float, hi: float, width, max_iter: int) -> tuple[float, float, int]:
    flo, fhi = fn(lo), fn(hi)
    if not (flo < 0 < fhi):
        raise NumericError(f"bracket [{lo}, {hi}] has no sign change: f={flo}, {fhi}")
    it = 0
    while hi - lo > width(0.5 * (lo + hi)):
        if it >= max_iter:
            raise NumericError(f"bisection did not converge in {max_iter} steps")
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if fn(mid) < 0:
            lo = mid
        else:
            hi = mid
        it += 1
    return lo, hi, it


@dataclass
class XiTable:
    """Memo of solved roots keyed by (p, alpha)."""

    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)
    entries: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def get(self, p: int, alpha: int) -> XiValue:
        key = (p, alpha)
        hit = self.entries.get(key)
        if hit is None:
            hit = solve_xi(p, alpha, self.tolerance)
            with self._lock:
                hit = self.entries.setdefault(key, hit)
        return hit

    def __call__(self, p: int, alpha: int) -> float:
        return self.get(p, alpha).value


def solve_xi(p: int, alpha: int, tol: ToleranceConfig | None = None) -> XiValue:
    tol = tol or ToleranceConfig()
    if p < 2 or alpha < 0:
        raise DomainError(f"xi needs p >= 2 and alpha >= 0, got ({p}, {alpha})")
    x_lo, x_hi = xi_bounds(p, alpha)
    rel = tol.solver_tol
    if alpha == 0:
        lo, hi, it = _bisect(lambda x: f_alpha0(x, p), x_lo, x_hi,
                             lambda x: rel * max(1.0, x), tol.max_bisect)
        x = 0.5 * (lo + hi)
    else:
        scale = x_lo  # x = t * scale
        lo, hi, it = _bisect(lambda t: g_scaled(t, p, alpha), 1.0, 3.0,
                             lambda t: rel * max(1.0 / scale, t), tol.max_bisect)
        x = 0.5 * (lo + hi) * scale
        lo, hi = lo * scale, hi * scale

    s = geometric_sum(p, alpha)
    logp = math.log(p)
    for _ in range(3):
        e = math.expm1(math.log(x) / s)
        phi = x * e - logp
        dphi = (1.0 + 1.0 / s) * (1.0 + e) - 1.0
        if phi == 0.0 or dphi <= 0.0:
            break
        nxt = x - phi / dphi
        if not (lo <= nxt <= hi) or nxt == x:
            break
        x = nxt
        it += 1

    residual = abs(power_form_residual(x, p, alpha)) / logp
    if not (x_lo < x < x_hi):
        raise NumericError(f"xi({p},{alpha}) = {x} escaped its bracket ({x_lo}, {x_hi})")
    if residual > tol.solver_tol:
        raise NumericError(f"xi({p},{alpha}) residual {residual:.3e} above {tol.solver_tol:.1e}")
    return XiValue(value=x, bracket_lo=x_lo, bracket_hi=x_hi, residual=residual, iterations=it)


def xi_root(table: XiTable, p: int, alpha: int) -> float:
    return table(p, alpha)


def xi_root_power_form(p: int, alpha: int, tol: ToleranceConfig | None = None) -> float:
    """Independent solve of x*(x**(lam-1) - 1) = log p by plain bisection."""
    tol = tol or ToleranceConfig()
    lo, hi = xi_bounds(p, alpha)
    lo, hi, _ = _bisect(lambda x: power_form_residual(x, p, alpha), lo, hi,
                        lambda x: 0.25 * tol.solver_tol * x, tol.max_bisect)
    return 0.5 * (lo + hi)


def xi_precise(p: int, alpha: int, dps: int = 40) -> mpmath.mpf:
    """High-precision root, seeded from the float solve; used to settle guard-band hits."""
    seed = solve_xi(p, alpha).value
    with mpmath.workdps(dps):
        pm = mpmath.mpf(p)
        s = pm * (pm ** (alpha + 1) - 1) / (pm - 1)
        logp = mpmath.log(pm)
        return mpmath.findroot(lambda x: mpmath.log(x) - s * mpmath.log1p(logp / x), mpmath.mpf(seed))


def tau_star(a: float, b: float) -> float:
    """Positive root of tau = a + b*sqrt(tau)."""
    if a <= 0:
        raise DomainError(f"tau_star needs a > 0, got {a}")
    if b < 0:
        raise DomainError(f"tau_star needs b >= 0, got {b}")
    return a + 0.5 * b * (b + math.sqrt(b * b + 4.0 * a))
