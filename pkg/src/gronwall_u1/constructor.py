"""Construction of the locally G-extremal numbers V_k and the U1 subsequence.

Starting from the primorial T(p_k), exponents of p_j (j < k) are raised to the
largest beta with xi(p_j, beta-1) + log p_j <= log Y until the exponent vector
is a fixed point.  Indices whose boundary log Y then sits in a junction gap
get one extra factor (repeated until the set of such indices is stable).
V_k belongs to U1 exactly when two extra inequalities at p_k and p_{k+1} hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, NumericError
from .gronwall import Factorization, GronwallValue, divide_prime, gronwall_g, log_n, multiply_prime, scientific, to_decimal_string
from .improvability import TriState, Verdict, both, classify, div_improves, is_u1, mult_improves, negate
from .primes import PrimeTable, log_primorial, nth_prime
from .xi import XiTable, tau_star

FIXED_POINT_CAP = 64
TABLE1_KMAX = 101


@dataclass
class ConstructionTrace:
    k: int
    y_iterates: list[tuple[int, tuple[int, ...], float]] = field(default_factory=list)
    s0: int = 0
    e_sets: list[tuple[frozenset[int], tuple[int, ...]]] = field(default_factory=list)
    s_star: int = 0
    v_k: Factorization | None = None
    log_v: float = math.nan
    c_k: float = math.nan
    filter: TriState | None = None
    g_value: GronwallValue | None = None

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.v_k.exponents


def initial_y(k: int, table: PrimeTable) -> Factorization:
    """Primorial T(p_k) = p_1 * ... * p_k."""
    if k < 4:
        raise DomainError("the construction needs k >= 4 (log T(p_k) >= log 210)")
    nth_prime(table, k)
    return Factorization(tuple((p, 1) for p in table.primes[:k]))


def step_exponents(log_y: float, k: int, xi: XiTable, table: PrimeTable,
                   start: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """beta_j = max{beta >= 1 : xi(p_j, beta-1) + log p_j <= log_y} for j < k, beta_k = 1.

    The floor of 1 applies even when beta = 1 itself fails: every p_j <= p_k
    already divides the primorial and is never removed.
    """
    out = []
    for j in range(k - 1):
        p = table.primes[j]
        b = start[j] if start else 1
        logp = math.log(p)
        while xi(p, b) + logp <= log_y:
            b += 1
        out.append(b)
    out.append(1)
    return tuple(out)


def _log_of(exps, table: PrimeTable) -> float:
    return math.fsum(a * math.log(p) for p, a in zip(table.primes, exps))


def fixed_point_y(k: int, xi: XiTable, table: PrimeTable, cap: int = FIXED_POINT_CAP):
    """Iterate the exponent map from T(p_k) until it repeats.

    Returns (Y, s0, iterates) with iterates = [(s, exponents, log Y^(s)), ...].
    """
    y0 = initial_y(k, table)
    exps = y0.exponents
    log_y = log_primorial(table, k)
    iterates = [(0, exps, log_y)]
    for s in range(1, cap + 1):
        nxt = step_exponents(log_y, k, xi, table, start=exps)
        if nxt == exps:
            return Factorization.from_exponents(table.primes, exps), s - 1, iterates
        exps = nxt
        log_y = _log_of(exps, table)
        iterates.append((s, exps, log_y))
    raise NumericError(f"exponent fixed point for k={k} not reached within {cap} iterations")


def junction_correction(y: Factorization, k: int, xi: XiTable):
    """Bump exponents of indices whose log V overshoots xi(p_j, beta_j).

    Returns (V, e_sets, s_star), e_sets = [(E_s, exponents of V^(s)), ...].
    """
    primes = y.primes
    beta = y.exponents
    over = lambda lv: frozenset(j for j in range(k - 1) if lv > xi(primes[j], beta[j]))
    lv = log_n(y)
    e_prev = over(lv)
    e_sets = [(e_prev, beta)]
    if not e_prev:
        return y, e_sets, 0
    for s in range(1, k + 1):
        alpha = tuple(b + 1 if j in e_prev else b for j, b in enumerate(beta))
        lv = math.fsum(a * math.log(p) for p, a in zip(primes, alpha))
        e_cur = over(lv)
        if not e_prev <= e_cur:
            raise NumericError(f"k={k}: correction set shrank from {sorted(e_prev)} to {sorted(e_cur)}")
        for j in e_prev:
            # already bumped once; a second overshoot would need beta_j + 2
            if lv > xi(primes[j], beta[j] + 1):
                raise NumericError(f"k={k}: index {j + 1} would be bumped twice")
        e_sets.append((e_cur, alpha))
        if e_cur == e_prev:
            return Factorization.from_exponents(primes, alpha), e_sets, s
        e_prev = e_cur
    raise NumericError(f"k={k}: junction correction did not stabilize within {k} steps")


def local_conditions(v: Factorization, k: int, xi: XiTable, table: PrimeTable) -> list[tuple[int, TriState]]:
    """Both sides of xi(p_j, a_j - 1) + log p_j <= log V <= xi(p_j, a_j) for j < k.

    Returns one (j, TriState) per j, the conjunction of its two sides.
    """
    lv = log_n(v)
    guard = xi.tolerance.cmp_guard
    out = []
    for j in range(1, k):
        p = table.primes[j - 1]
        a = v.exponent(p)
        if a < 1:
            out.append((j, TriState(Verdict.FALSE, -math.inf, guard)))
            continue
        left = classify(lv - xi(p, a - 1) - math.log(p), guard)
        right = classify(xi(p, a) - lv, guard)
        out.append((j, both(left, right)))
    return out


def prop2_filter(trace: ConstructionTrace, xi: XiTable, table: PrimeTable) -> TriState:
    """xi(p_k, 0) + log p_k <= log V_k <= xi(p_{k+1}, 0)."""
    k, lv = trace.k, trace.log_v
    pk, pk1 = nth_prime(table, k), nth_prime(table, k + 1)
    lower = negate(div_improves(trace.v_k, pk, xi, lv))
    upper = negate(mult_improves(trace.v_k, pk1, xi, lv))
    return both(lower, upper)


def construct_vk(k: int, xi: XiTable, table: PrimeTable) -> ConstructionTrace:
    nth_prime(table, k + 1)
    y, s0, iterates = fixed_point_y(k, xi, table)
    v, e_sets, s_star = junction_correction(y, k, xi)
    bad = [(j, t) for j, t in local_conditions(v, k, xi, table) if t.verdict is not Verdict.TRUE]
    if any(t.verdict is Verdict.FALSE for _, t in bad):
        raise NumericError(f"V_{k} violates its defining inequalities at {[j for j, _ in bad]}")
    lv = log_n(v)
    pk = nth_prime(table, k)
    trace = ConstructionTrace(
        k=k, y_iterates=iterates, s0=s0, e_sets=e_sets, s_star=s_star, v_k=v, log_v=lv,
        c_k=(lv - log_primorial(table, k)) / math.sqrt(pk), g_value=gronwall_g(v),
    )
    f = prop2_filter(trace, xi, table)
    if bad:
        # a guard-band hit in the defining inequalities taints the verdict
        f = TriState(Verdict.AMBIGUOUS, min(f.margin, *(t.margin for _, t in bad)), f.guard)
    trace.filter = f
    return trace


def y_bound(k: int, table: PrimeTable) -> float:
    """Upper bound theta(p_k) + 2 + 2 sqrt(1 + theta(p_k)) on every log Y^(s)."""
    return tau_star(log_primorial(table, k), 2.0)


def minimality_probe(trace: ConstructionTrace, xi: XiTable, table: PrimeTable | None = None) -> bool:
    """True iff lowering any single exponent a_j (j < k) breaks the defining inequalities."""
    return exponents_are_minimal(trace.v_k, trace.k, xi)


def satisfies_local(v: Factorization, k: int, xi: XiTable) -> bool:
    """xi(p_j, a_j - 1) + log p_j <= log V <= xi(p_j, a_j) for every j < k, all p_j present."""
    if len(v.factors) < k:
        return False
    lv = log_n(v)
    return all(xi(p, a - 1) + math.log(p) <= lv <= xi(p, a) for p, a in v.factors[: k - 1])


def exponents_are_minimal(v: Factorization, k: int, xi: XiTable) -> bool:
    # Lowering a_j to zero drops p_j and fails the consecutive-prime requirement outright.
    return not any(satisfies_local(divide_prime(v, p), k, xi) for p in v.primes[: k - 1])


def prop3_mult(n: int, trace_n: ConstructionTrace, table: PrimeTable, xi: XiTable | None = None) -> bool:
    """p_{n+1} < theta(p_n) + sqrt(p_n)/2, which forces G(V_n p_{n+1}) > G(V_n)."""
    if n <= 4:
        raise DomainError("needs n > 4")
    pn, pn1 = nth_prime(table, n), nth_prime(table, n + 1)
    hit = pn1 < log_primorial(table, n) + 0.5 * math.sqrt(pn)
    if hit:
        v = trace_n.v_k
        if not gronwall_g(multiply_prime(v, pn1)).g > trace_n.g_value.g:
            raise NumericError(f"n={n}: sufficient condition fired but G(V_n p_(n+1)) <= G(V_n)")
    return hit


def prop3_div(m: int, trace_m: ConstructionTrace, table: PrimeTable, xi: XiTable | None = None) -> bool:
    """p_m > theta(p_m) + 4 sqrt(p_m), which forces G(V_m / p_m) > G(V_m)."""
    if m <= 4:
        raise DomainError("needs m > 4")
    pm = nth_prime(table, m)
    hit = pm > log_primorial(table, m) + 4.0 * math.sqrt(pm)
    if hit:
        v = trace_m.v_k
        if not gronwall_g(divide_prime(v, pm)).g > trace_m.g_value.g:
            raise NumericError(f"m={m}: sufficient condition fired but G(V_m / p_m) <= G(V_m)")
    return hit


@dataclass(frozen=True)
class U1Record:
    m: int
    k_m: int
    v: Factorization
    decimal: str
    g: float
    c: float
    log_n: float
    filter: TriState

    @property
    def flagged(self) -> bool:
        return self.filter.ambiguous


@dataclass
class Enumeration:
    records: list[U1Record]
    argmax_k: int
    argmax_g: float
    k_max: int


def render(v: Factorization, max_digits: int = 20) -> str:
    s = to_decimal_string(v)
    return s if len(s) <= max_digits else scientific(v)


def enumerate_u1(k_max: int, xi: XiTable, table: PrimeTable, traces: dict | None = None) -> Enumeration:
    """All V_k in U1 for 4 <= k <= k_max, in increasing k."""
    if k_max < 4:
        raise DomainError("k_max must be >= 4")
    nth_prime(table, k_max + 1)
    records = []
    best_k, best_g = 0, -math.inf
    for k in range(4, k_max + 1):
        tr = construct_vk(k, xi, table)
        if traces is not None:
            traces[k] = tr
        if tr.g_value.g > best_g:
            best_k, best_g = k, tr.g_value.g
        if tr.filter.verdict is Verdict.FALSE:
            continue
        rep = is_u1(tr.v_k, table, xi)
        if tr.filter.verdict is Verdict.TRUE and rep.member.verdict is Verdict.FALSE:
            raise NumericError(f"k={k}: boundary filter and U1 test disagree")
        if rep.member.verdict is Verdict.AMBIGUOUS and tr.filter.verdict is Verdict.TRUE:
            filt = rep.member
        else:
            filt = tr.filter
        records.append(U1Record(
            m=len(records) + 1, k_m=k, v=tr.v_k, decimal=render(tr.v_k), g=tr.g_value.g,
            c=tr.c_k, log_n=tr.log_v, filter=filt,
        ))
    return Enumeration(records=records, argmax_k=best_k, argmax_g=best_g, k_max=k_max)
