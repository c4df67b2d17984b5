import math

import pytest

from gronwall_u1.constructor import (
    construct_vk, enumerate_u1, exponents_are_minimal, fixed_point_y, initial_y, junction_correction,
    local_conditions, minimality_probe, prop2_filter, prop3_div, prop3_mult, step_exponents, y_bound,
)
from gronwall_u1.errors import DomainError
from gronwall_u1.gronwall import gronwall_g, log_n, multiply_prime, scientific
from gronwall_u1.improvability import Verdict
from gronwall_u1.primes import log_primorial, sieve_upto
from gronwall_u1.xi import XiTable, solve_xi, xi_bounds


def test_initial_y(table):
    y = initial_y(4, table)
    assert y.as_dict() == {2: 1, 3: 1, 5: 1, 7: 1}
    assert log_n(y) == pytest.approx(5.347, abs=1e-3)
    assert initial_y(5, table).exponents == (1,) * 5
    assert log_n(initial_y(9, table)) == pytest.approx(19.22309870012918, abs=1e-12)
    with pytest.raises(DomainError):
        initial_y(3, table)


def test_step_exponents_at_log210(table, xi):
    # independent scan: largest beta with xi(2, beta-1) + log 2 <= log 210
    ly = math.log(210)
    beta = 1
    while solve_xi(2, beta).value + math.log(2) <= ly:
        beta += 1
    assert beta == 2
    # xi(2,2) + log 2 ~ 6.10 exceeds log 210 even though the a-priori bracket
    # alone would only say > 3.36
    assert xi_bounds(2, 2)[0] + math.log(2) < ly < solve_xi(2, 2).value + math.log(2)
    assert step_exponents(ly, 4, xi, table) == (2, 1, 1, 1)


def test_step_exponents_shape(table, xi):
    for ly in (5.347, 10.0, 25.8, 60.0):
        b = step_exponents(ly, 12, xi, table)
        assert b[-1] == 1
        assert all(x >= y for x, y in zip(b, b[1:]))


def test_fixed_point(table, xi):
    y, s0, its = fixed_point_y(9, xi, table)
    th = log_primorial(table, 9)
    assert th <= log_n(y) <= th + 2 + 2 * math.sqrt(1 + th)
    _, s0_4, its4 = fixed_point_y(4, xi, table)
    assert its4[1][1][0] >= 2


def test_s0_small(table, xi):
    assert max(fixed_point_y(k, xi, table)[1] for k in range(4, 102)) <= 10


def test_junction_noop(table, xi):
    y, _, _ = fixed_point_y(9, xi, table)
    v, e_sets, s_star = junction_correction(y, 9, xi)
    assert v == y and s_star == 0 and e_sets[0][0] == frozenset()


def test_junction_runs_satisfy_local(table, xi):
    seen = 0
    for k in range(4, 201):
        tr = construct_vk(k, xi, table)
        if tr.s_star:
            seen += 1
            sets = [e for e, _ in tr.e_sets]
            assert all(a <= b for a, b in zip(sets, sets[1:]))
        assert all(t.verdict is Verdict.TRUE for _, t in local_conditions(tr.v_k, k, xi, table))
    assert seen > 0


def test_construct_k9(table, xi):
    tr = construct_vk(9, xi, table)
    assert tr.exponents == (5, 3, 2, 1, 1, 1, 1, 1, 1)
    assert tr.v_k.to_int() == 160626866400
    assert round(tr.c_k, 2) == 1.37
    assert tr.c_k == pytest.approx((tr.log_v - log_primorial(table, 9)) / math.sqrt(23))
    assert tr.filter.verdict is Verdict.TRUE


def test_construct_k16(table, xi):
    tr = construct_vk(16, xi, table)
    assert scientific(tr.v_k) == "1.97e24"
    assert math.floor(tr.c_k * 100) == 151


@pytest.mark.parametrize("k", [5, 10])
def test_filter_rejects(k, table, xi):
    tr = construct_vk(k, xi, table)
    assert tr.filter.verdict is Verdict.FALSE
    assert prop2_filter(tr, xi, table).verdict is Verdict.FALSE


def test_filter_k101(table, xi):
    assert construct_vk(101, xi, table).filter.verdict is Verdict.TRUE


def test_minimality(table, xi):
    for k in (9, 11):
        assert minimality_probe(construct_vk(k, xi, table), xi)
    inflated = multiply_prime(construct_vk(9, xi, table).v_k, 2)
    assert not exponents_are_minimal(inflated, 9, xi)


def test_iterates_monotone_and_bounded(table, xi):
    for k in range(4, 201):
        tr = construct_vk(k, xi, table)
        logs = [ly for _, _, ly in tr.y_iterates]
        assert all(a <= b for a, b in zip(logs, logs[1:]))
        exps = [e for _, e, _ in tr.y_iterates]
        assert all(all(x <= y for x, y in zip(a, b)) for a, b in zip(exps, exps[1:]))
        th = log_primorial(table, k)
        assert y_bound(k, table) == pytest.approx(th + 2 + 2 * math.sqrt(1 + th))
        assert max(logs) < y_bound(k, table)


def test_prop3_small_range(table, xi):
    # theta(23) + sqrt(23)/2 ~ 21.6 < 29
    assert not prop3_mult(9, construct_vk(9, xi, table), table)
    hits = [n for n in range(5, 201) if prop3_mult(n, construct_vk(n, xi, table), table)]
    assert hits == []
    assert not any(prop3_div(m, construct_vk(m, xi, table), table) for m in range(5, 201))
    with pytest.raises(DomainError):
        prop3_mult(4, construct_vk(4, xi, table), table)


@pytest.mark.slow
def test_prop3_first_hit_asserts_g_inequality():
    # p_{n+1} < theta(p_n) + sqrt(p_n)/2 first holds at n = 30385
    table = sieve_upto(400_000)
    xi = XiTable()
    n = 30385
    assert not prop3_mult(n - 1, construct_vk(n - 1, xi, table), table)
    tr = construct_vk(n, xi, table)
    assert prop3_mult(n, tr, table)
    v = tr.v_k
    assert gronwall_g(multiply_prime(v, table.primes[n])).g > tr.g_value.g


def test_enumerate_k12(table, xi):
    e = enumerate_u1(12, xi, table)
    assert [r.k_m for r in e.records] == [9, 11]
    assert [r.m for r in e.records] == [1, 2]


def test_enumerate_table1_g5(table, xi):
    e = enumerate_u1(101, xi, table)
    assert [r.k_m for r in e.records] == [9, 11, 16, 34, 99, 101]
    r5 = e.records[4]
    assert math.floor(r5.g * 1e6) == 1770728
    assert math.floor(r5.c * 100) == 167
    assert 4 <= e.argmax_k <= 101
    assert e.argmax_g == max(construct_vk(k, xi, table).g_value.g for k in range(4, 102))
