import math
import random

import numpy as np
import pytest

from gronwall_u1.errors import ConfigurationError, DomainError
from gronwall_u1.gronwall import Factorization, gronwall_g, parse_number, sigma_over_n
from gronwall_u1.oracle import (
    NU, g_direct, scan_division_property, sigma_sieve, sigma_window, sweep_lemma_equivalence, verify_nu,
)


@pytest.fixture(scope="module")
def sieve():
    return sigma_sieve(10**6)


def test_sigma_basics(sieve, table):
    assert sieve[1] == 1
    assert sieve[6] == 12 and sieve[12] == 28
    rng = random.Random(3)
    for p in rng.sample([p for p in table.primes if p <= 10**6], 1000):
        assert sieve[p] == p + 1


def test_sigma_window_matches_dense():
    dense = sigma_sieve(20000).sigma
    assert np.array_equal(sigma_window(1, 20001), dense[1:])
    assert np.array_equal(sigma_window(12345, 15000), dense[12345:15000])


def test_sigma_segmented_path():
    s = sigma_sieve(10**7 + 1000)
    assert np.array_equal(s.sigma[10**7 - 50: 10**7 + 50], sigma_window(10**7 - 50, 10**7 + 50))


def test_sigma_nu_against_factored():
    nu = NU.to_int()
    exact = 1
    for p, a in NU.factors:
        exact *= (p ** (a + 1) - 1) // (p - 1)
    assert int(sigma_window(nu, nu + 1)[0]) == exact
    assert exact / nu == pytest.approx(sigma_over_n(NU), rel=1e-15)


def test_sieve_vs_factored_sample(sieve, table):
    rng = random.Random(11)
    for n in rng.sample(range(3, 10**6 + 1), 10**4):
        f = parse_number(str(n), table)
        assert sieve[n] == _exact_sigma(f)
        assert g_direct(n, sieve) == pytest.approx(gronwall_g(f).g, rel=1e-9)


def _exact_sigma(f):
    s = 1
    for p, a in f.factors:
        s *= (p ** (a + 1) - 1) // (p - 1)
    return s


def test_g_direct(sieve):
    assert g_direct(6, sieve) == pytest.approx(3.4293665667005873, rel=1e-14)
    assert 0 < g_direct(5040, sieve) < 2
    with pytest.raises(DomainError):
        g_direct(2, sieve)


def test_sieve_limits():
    with pytest.raises(ConfigurationError):
        sigma_sieve(0)
    with pytest.raises(ConfigurationError):
        sigma_sieve(2 * 10**8 + 1)


def test_sweep_small(xi):
    s = sigma_sieve(10**4 * 31)
    res = sweep_lemma_equivalence(10**4, 31, s, xi)
    assert res.ok and res.comparisons > 10**4
    with pytest.raises(ConfigurationError):
        sweep_lemma_equivalence(10**4, 31, sigma_sieve(1000), xi)


def test_sweep_detects_planted_error(xi):
    s = sigma_sieve(2000 * 31)
    bad = s.sigma.copy()
    bad[360 * 7] += 10**6  # makes G(2520) look huge
    from gronwall_u1.oracle import SigmaSieve
    res = sweep_lemma_equivalence(2000, 31, SigmaSieve(s.limit, bad), xi)
    assert any(m.n == 360 and m.p == 7 and m.kind == "mult" for m in res.mismatches)


def test_sweep_1e5(xi):
    s = sigma_sieve(10**5 * 31)
    assert sweep_lemma_equivalence(10**5, 31, s, xi).mismatches == []


def test_sweep_1e6_p13(xi):
    s = sigma_sieve(10**6 * 13)
    res = sweep_lemma_equivalence(10**6, 13, s, xi)
    assert res.mismatches == []


def test_verify_nu(xi):
    rep = verify_nu(xi)
    assert rep.ok and rep.scan_min is None
    assert set(rep.divisor_ok) == {2, 3, 5, 7, 11, 13, 17}
    assert math.floor(rep.g_nu * 1e4) == 17175
    assert math.floor(rep.g_19nu * 1e4) == 17238


def test_scan_small_range_has_no_hit():
    assert scan_division_property(5, 10**6) is None


@pytest.mark.slow
def test_gronwall_matches_sieve_all_n(sieve):
    limit = 10**6
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    spf = spf.tolist()
    worst = 0.0
    for n in range(3, limit + 1):
        d = {}
        m = n
        while m > 1:
            p = spf[m]
            d[p] = d.get(p, 0) + 1
            m //= p
        g = gronwall_g(Factorization(tuple(sorted(d.items())))).g
        worst = max(worst, abs(g / g_direct(n, sieve) - 1))
    assert worst <= 1e-9
