"""Exit criteria, one test per criterion; each records a PASS/FAIL summary line."""

import io
import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import record_acceptance
from gronwall_u1.cli import run
from gronwall_u1.constructor import construct_vk, local_conditions, minimality_probe
from gronwall_u1.gronwall import gronwall_g, multiply_prime
from gronwall_u1.improvability import Verdict, check_b1, div_improves, is_u1
from gronwall_u1.oracle import NU, sigma_sieve, sweep_lemma_equivalence, verify_nu
from gronwall_u1.primes import sieve_upto
from gronwall_u1.table1 import truncate
from gronwall_u1.xi import XiTable, f_alpha0, g_scaled, solve_xi, tau_star, xi_bounds


def cli_json(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out, stderr=io.StringIO())
    return code, json.loads(out.getvalue()) if out.getvalue() else None


def test_c1_n1_reproduction():
    t0 = time.perf_counter()
    code, doc = cli_json("construct", "--k", "9")
    dt = time.perf_counter() - t0
    p = doc["payload"]
    ok = (code == 0 and p["decimal_or_sci"] == "160626866400" and truncate(p["g"], 4) == "1.7374"
          and round(p["c"], 2) == 1.37 and dt < 1.0)
    record_acceptance("1 N1* reproduction", ok, f"G={p['g']:.6f} C={p['c']:.4f} t={dt:.2f}s")
    assert ok


def test_c2_table1():
    t0 = time.perf_counter()
    code, doc = cli_json("table1", "--check")
    dt = time.perf_counter() - t0
    recs = doc["payload"]["records"]
    ok = code == 0 and doc["payload"]["check"]["passed"] and dt < 10.0
    record_acceptance("2 Table 1 reproduction", ok,
                      f"k_m={[r['k'] for r in recs]} t={dt:.2f}s {doc['payload']['check']['problems']}")
    assert ok


def test_c3_remark2():
    t0 = time.perf_counter()
    table = sieve_upto(1000)
    xi = XiTable()
    g_nu = gronwall_g(NU).g
    g_19 = gronwall_g(multiply_prime(NU, 19)).g
    div_ok = all(div_improves(NU, q, xi).verdict is Verdict.FALSE for q in NU.primes)
    rep = is_u1(NU, table, xi)
    nu_direct = verify_nu(xi)
    dt = time.perf_counter() - t0
    ok = (truncate(g_nu, 4) == "1.7175" and truncate(g_19, 4) == "1.7238" and div_ok
          and rep.member.verdict is Verdict.FALSE and 19 in rep.witnesses and nu_direct.ok and dt < 1.0)
    record_acceptance("3 Remark 2 (nu)", ok, f"G(nu)={g_nu:.6f} G(19nu)={g_19:.6f} witnesses={rep.witnesses} t={dt:.2f}s")
    assert ok


@pytest.mark.skipif(not os.environ.get("GRONWALL_NU_SCAN"), reason="set GRONWALL_NU_SCAN=1 (several minutes)")
def test_c3_optional_minimality_scan():
    rep = verify_nu(scan_min=True)
    record_acceptance("3b nu minimality scan", bool(rep.scan_min), f"counterexample={rep.scan_counterexample}")
    assert rep.scan_min


def test_c4_lemma_oracle_sweep():
    t0 = time.perf_counter()
    xi = XiTable()
    sieve = sigma_sieve(10**6 * 31)
    res = sweep_lemma_equivalence(10**6, 31, sieve, xi)
    dt = time.perf_counter() - t0
    ok = not res.mismatches and dt < 60.0
    record_acceptance("4 Lemma 1/2 oracle sweep", ok,
                      f"{res.comparisons} comparisons, {len(res.mismatches)} mismatches, "
                      f"{len(res.guard_hits)} guard hits, t={dt:.1f}s")
    assert ok


def test_c5_bracket_suite():
    t0 = time.perf_counter()
    primes = sieve_upto(997).primes
    bad = []
    for p in primes:
        for a in range(11):
            lo, hi = xi_bounds(p, a)
            x = solve_xi(p, a).value
            if not lo < x < hi:
                bad.append((p, a, "outside"))
            if a == 0:
                signs = f_alpha0(lo, p) < 0 < f_alpha0(hi, p)
            else:
                signs = g_scaled(1.0, p, a) < 0 < g_scaled(3.0, p, a)
            if not signs:
                bad.append((p, a, "signs"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10.0
    record_acceptance("5 root bracket suite", ok, f"{len(primes) * 11} roots, failures={bad[:5]} t={dt:.2f}s")
    assert ok


def test_c6_structural_invariants():
    t0 = time.perf_counter()
    table = sieve_upto(10**4)
    xi = XiTable()
    problems = []
    c_range = [math.inf, -math.inf]
    for k in range(4, 201):
        tr = construct_vk(k, xi, table)
        if not all(t.verdict is Verdict.TRUE for _, t in local_conditions(tr.v_k, k, xi, table)):
            problems.append((k, "local inequalities"))
        if not check_b1(tr.v_k):
            problems.append((k, "B1"))
        if not 0.5 < tr.c_k < 3:
            problems.append((k, f"C={tr.c_k}"))
        c_range = [min(c_range[0], tr.c_k), max(c_range[1], tr.c_k)]
        if k <= 101 and not minimality_probe(tr, xi):
            problems.append((k, "not minimal"))
        member = is_u1(tr.v_k, table, xi).member.verdict
        if tr.filter.verdict is Verdict.AMBIGUOUS or member is Verdict.AMBIGUOUS:
            problems.append((k, "ambiguous"))
        elif (tr.filter.verdict is Verdict.TRUE) != (member is Verdict.TRUE):
            problems.append((k, "filter/U1 disagreement"))
    dt = time.perf_counter() - t0
    ok = not problems and dt < 30.0
    record_acceptance("6 structural invariants k=4..200", ok,
                      f"C in [{c_range[0]:.3f}, {c_range[1]:.3f}] problems={problems[:5]} t={dt:.2f}s")
    assert ok


def test_c7_tau_star_bound():
    rng = np.random.default_rng(2020)
    worst = -math.inf
    for _ in range(100):
        a, b = 10 * (1 - rng.random(2))  # (0, 10]
        ts = tau_star(a, b)
        x = rng.uniform(0, ts)
        for _ in range(1000):
            x = a + b * math.sqrt(x)
            worst = max(worst, x - ts)
    ok = worst <= 1e-9
    record_acceptance("7 tau* invariance", ok, f"max overshoot {worst:.3e}")
    assert ok


def test_c8_determinism():
    cmd = [sys.executable, "-m", "gronwall_u1", "enumerate", "--kmax", "101"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    ok = a == b and len(a) > 0
    record_acceptance("8 determinism", ok, f"{len(a)} bytes")
    assert ok
