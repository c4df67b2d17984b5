"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numeric/internal error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .constructor import TABLE1_KMAX, construct_vk, enumerate_u1, minimality_probe, prop3_div, prop3_mult, render
from .errors import ConfigurationError, DomainError, NumericError, ParseError, RangeError
from .gronwall import Factorization, parse_number
from .improvability import TriState, check_b1, is_u1
from .oracle import sigma_sieve, sweep_lemma_equivalence, verify_nu
from .primes import log_primorial, nth_prime, psi, sieve_upto, theta
from .table1 import check_enumeration
from .xi import ToleranceConfig, XiTable

SCHEMA_VERSION = "1.0"
DEFAULT_SIEVE = 10**6


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, message, document):
        super().__init__(message)
        self.document = document


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tri(t: TriState) -> dict:
    return {"verdict": t.verdict.value, "margin": t.margin}


def _factors(f: Factorization) -> list[list[int]]:
    return [[p, a] for p, a in f.factors]


def _trace_payload(tr, xi, full: bool) -> dict:
    out = {
        "k": tr.k,
        "factors": _factors(tr.v_k),
        "decimal_or_sci": render(tr.v_k),
        "log_n": tr.log_v,
        "g": tr.g_value.g,
        "c": tr.c_k,
        "s0": tr.s0,
        "s_star": tr.s_star,
        "filter": tr.filter.verdict.value,
        "filter_margin": tr.filter.margin,
        "minimal": minimality_probe(tr, xi),
    }
    if full:
        out["y_iterates"] = [{"s": s, "exponents": list(e), "log_y": ly} for s, e, ly in tr.y_iterates]
        out["e_sets"] = [{"s": i, "indices": sorted(j + 1 for j in e), "exponents": list(a)}
                         for i, (e, a) in enumerate(tr.e_sets)]
    return out


def cmd_xi(args, table, xi):
    v = xi.get(args.p, args.alpha)
    return {"p": args.p, "alpha": args.alpha, "value": v.value, "bracket": [v.bracket_lo, v.bracket_hi],
            "residual": v.residual, "iterations": v.iterations}


def cmd_theta(args, table, xi):
    return {"x": args.x, "theta": theta(table, args.x), "psi": psi(table, args.x)}


def cmd_check(args, table, xi):
    if args.factors:
        f = parse_number(args.factors, table)
    elif args.number:
        f = parse_number(args.number, table)
    else:
        raise UsageError("check needs N or --factors")
    rep = is_u1(f, table, xi)
    return {
        "factors": _factors(f),
        "decimal_or_sci": render(f),
        "log_n": rep.g_value.log_n,
        "g": rep.g_value.g,
        "sigma_ratio": rep.g_value.sigma_ratio,
        "k": rep.k,
        "member": rep.member.verdict.value,
        "margin": rep.member.margin,
        "b1": check_b1(f),
        "failures": [{"condition": fl.label, "prime": fl.prime, "margin": fl.margin} for fl in rep.failures],
        "ambiguous": [{"condition": fl.label, "prime": fl.prime, "margin": fl.margin} for fl in rep.ambiguous],
    }


def cmd_construct(args, table, xi):
    return _trace_payload(construct_vk(args.k, xi, table), xi, args.trace)


def _records(enum):
    return [{
        "m": r.m, "k": r.k_m, "factors": _factors(r.v), "decimal_or_sci": r.decimal,
        "log_n": r.log_n, "g": r.g, "c": r.c, "filter": r.filter.verdict.value,
    } for r in enum.records]


def cmd_enumerate(args, table, xi):
    enum = enumerate_u1(args.kmax, xi, table)
    payload = {"kmax": args.kmax, "records": _records(enum),
               "argmax_k": enum.argmax_k, "argmax_g": enum.argmax_g}
    if args.kmax > TABLE1_KMAX:
        payload["note"] = f"records beyond k={TABLE1_KMAX} are unverified against the published table"
    return payload


def cmd_table1(args, table, xi):
    enum = enumerate_u1(TABLE1_KMAX, xi, table)
    payload = {"records": _records(enum)}
    if args.check:
        problems = check_enumeration(enum, table)
        payload["check"] = {"passed": not problems, "problems": problems}
        if problems:
            raise VerificationFailed("; ".join(problems), payload)
    return payload


def cmd_prop3(args, table, xi):
    rows = []
    for n in range(max(args.start, 5), args.stop + 1):
        tr = construct_vk(n, xi, table)
        rows.append({"n": n, "p_n": nth_prime(table, n), "theta": log_primorial(table, n),
                     "mult": prop3_mult(n, tr, table), "div": prop3_div(n, tr, table),
                     "g": tr.g_value.g, "c": tr.c_k})
    return {"from": args.start, "to": args.stop, "rows": rows}


def cmd_oracle_sweep(args, table, xi):
    sieve = sigma_sieve(args.nmax * args.pmax)
    res = sweep_lemma_equivalence(args.nmax, args.pmax, sieve, xi)
    as_dict = lambda m: {"kind": m.kind, "n": m.n, "p": m.p, "margin": m.margin,
                         "g_before": m.g_before, "g_after": m.g_after}
    payload = {"nmax": args.nmax, "pmax": args.pmax, "comparisons": res.comparisons,
               "mismatches": [as_dict(m) for m in res.mismatches],
               "guard_hits": [as_dict(m) for m in res.guard_hits]}
    if res.mismatches:
        raise VerificationFailed(f"{len(res.mismatches)} mismatches", payload)
    return payload


def cmd_oracle_nu(args, table, xi):
    rep = verify_nu(xi, scan_min=args.scan_min)
    payload = {"g_nu": rep.g_nu, "g_19nu": rep.g_19nu,
               "divisor_ok": {str(q): v for q, v in rep.divisor_ok.items()},
               "predicate_ok": {str(q): v for q, v in rep.predicate_ok.items()},
               "mult19_ok": rep.mult19_ok, "scan_min": rep.scan_min,
               "scan_counterexample": rep.scan_counterexample}
    if not rep.ok:
        raise VerificationFailed("nu checks failed", payload)
    return payload


def build_parser() -> argparse.ArgumentParser:
    def shared(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags with suppressed defaults so they never mask a top-level value
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        p = _Parser(add_help=False)
        p.add_argument("--format", choices=["json", "csv", "text"], default=d("json"))
        p.add_argument("--sieve-limit", type=int, default=d(DEFAULT_SIEVE))
        p.add_argument("--guard", type=float, default=d(ToleranceConfig.cmp_guard))
        p.add_argument("--tol", type=float, default=d(ToleranceConfig.solver_tol))
        return p

    common = shared(False)
    parser = _Parser(prog="gronwall-u1", description="One-step G-unimprovable numbers", parents=[shared(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("xi", parents=[common], help="solve xi(p, alpha)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("theta", parents=[common], help="Chebyshev theta and psi")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("check", parents=[common], help="U1 membership of N")
    p.add_argument("number", nargs="?")
    p.add_argument("--factors")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="build V_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", parents=[common], help="U1 members with k <= kmax")
    p.add_argument("--kmax", type=int, default=TABLE1_KMAX)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("table1", parents=[common], help="first six U1 numbers")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("prop3", parents=[common], help="sufficient improvability conditions over a k range")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.set_defaults(func=cmd_prop3)

    p = sub.add_parser("oracle", parents=[common], help="brute-force verification")
    osub = p.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    q = osub.add_parser("sweep", parents=[common])
    q.add_argument("--nmax", type=int, default=10**5)
    q.add_argument("--pmax", type=int, default=31)
    q.set_defaults(func=cmd_oracle_sweep)
    q = osub.add_parser("nu", parents=[common])
    q.add_argument("--scan-min", action="store_true")
    q.set_defaults(func=cmd_oracle_nu)
    return parser


def _rows_for_table(payload) -> list[dict]:
    for key in ("records", "rows", "mismatches"):
        if isinstance(payload.get(key), list):
            return payload[key]
    return [payload]


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return v


def format_output(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    rows = _rows_for_table(doc["payload"])
    keys = list(dict.fromkeys(k for r in rows for k in r))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_cell(r.get(k, "")) for k in keys])
        return buf.getvalue()
    lines = []
    for r in rows:
        lines.append("  ".join(f"{k}={_cell(r[k])}" for k in keys if k in r))
    return "\n".join(lines) + "\n"


def _command_name(args) -> str:
    sub = getattr(args, "oracle_command", None)
    return f"{args.command} {sub}" if sub else args.command


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        tol = ToleranceConfig(cmp_guard=args.guard, solver_tol=args.tol)
        table = sieve_upto(args.sieve_limit)
    except (UsageError, ConfigurationError, ValueError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return 1
    xi = XiTable(tol)
    doc = {"schema_version": SCHEMA_VERSION, "command": _command_name(args), "tolerances": tol.as_dict()}
    code = 0
    try:
        doc["payload"] = args.func(args, table, xi)
    except VerificationFailed as exc:
        doc["payload"] = exc.document
        print(f"verification failed: {exc}", file=stderr)
        code = 3
    except (UsageError, ParseError, DomainError, ConfigurationError, RangeError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return 1
    except NumericError as exc:
        print(f"numeric error: {exc}", file=stderr)
        return 2
    stdout.write(format_output(doc, args.format))
    return code


def main():
    sys.exit(run())
