"""Command-line front end: ``derive``, ``eval`` and ``verify``.

Reports go to stdout as JSON (default) or text.  Exit codes: 0 pass,
1 verification failure, 2 domain error, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from .cohomology import canonical_pair, gauss_connection
from .errors import DomainError, TwistGMError, UnknownPair
from .exactalg import RatFuncZ, format_rat, parse_rat
from .fuchsian import FuchsianSystem, det_connection, catalog_matrix
from .numerics import (CycleId, QuadSpec, cycle_integral, hyp2f1_continued, hyp2f1_series_err,
                       kummer_local)
from .verify import SUITE_NAMES, Check, run_suite

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 3

CONFIG_KEYS = {"rel_tol": float, "abs_tol": float, "levels": int, "ode_rtol": float}
DEFAULTS = {"rel_tol": 1e-13, "abs_tol": 1e-300, "levels": 12, "ode_rtol": 1e-13}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_config(path: Optional[str]) -> dict:
    """Read ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    cfg = dict(DEFAULTS)
    if not path:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: expected one of {', '.join(CONFIG_KEYS)} as key=value")
        try:
            cfg[key] = CONFIG_KEYS[key](value)
        except ValueError:
            raise UsageError(f"{path}:{n}: bad value {value!r} for {key}") from None
    return cfg


def _rational(text: str, flag: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag} must be an integer or p/q, got {text!r}") from None


def _number(text: str, flag: str) -> complex:
    """Numeric flags accept p/q, decimals or Python complex literals."""
    try:
        return complex(parse_rat(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"{flag} must be a number, got {text!r}") from None


def _matrix_rows(mat) -> list[list[str]]:
    return [[format_rat(e) if isinstance(e, Fraction) else str(e) for e in row] for row in mat]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_derive(args, cfg) -> tuple[dict, list[Check], list]:
    a, b, c = (_rational(getattr(args, k), f"--{k}") for k in "abc")
    tag = canonical_pair(args.pair)
    conn = gauss_connection(tag, a, b, c, shift=args.shift)
    derived = FuchsianSystem.from_connection(conn, (a, b, c))
    oracle = catalog_matrix(tag, a, b, c)
    z = RatFuncZ.z()
    det = det_connection(derived)
    want_det = (a * b) / (z * (z - 1))
    checks = [
        Check("A0 matches catalog", derived.residue(0) == oracle.residue(0),
              _matrix_rows(oracle.residue(0)), _matrix_rows(derived.residue(0)), exact=True),
        Check("A1 matches catalog", derived.residue(1) == oracle.residue(1),
              _matrix_rows(oracle.residue(1)), _matrix_rows(derived.residue(1)), exact=True),
        Check("det A(z) = ab/(z(z-1))", det == want_det, str(want_det), str(det), exact=True),
    ]
    extra = {
        "basis": list(derived.basis_labels),
        "shift": conn.shift.note,
        "singular_points": [format_rat(p) for p in derived.singular_points],
        "matrix": _matrix_rows(derived.matrix()),
    }
    inputs = {"pair": tag, "a": format_rat(a), "b": format_rat(b), "c": format_rat(c), "shift": args.shift}
    return inputs, checks, extra


def cmd_eval(args, cfg) -> tuple[dict, list[Check], list]:
    a, b, c, z = (_number(getattr(args, k), f"--{k}") for k in "abcz")
    q = QuadSpec(levels=cfg["levels"], abs_tol=cfg["abs_tol"], rel_tol=cfg["rel_tol"])
    method = args.method
    inputs = {"method": method, "a": args.a, "b": args.b, "c": args.c, "z": args.z}
    if method == "series":
        res = hyp2f1_series_err(a, b, c, z)
        value, err, tol, name = res.value, res.error, 1e-16, "F(a,b,c;z)"
    elif method == "euler":
        if any(x.imag for x in (a, b, c, z)):
            raise UsageError("the euler method takes real a, b, c, z")
        cyc = CycleId.parse(args.cycle)
        inputs["cycle"] = cyc.tag
        inputs["side"] = args.side
        a, b, c, zr = a.real, b.real, c.real, z.real
        res = cycle_integral((a - 1, c - a - 1, -b), zr, cyc, q, side=args.side)
        value, err, tol, name = res.value, res.error, q.rel_tol, f"integral over cycle {cyc.tag}"
    elif method == "ode":
        rtol = cfg["ode_rtol"]
        value = hyp2f1_continued(a, b, c, z, side=args.side, rtol=rtol)
        coarse = hyp2f1_continued(a, b, c, z, side=args.side, rtol=rtol * 1e3)
        err, tol, name = abs(value - coarse), rtol, "F(a,b,c;z) continued"
        inputs["side"] = args.side
    else:
        k = args.kummer_index
        if k is None:
            raise UsageError("--kummer-index is required for the kummer method")
        rtol = cfg["ode_rtol"]
        kw = {"variant": args.variant, "side": args.side}
        value = kummer_local(k, a, b, c, z, rtol=rtol, **kw)
        coarse = kummer_local(k, a, b, c, z, rtol=rtol * 1e3, **kw)
        err, tol, name = abs(value - coarse), rtol, f"f{k}(z)"
        inputs.update({"kummer_index": k, "side": args.side, "variant": args.variant})
    check = Check(name, True, None, complex(value), err, tol=tol)
    return inputs, [check], {"method": method}


def cmd_verify(args, cfg) -> tuple[dict, list[Check], list]:
    q = QuadSpec(levels=cfg["levels"], abs_tol=cfg["abs_tol"], rel_tol=cfg["rel_tol"])
    checks = run_suite(args.suite, args.samples, args.seed, q)
    inputs = {"suite": args.suite, "samples": args.samples, "seed": args.seed}
    return inputs, checks, {}


# ---------------------------------------------------------------------------
# Parser and output
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistgm", description="Twisted cohomology and the Gauss hypergeometric system.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--config", help="file of key=value defaults: " + ", ".join(CONFIG_KEYS))
    p.add_argument("--no-timing", action="store_true",
                   help="report elapsed_ms as null so identical runs give identical bytes")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("derive", help="derive a (phi_01, phi_pq) connection and compare to the catalog")
    d.add_argument("--pair", required=True)
    for k in "abc":
        d.add_argument(f"--{k}", required=True)
    d.add_argument("--shift", choices=("auto", "off"), default="auto")

    e = sub.add_parser("eval", help="evaluate 2F1, a cycle integral or a Kummer solution")
    e.add_argument("--method", choices=("series", "euler", "ode", "kummer"), required=True)
    for k in "abcz":
        e.add_argument(f"--{k}", required=True)
    e.add_argument("--cycle", default="01")
    e.add_argument("--kummer-index", type=int, choices=range(1, 7))
    e.add_argument("--variant", choices=("corrected", "printed"))
    e.add_argument("--side", type=int, choices=(1, -1), default=1)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITE_NAMES, default="all")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)

    for sp in (d, e, v):
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        sp.add_argument("--config", default=argparse.SUPPRESS)
        sp.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS)
    return p


def _render_text(report: dict) -> str:
    lines = [f"{report['command']}: " + ", ".join(f"{k}={v}" for k, v in report["inputs"].items())]
    for key, val in report.get("outputs", {}).items():
        if key == "matrix":
            lines.append("A(z) = " + " ; ".join("[" + ", ".join(r) + "]" for r in val))
        else:
            lines.append(f"{key}: {val}")
    for r in report["results"]:
        tail = "exact" if r.get("exact") else f"abs_err={r.get('abs_err')} tol={r.get('tol')}"
        if r["expected"] is None:
            lines.append(f"{r['name']} = {r['actual']}  ({tail})")
        else:
            lines.append(f"{r['status'].upper():4} {r['name']}  expected={r['expected']} actual={r['actual']}  {tail}")
    if report.get("error"):
        lines.append(f"error: {report['error']}")
    if report.get("elapsed_ms") is not None:
        lines.append(f"elapsed {report['elapsed_ms']} ms")
    return "\n".join(lines)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "text":
        print(_render_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=False))


COMMANDS = {"derive": cmd_derive, "eval": cmd_eval, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raw_inputs = {k: v for k, v in vars(args).items()
                  if k not in ("command", "format", "config", "no_timing") and v is not None}
    inputs, checks, outputs, error = raw_inputs, [], {}, None
    code = EXIT_OK
    try:
        inputs, checks, outputs = COMMANDS[args.command](args, cfg)
        if not all(c.passed for c in checks):
            code = EXIT_FAIL
    except (UsageError, UnknownPair) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        error, code = f"{type(exc).__name__}: {exc}", EXIT_DOMAIN
    except TwistGMError as exc:
        error, code = f"{type(exc).__name__}: {exc}", EXIT_FAIL
    report: dict = {"command": args.command, "inputs": inputs}
    if outputs:
        report["outputs"] = outputs
    report["results"] = [c.to_json() for c in checks]
    if error:
        report["error"] = error
    report["elapsed_ms"] = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
    _emit(report, args.format)
    if error:
        print(error, file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
