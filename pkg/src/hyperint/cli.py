"""Command-line front end.

Exit codes: 0 solved, 1 usage/parse error (or any failed line in a batch),
2 domain error, 3 factorization budget exhausted, 4 method inapplicable,
5 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import DomainError, FactorizationIncomplete, MethodInapplicable
from .oracle import ScanRange, cross_check, scan
from .poly import IntPoly
from .solvers import SPEC_TYPES, bound_family1, oracle_bound, solve

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_INAPPLICABLE, EXIT_ORACLE = range(6)

AUTO_VERIFY_LIMIT = 10**6

_INT_RE = re.compile(r"^([+-]?)(\d+)(?:\^(\d+))?$")

# positional parameter order per subcommand
PARAMS = {
    "family1": ("a", "b", "k"),
    "family2": ("c", "a", "b"),
    "family3": ("c", "a", "b"),
    "sextic": ("alpha",),
    "masser": ("b", "d"),
    "quartic": ("coeffs",),
    "oracle": ("coeffs", "lo", "hi"),
}
_VALUE_OPTS = {"--a", "--b", "--k", "--c", "--d", "--alpha", "--coeffs", "--lo", "--hi",
               "--bound", "--budget", "--jobs"}


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Decimal integer, optionally ``base^exp`` (``-2^100``)."""
    m = _INT_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    sign, base, exp = m.groups()
    value = int(base) ** int(exp) if exp is not None else int(base)
    return -value if sign == "-" else value


def parse_coeffs(text: str) -> list[int]:
    try:
        return [parse_int(t) for t in text.split(",")]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}: {exc}")


def _positive_int(text):
    v = parse_int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")

    def exit(self, status=0, message=None):
        raise UsageError(message or "")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperint", description="Integer points on hyperelliptic curve families.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solver_flags(p):
        p.add_argument("--json", action="store_true", help="structured output")
        p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=None,
                       help="cross-check against a brute-force scan")
        p.add_argument("--bound", type=_positive_int, help="scan radius for --verify")
        p.add_argument("--timing", action="store_true", help="report elapsed time")
        p.add_argument("--budget", type=float, help="factorization time limit in seconds")

    docs = {
        "family1": "y^2 = (x+a)(x+a+k)(x+b)(x+b+k)",
        "family2": "y^2 = c^2 x^4 + a x^2 + b",
        "family3": "c y^2 = c x^4 + a x^2 + b",
        "sextic": "y^2 = (x^2-1)(x^2-alpha^2)(x^2-(alpha+1)^2)",
        "masser": "y^2 = x^4 + b x^2 + d",
    }
    for name, doc in docs.items():
        p = sub.add_parser(name, help=doc, description=doc)
        for param in PARAMS[name]:
            p.add_argument(f"--{param}", type=parse_int, required=True)
        solver_flags(p)

    p = sub.add_parser("quartic", help="y^2 = x^4 + a3 x^3 + a2 x^2 + a1 x + a0")
    p.add_argument("--coeffs", type=parse_coeffs, required=True, help="a3,a2,a1,a0")
    solver_flags(p)

    p = sub.add_parser("oracle", help="brute-force scan of y^2 = f(x)")
    p.add_argument("--coeffs", type=parse_coeffs, required=True,
                   help="coefficients of f, highest degree first")
    p.add_argument("--lo", type=parse_int, required=True)
    p.add_argument("--hi", type=parse_int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("batch", help="solve one instance per line of FILE")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="one JSON object per instance")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--budget", type=float, help="per-instance factorization limit")
    return parser


def normalize_argv(tokens: list[str]) -> list[str]:
    """Rewrite positional parameters and negative values into ``--name=value``.

    argparse would otherwise read ``-2^80`` as an option. ``family2 1 -2^80 1``
    becomes ``family2 --c=1 --a=-2^80 --b=1``.
    """
    if not tokens:
        return tokens
    cmd = tokens[0]
    slots = list(PARAMS.get(cmd, ()))
    out = [cmd]
    i = 1
    while i < len(tokens):
        tok = tokens[i]
        if tok in _VALUE_OPTS and i + 1 < len(tokens):
            out.append(f"{tok}={tokens[i + 1]}")
            name = tok[2:]
            if name in slots:
                slots.remove(name)
            i += 2
            continue
        if tok.startswith("--") and "=" in tok:
            name = tok[2:].split("=", 1)[0]
            if name in slots:
                slots.remove(name)
            out.append(tok)
        elif slots and (_INT_RE.match(tok) or (slots[0] == "coeffs" and "," in tok)):
            out.append(f"--{slots.pop(0)}={tok}")
        else:
            out.append(tok)
        i += 1
    return out


def _spec_from_args(args):
    cls = SPEC_TYPES[args.command]
    if args.command == "quartic":
        if len(args.coeffs) != 4:
            raise UsageError("quartic: --coeffs needs exactly four values a3,a2,a1,a0")
        return cls(*args.coeffs)
    return cls(**{p: getattr(args, p) for p in PARAMS[args.command]})


def _format_points(points):
    if not points:
        return "  (none)"
    return "\n".join(f"  ({p.x}, {p.y})" for p in points)


def _format_factorization(fac):
    if not fac.factors:
        return "1"
    return " * ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in fac.factors)


def _run_oracle(args):
    f = IntPoly.from_high(args.coeffs)
    if not f:
        raise DomainError("oracle: f must be nonzero")
    start = time.perf_counter()
    result = scan(f, ScanRange(args.lo, args.hi))
    elapsed = (time.perf_counter() - start) * 1000
    if args.json:
        data = result.to_dict()
        data["meta"]["range"] = [str(args.lo), str(args.hi)]
        if args.timing:
            data["meta"]["elapsed_ms"] = round(elapsed, 3)
        return json.dumps(data)
    lines = [f"oracle scan of y^2 = {f} over [{args.lo}, {args.hi}]",
             f"points ({len(result)}):", _format_points(result.points)]
    if args.timing:
        lines.append(f"elapsed: {elapsed:.3f} ms")
    return "\n".join(lines)


def _run_solver(args):
    spec = _spec_from_args(args)
    start = time.perf_counter()
    result = solve(spec, budget=args.budget)
    elapsed = (time.perf_counter() - start) * 1000

    verify = args.verify
    if verify is None:
        verify = (
            spec.family == "family1"
            and bound_family1(spec.a, spec.b, spec.k) <= AUTO_VERIFY_LIMIT
        )
    report = None
    if verify:
        radius = args.bound if args.bound is not None else oracle_bound(spec)
        report = cross_check(result, spec, ScanRange.symmetric(radius))

    fac = result.meta["factorization"]
    if args.json:
        data = result.to_dict()
        if args.timing:
            data["meta"]["elapsed_ms"] = round(elapsed, 3)
        if report is not None:
            data["oracle"] = {
                "range": [str(report.range.lo), str(report.range.hi)],
                "agree": report.ok,
                "unsound": [{"x": str(p.x), "y": str(p.y)} for p in report.unsound],
                "missing": [{"x": str(p.x), "y": str(p.y)} for p in report.missing],
            }
        text = json.dumps(data)
    else:
        params = " ".join(f"{k}={v}" for k, v in spec.params().items())
        lines = [
            f"{spec.family} {params}",
            f"curve: {spec.equation()}",
            f"points ({len(result)}):",
            _format_points(result.points),
            f"divisor pairs: {result.meta['divisor_pairs']} of N = {result.meta['factored_integer']}"
            f" = {_format_factorization(fac)} (tau = {fac.tau})",
        ]
        if report is not None:
            lines.append(report.summary())
        if args.timing:
            lines.append(f"elapsed: {elapsed:.3f} ms")
        text = "\n".join(lines)
    code = EXIT_ORACLE if report is not None and not report.ok else EXIT_OK
    return code, text


def execute(argv: list[str]) -> tuple[int, str, str]:
    """Run one command; returns ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(normalize_argv(list(argv)))
        if args.command == "batch":
            return _run_batch(args)
        if args.command == "oracle":
            return EXIT_OK, _run_oracle(args), ""
        code, text = _run_solver(args)
        return code, text, "" if code == EXIT_OK else "oracle disagreement"
    except UsageError as exc:
        return EXIT_USAGE, "", str(exc).strip()
    except MethodInapplicable as exc:
        return EXIT_INAPPLICABLE, "", str(exc)
    except FactorizationIncomplete as exc:
        return EXIT_BUDGET, "", f"factorization budget exhausted: {exc}"
    except DomainError as exc:
        return EXIT_DOMAIN, "", f"domain error: {exc}"


def _batch_line(job):
    lineno, line, budget = job
    try:
        tokens = shlex.split(line)
    except ValueError as exc:
        return lineno, line, EXIT_USAGE, "", f"parse error: {exc}"
    if tokens and tokens[0] == "batch":
        return lineno, line, EXIT_USAGE, "", "parse error: nested batch"
    if budget is not None and not any(t.split("=")[0] == "--budget" for t in tokens):
        tokens += ["--budget", str(budget)]
    code, out, err = execute(tokens)
    return lineno, line, code, out, err


def _run_batch(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        return EXIT_USAGE, "", f"cannot read {args.file}: {exc}"
    jobs = []
    for lineno, line in enumerate(raw, 1):
        body = line.split("#", 1)[0].strip()
        if body:
            tokens = body.split()
            if args.json and "--json" not in tokens:
                body += " --json"
            jobs.append((lineno, body, args.budget))

    start = time.perf_counter()
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_batch_line, jobs))
    else:
        results = [_batch_line(job) for job in jobs]
    wall = time.perf_counter() - start

    counts = {}
    blocks = []
    for lineno, line, code, out, err in results:
        status = {
            EXIT_OK: "solved", EXIT_USAGE: "parse error", EXIT_DOMAIN: "domain error",
            EXIT_BUDGET: "budget exhausted", EXIT_INAPPLICABLE: "method inapplicable",
            EXIT_ORACLE: "oracle disagreement",
        }[code]
        counts[status] = counts.get(status, 0) + 1
        if args.json:
            entry = {"line": lineno, "input": line, "status": status, "exit": code}
            if out:
                entry["result"] = json.loads(out)
            if err:
                entry["error"] = err
            blocks.append(json.dumps(entry))
        else:
            block = f"[line {lineno}] {line}\n" + (out if out else f"  {status}: {err}")
            blocks.append(block)

    solved = counts.get("solved", 0)
    failed = len(results) - solved
    summary = f"{len(results)} instances: {solved} solved, {failed} errored"
    detail = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()) if k != "solved")
    if detail:
        summary += f" ({detail})"
    summary += f"; wall time {wall:.3f} s"
    if args.json:
        blocks.append(json.dumps({"summary": {"instances": len(results), "solved": solved,
                                              "errored": failed, "wall_s": round(wall, 3)}}))
        text = "\n".join(blocks)
    else:
        text = "\n\n".join(blocks + [summary]) if blocks else summary
    return (EXIT_OK if failed == 0 else EXIT_USAGE), text, ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = execute(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
