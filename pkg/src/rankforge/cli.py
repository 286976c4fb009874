"""Command-line front end: ``rankforge gen|canon|snf|verify|cert|vn``.

Each subcommand computes a JSON-serialisable result.  The result is printed
to stdout (``--format text`` prints a plain rendering of the same data) and,
with ``--report PATH``, written together with the resolved configuration and
a timestamp.  Exit codes: 0 all checks pass, 1 a check failed or a
counterexample was found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from . import __version__
from ._rng import MASK64
from .errors import CharTwoUnsupported, InputError, RankforgeError
from .exactmat.snf import PolyMatrix, smith_normal_form
from .exactmat.verify import DEFAULT_BUDGET, counterexample_search, verify_identity
from .fields import FieldSpec
from .fmonoid import canonical_form_with_zeros
from .freealg import builtin_certificate, builtin_certificates, verify_certificate
from .identgen import (
    BUILTIN_NAMES,
    RankIdentity,
    ShuffleSpec,
    builtin_identity,
    check_lattice_condition,
    make_identity,
    shuffle_columns,
)
from .lattice import DivClass, order_statistics
from .poly import parse
from .vnrank import EXPERIMENTS, BlockShape, run_experiment

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Outcome:
    """What a subcommand hands back: the full result, what to print, and the exit code."""

    def __init__(self, result: Any, code: int = EXIT_OK, printed: Any = None, text: str | None = None):
        self.result = result
        self.code = code
        self.printed = result if printed is None else printed
        self.text = text


# --- argument parsing helpers -------------------------------------------------


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must lie in 0..2^64-1")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_rows(text: str) -> list[list[int]]:
    """``"0,0;1,1"`` or a JSON array of arrays."""
    text = text.strip()
    try:
        if text.startswith("["):
            rows = json.loads(text)
        else:
            rows = [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except (ValueError, json.JSONDecodeError):
        raise InputError(f"cannot read exponent rows from {text!r}") from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("exponent rows must be a list of lists")
    return rows


def _split(text: str, sep: str) -> list[str]:
    return [s.strip() for s in text.split(sep) if s.strip()]


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


# --- subcommands --------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> Outcome:
    spec = args.field
    basis = tuple(parse(s, spec) for s in _split(args.basis, ";"))
    if not basis:
        raise InputError("--basis needs at least one polynomial")
    lam = _parse_rows(args.lambda_rows)
    perms = shuffle_columns(lam, args.seed)
    shuffle = ShuffleSpec(basis, lam, perms)
    ident = make_identity(shuffle, f"column shuffle of {len(lam)}x{len(basis)} exponents, seed {args.seed}")
    result = ident.to_dict()
    result.update(
        basis=[str(b) for b in basis],
        lambda_rows=[list(r) for r in shuffle.lam],
        column_perms=[list(p) for p in shuffle.column_perms],
        mu_rows=[list(r) for r in shuffle.mu],
        rendered=ident.render(),
    )
    return Outcome(result, text=ident.render())


def cmd_canon(args: argparse.Namespace) -> Outcome:
    spec = args.field
    polys = [parse(s, spec) for s in _split(args.polys, ",")]
    if not polys:
        raise InputError("--polys needs at least one polynomial")
    elem, zeros = canonical_form_with_zeros(polys, spec)
    chain = elem.to_strings()
    stats = [str(c.rep) if not c.is_top else "0" for c in order_statistics([DivClass.of(p) for p in polys])]
    result = {"chain": chain, "zero_count": zeros, "order_statistics": stats}
    return Outcome(result, printed=chain, text="\n".join(chain))


def cmd_snf(args: argparse.Namespace) -> Outcome:
    spec = args.field
    data = _load_json(args.matrix)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("matrix file must hold a JSON 2-D array of entry strings")
    M = PolyMatrix(spec, [[parse(str(x), spec) for x in row] for row in data])
    form = smith_normal_form(M)
    factors = [str(f) for f in form.factors]
    elem, zeros = canonical_form_with_zeros(list(form.factors), spec)
    result = {
        "invariant_factors": factors,
        "U": form.U.to_strings(),
        "V": form.V.to_strings(),
        "canonical_chain": elem.to_strings(),
        "zero_count": zeros,
    }
    return Outcome(result, text="\n".join(factors))


def _load_identity(args: argparse.Namespace) -> RankIdentity:
    if args.builtin is not None:
        return builtin_identity(args.builtin, args.field or FieldSpec.parse("Q"))
    data = _load_json(args.identity)
    if isinstance(data, dict) and isinstance(data.get("result"), dict) and "lhs" not in data:
        data = data["result"]  # a saved report
    return RankIdentity.from_dict(data, args.field)


def cmd_verify(args: argparse.Namespace) -> Outcome:
    ident = _load_identity(args)
    report = verify_identity(ident, trials=args.trials, dims=args.dims, seed=args.seed)
    result = report.to_dict()
    lattice = check_lattice_condition(ident.lhs, ident.rhs)
    result["lattice_condition"] = lattice
    if report.counterexample is None and not lattice:
        witness = counterexample_search(ident.lhs, ident.rhs, budget=args.budget, seed=args.seed)
        result["counterexample"] = None if witness is None else witness.to_strings()
    failed = not report.passed or result["counterexample"] is not None
    text = (
        f"{ident.render()}\n"
        f"trials {len(report.trials)}  failures {report.failures}  lattice condition {lattice}  "
        f"{'FAIL' if failed else 'PASS'}"
    )
    return Outcome(result, EXIT_FAIL if failed else EXIT_OK, text=text)


def _cert_row(cert) -> dict:
    try:
        return verify_certificate(cert).to_dict() | {"status": None}
    except CharTwoUnsupported as exc:
        return {"name": cert.name, "pass": None, "status": "unsupported", "reason": str(exc)}


def cmd_cert_run(args: argparse.Namespace) -> Outcome:
    spec = args.field
    if args.all:
        certs = builtin_certificates(spec)
    elif args.name:
        certs = [builtin_certificate(args.name, spec)]
    else:
        raise InputError("give a certificate name or --all")
    rows = []
    for cert in certs:
        row = _cert_row(cert)
        if row["status"] == "unsupported" and not args.all:
            raise CharTwoUnsupported(row["reason"])
        row["status"] = row["status"] or ("pass" if row["pass"] else "fail")
        rows.append(row)
    failed = any(r["status"] == "fail" for r in rows)
    result = {"field": str(spec), "certificates": rows, "pass": not failed}
    text = "\n".join(f"{r['status'].upper():<12}{r['name']}" for r in rows)
    return Outcome(result, EXIT_FAIL if failed else EXIT_OK, text=text)


def cmd_cert_show(args: argparse.Namespace) -> Outcome:
    cert = builtin_certificate(args.name, args.field)
    data = cert.to_dict()
    lines = [f"{cert.name} [{cert.mode.name}, {cert.size}x{cert.size}]", cert.statement]
    for key, grid in data["matrices"].items():
        if grid is not None:
            lines.append(f"{key}:")
            lines.extend("  " + "  ".join(row) for row in grid)
    return Outcome(data, text="\n".join(lines))


def cmd_vn(args: argparse.Namespace) -> Outcome:
    result = run_experiment(args.experiment, args.shape, args.trials, args.seed)
    bad = [r["index"] for r in result["records"] if not r["consistent"]]
    text = f"{args.experiment} on shape {args.shape}: {args.trials} trials, inconsistent {bad or 'none'}"
    return Outcome(result, EXIT_OK if result["pass"] else EXIT_FAIL, text=text)


# --- parser -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, field_default: str | None = "Q") -> None:
    p.add_argument(
        "--field",
        type=_field,
        default=None if field_default is None else FieldSpec.parse(field_default),
        help="Q, Qi or F<p> for a prime p (default: %(default)s)",
    )
    p.add_argument("--format", choices=("json", "text"), default="json", help="stdout format (default: json)")
    p.add_argument("--report", metavar="PATH", help="also write the full JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankforge", description="Exact rank identities and certificates.")
    parser.add_argument("--version", action="version", version=f"rankforge {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", help="generate an identity by shuffling exponent columns")
    p.add_argument("--basis", required=True, help='pairwise coprime polynomials, e.g. "t-1;t+1;t^2+1"')
    p.add_argument("--lambda", dest="lambda_rows", required=True, help='exponent rows, e.g. "0,0,0;1,1,1;2,1,1"')
    p.add_argument("--seed", type=_seed, default=0, help="shuffle seed (default: 0)")
    _common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("canon", help="canonical divisor chain of a polynomial tuple")
    p.add_argument("--polys", required=True, help='comma-separated polynomials, e.g. "t^2-1,t-1"')
    _common(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("snf", help="Smith normal form of a polynomial matrix")
    p.add_argument("--matrix", required=True, metavar="FILE", help="JSON 2-D array of polynomial strings")
    _common(p)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("verify", help="check an identity on sampled matrices")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--identity", metavar="FILE", help="identity JSON, e.g. the output of gen")
    src.add_argument("--builtin", choices=BUILTIN_NAMES, help="a built-in identity")
    p.add_argument("--trials", type=_positive, default=50, help="number of sampled matrices (default: 50)")
    p.add_argument("--dims", type=_int_list, default=[2, 3, 4], help="dimensions to cycle through (default: 2,3,4)")
    p.add_argument("--seed", type=_seed, default=0, help="run seed (default: 0)")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="counterexample search budget")
    _common(p, field_default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cert", help="free-algebra certificates")
    cert_sub = p.add_subparsers(dest="action", required=True)
    q = cert_sub.add_parser("run", help="verify certificates symbolically")
    q.add_argument("name", nargs="?", help="certificate name")
    q.add_argument("--all", action="store_true", help="run every built-in certificate")
    _common(q)
    q.set_defaults(func=cmd_cert_run)
    q = cert_sub.add_parser("show", help="print a certificate's matrices")
    q.add_argument("name")
    _common(q)
    q.set_defaults(func=cmd_cert_show)

    p = sub.add_parser("vn", help="experiments in the block-matrix von Neumann model")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--shape", type=BlockShape.parse, default=BlockShape((2, 3)), help="block sizes (default: 2,3)")
    p.add_argument("--trials", type=_positive, default=50, help="number of trials (default: 50)")
    p.add_argument("--seed", type=_seed, default=0, help="run seed (default: 0)")
    _common(p, field_default="Qi")
    p.set_defaults(func=cmd_vn)
    return parser


def _config(args: argparse.Namespace) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key == "func":
            continue
        if isinstance(value, (FieldSpec, BlockShape)):
            value = str(value)
        out[key] = value
    return out


def _write_report(path: str, config: dict, outcome: Outcome) -> None:
    report = {
        "tool": f"rankforge {__version__}",
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "exit_code": outcome.code,
        "result": outcome.result,
    }
    try:
        Path(path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write report to {path}: {exc.strerror}") from None


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.subcommand == "vn" and str(args.field) != "Qi":
        print("rankforge: error: the von Neumann model is defined over Qi only", file=stderr)
        return EXIT_INPUT
    func: Callable[[argparse.Namespace], Outcome] = args.func
    try:
        outcome = func(args)
        if args.report:
            _write_report(args.report, _config(args), outcome)
    except (InputError, CharTwoUnsupported) as exc:
        print(f"rankforge: error: {exc}", file=stderr)
        return EXIT_INPUT
    except RankforgeError as exc:
        print(f"rankforge: error: {exc}", file=stderr)
        return EXIT_INPUT
    if args.format == "text" and outcome.text is not None:
        print(outcome.text, file=stdout)
    else:
        print(json.dumps(outcome.printed, indent=2), file=stdout)
    return outcome.code


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
