"""Command-line front end: ``ckhopf {show,verify,contract,enumerate,distinguish}``.

Exit codes: 0 success, 1 verification failure, 2 singular contraction,
3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Sequence

from .catalog import (
    CATALOG_NAMES,
    DEFAULT_MODEL,
    MODELS,
    allowed_contractions,
    enumerate_primitive_sets,
    from_catalog,
    isomorphism_distinguishers,
)
from .coeff import DEFAULT_ORDER, JAssignment, SemanticsWarning, SingularityError, evaluate
from .hopf import QuantumAlgebra, check_hopf_axioms, contract_hopf, quantum_from_json, quantum_to_json
from .liealg import LieAlgebra, check_jacobi, ck_orthogonal, lie_from_json, lie_to_json, pair_label

EXIT_OK, EXIT_FAILED, EXIT_SINGULAR, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid order {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("truncation order must be at least 2")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_order, default=DEFAULT_ORDER, help="z truncation order N (default 6)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--dual-semantics", choices=("limit", "strict"), default="limit")

    parser = _Parser(
        prog="ckhopf",
        description="Cayley-Klein contractions of quantum algebras.",
        epilog="Targets: " + ", ".join(CATALOG_NAMES) + ", so:N (classical so(N+1; j)), or a JSON file.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("show", parents=[common], help="print relations and Hopf maps")
    p.add_argument("target")
    p = sub.add_parser("verify", parents=[common], help="run the axiom checks")
    p.add_argument("target")
    p = sub.add_parser("contract", parents=[common], help="substitute j-values and print the result")
    p.add_argument("target")
    p.add_argument("--j", required=True, help="e.g. dual,dual or j1=dual,j2=unit")
    p = sub.add_parser("enumerate", parents=[common], help="primitive sets and allowed contractions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--model", choices=sorted(MODELS), default=DEFAULT_MODEL)
    p = sub.add_parser("distinguish", parents=[common], help="compare Hopf invariants of two algebras")
    p.add_argument("first")
    p.add_argument("second")
    return parser


# ---------------------------------------------------------------------------
# targets


def load_target(target: str, order: int) -> QuantumAlgebra | LieAlgebra:
    if target in CATALOG_NAMES:
        return from_catalog(target, order)
    if target.startswith("so:"):
        try:
            n = int(target[3:])
        except ValueError:
            raise UsageError(f"bad classical target {target!r}; use so:N") from None
        if n < 1:
            raise UsageError("so:N needs N >= 1")
        return ck_orthogonal(n, order)
    path = Path(target)
    if not path.is_file():
        raise UsageError(f"unknown target {target!r}; known: {', '.join(CATALOG_NAMES)}, so:N, or a JSON file")
    try:
        data = json.loads(path.read_text())
        if "coproduct" in data:
            return quantum_from_json(data)
        if "brackets" in data:
            return lie_from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {target}: {exc}") from None
    raise UsageError(f"{target} is neither a quantum algebra nor a Lie algebra document")


def _emit(out, payload, fmt: str) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(payload if payload.endswith("\n") else payload + "\n")


def _dump(obj) -> dict:
    return quantum_to_json(obj) if isinstance(obj, QuantumAlgebra) else lie_to_json(obj)


def _text(obj) -> str:
    return str(obj) or "(abelian)"


# ---------------------------------------------------------------------------
# commands


def cmd_show(args, out) -> int:
    obj = load_target(args.target, args.order)
    _emit(out, _dump(obj) if args.format == "json" else _text(obj), args.format)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    obj = load_target(args.target, args.order)
    if isinstance(obj, LieAlgebra):
        violations = check_jacobi(obj)
        if args.format == "json":
            payload = {
                "target": args.target,
                "checks": {"jacobi": {"passed": not violations, "failures": [
                    {"where": ",".join(v.triple), "residual": {k: str(s) for k, s in v.residual.items()}}
                    for v in violations
                ]}},
                "passed": not violations,
            }
            _emit(out, payload, "json")
        else:
            lines = [f"{'jacobi':<15} {'pass' if not violations else 'FAIL'}"]
            lines += [f"    {', '.join(v.triple)}: residual {v.residual}" for v in violations]
            _emit(out, "\n".join(lines), "text")
        return EXIT_OK if not violations else EXIT_FAILED

    report = check_hopf_axioms(obj)
    if args.format == "json":
        payload = {
            "target": args.target,
            "N": obj.order,
            "checks": {
                name: {"passed": c.passed, "failures": [{"where": w, "residual": r} for w, r in c.failures]}
                for name, c in report.checks.items()
            },
            "passed": report.passed,
        }
        _emit(out, payload, "json")
    else:
        lines = [f"{args.target} at N = {obj.order}"] + report.lines()
        lines.append("all checks pass" if report.passed else "verification FAILED")
        _emit(out, "\n".join(lines), "text")
    return EXIT_OK if report.passed else EXIT_FAILED


def _contract_lie(L: LieAlgebra, a: JAssignment, mode: str) -> LieAlgebra:
    def ev(c):
        return evaluate(c, a, mode)

    table = {}
    for (x, y), vec in L.brackets.items():
        where = f"[{L.basis[x]}, {L.basis[y]}]"
        try:
            table[(x, y)] = {c: ev(v) for c, v in vec.items()}
        except SingularityError as exc:
            raise exc.at(where) from None
    return LieAlgebra(L.basis, table, L.order)


def cmd_contract(args, out) -> int:
    obj = load_target(args.target, args.order)
    try:
        a = JAssignment.parse(args.j)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad --j value {args.j!r}: {exc}") from None
    needed = obj.nparams() if isinstance(obj, QuantumAlgebra) else max(
        (v.nvars() for vec in obj.brackets.values() for v in vec.values()), default=0
    )
    if a.n < needed:
        raise UsageError(f"--j assigns {a.n} parameters but the target uses {needed}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SemanticsWarning)
        try:
            if isinstance(obj, QuantumAlgebra):
                result = contract_hopf(obj, a, args.dual_semantics)
            else:
                result = _contract_lie(obj, a, args.dual_semantics)
        except SingularityError as exc:
            if args.format == "json":
                _emit(out, {"target": args.target, "assignment": a.as_dict(), "singular": True,
                            "location": exc.location, "message": str(exc)}, "json")
            else:
                _emit(out, f"singular contraction of {args.target} at {a}:\n  {exc}", "text")
            return EXIT_SINGULAR
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(out, _dump(result) if args.format == "json" else _text(result), args.format)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    n, k = args.n, args.k
    if n < 1 or k < 0 or 2 * k > n + 1:
        raise UsageError("need n >= 1 and 0 <= 2k <= n+1")
    exact = n == 2 and k == 1
    rows = []
    for p in enumerate_primitive_sets(n, k):
        verdicts = allowed_contractions(n, p, args.model, exact=exact, order=args.order)
        rows.append((p, verdicts))
    if args.format == "json":
        payload = [
            {
                "primitive_set": [pair_label(mu, nu) for mu, nu in p],
                "verdicts": [v.to_json() for v in verdicts],
            }
            for p, verdicts in rows
        ]
        _emit(out, payload, "json")
        return EXIT_OK
    basis = "exact" if exact else f"model-based ({args.model})"
    lines = [f"so_z({n + 1}; j): {len(rows)} ordered primitive sets of size {k}; verdicts {basis}"]
    width = max((len(" ".join(pair_label(*q) for q in p)) for p, _ in rows), default=0)
    for p, verdicts in rows:
        name = " ".join(pair_label(*q) for q in p) or "(none)"
        allowed = sum(v.allowed for v in verdicts)
        singular = [str(v.assignment) for v in verdicts if not v.allowed]
        line = f"{name:<{width}}  {allowed}/{len(verdicts)} allowed"
        if singular:
            line += "  singular: " + "; ".join(singular)
        lines.append(line)
    _emit(out, "\n".join(lines), "text")
    return EXIT_OK


def cmd_distinguish(args, out) -> int:
    q1, q2 = load_target(args.first, args.order), load_target(args.second, args.order)
    if not (isinstance(q1, QuantumAlgebra) and isinstance(q2, QuantumAlgebra)):
        raise UsageError("distinguish compares two quantum algebras")
    try:
        report = isomorphism_distinguishers(q1, q2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        payload = {
            "first": args.first,
            "second": args.second,
            "invariants": {k: [_plain(a), _plain(b)] for k, (a, b) in report.invariants.items()},
            "distinguished": report.distinguished,
            "witnesses": list(report.witnesses),
        }
        _emit(out, payload, "json")
    else:
        head = f"{'invariant':<22} {args.first:<20} {args.second}"
        _emit(out, "\n".join([head] + report.lines()), "text")
    return EXIT_OK


def _plain(v):
    return list(v) if isinstance(v, tuple) else v


COMMANDS = {
    "show": cmd_show,
    "verify": cmd_verify,
    "contract": cmd_contract,
    "enumerate": cmd_enumerate,
    "distinguish": cmd_distinguish,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"ckhopf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
