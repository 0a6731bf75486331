"""Command-line frontend.

Exit codes: 0 success, 1 usage, 2 malformed input, 3 mathematical
precondition violated, 4 a theorem check found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from .errors import FormatError, PreconditionError
from .polymat import (
    PolyMatrix,
    canonicalize,
    degree_profile,
    rank_rational,
    reduce,
    smith_form,
)
from .realize import (
    SymbolStream,
    controller_realization,
    encode,
    encode_series,
    series_to_stream,
    standard_realization,
)
from .statespace import (
    minimality_report,
    oracle_state_dim,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_PRECONDITION, EXIT_FAILED = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def load_matrix(path: str) -> PolyMatrix:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from None
    return PolyMatrix.from_json(obj)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _matrix_text(rows: list[list[Any]]) -> str:
    return "\n".join("  " + " ".join(json.dumps(e, separators=(",", ":")) for e in r) for r in rows)


def _render_text(report: dict[str, Any]) -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, list) and val and all(isinstance(r, list) for r in val) and key in _MATRIX_KEYS:
            lines.append(f"{key}:")
            lines.append(_matrix_text(val) if val[0] else "  (empty)")
        else:
            lines.append(f"{key}: {json.dumps(val, separators=(',', ':')) if not isinstance(val, str) else val}")
    return "\n".join(lines) + "\n"


_MATRIX_KEYS = {"matrix", "T", "Tinv", "U", "V", "A", "B", "C", "D", "canonical"}


def cmd_analyze(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    prof = degree_profile(g)
    out: dict[str, Any] = {
        "command": "analyze",
        "field": g.spec.p,
        "k": g.k,
        "n": g.n,
        "rank": rank_rational(g),
        "row_degrees": list(prof.row_degrees),
        "extdeg": prof.extdeg,
        "intdeg": prof.intdeg,
        "reduced": prof.reduced,
        "basic": prof.basic,
        "canonical": prof.canonical,
        "mdeg_bounds": [prof.intdeg, prof.extdeg],
    }
    if args.oracle:
        out["oracle_dim"] = oracle_state_dim(g)[0]
    return out, EXIT_OK


def cmd_reduce(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    cert, r = reduce(g)
    out: dict[str, Any] = {
        "command": "reduce",
        "matrix": r.to_lists(),
        "row_degrees": [int(d) for d in r.row_degrees()],
        "extdeg": int(r.extdeg()),
    }
    if args.emit_T:
        out["T"] = cert.T.to_lists()
        out["Tinv"] = cert.Tinv.to_lists()
        out["det"] = cert.det.to_list()
    return out, EXIT_OK


def cmd_smith(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    sf = smith_form(g)
    return {
        "command": "smith",
        "U": sf.U.T.to_lists(),
        "invariant_factors": [f.to_list() for f in sf.invariant_factors],
        "V": sf.V.T.to_lists(),
    }, EXIT_OK


def cmd_canonical(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    c, forney = canonicalize(g)
    return {
        "command": "canonical",
        "canonical": c.to_lists(),
        "forney": list(forney),
        "code_degree": sum(forney),
    }, EXIT_OK


def cmd_realize(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    r = standard_realization(g) if args.form == "standard" else controller_realization(g)
    out = {"command": "realize", "form": args.form}
    out.update(r.to_json())
    return out, EXIT_OK


def encode_stream(g: PolyMatrix, stream: SymbolStream, horizon: int | None, via: str) -> SymbolStream:
    """Encode from the zero state; the default horizon flushes the encoder."""
    if horizon is None:
        horizon = len(stream) + max(int(g.max_degree()), 0)
    if via == "series":
        return series_to_stream(encode_series(g, stream.columns(), horizon), horizon)
    pad = stream.symbols[:horizon] + ((0,) * g.k,) * max(horizon - len(stream), 0)
    return encode(controller_realization(g), SymbolStream(g.spec, g.k, pad))


def cmd_encode(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {args.input}: {exc.strerror}") from None
    stream = SymbolStream.parse(text, g.spec, g.k)
    out = encode_stream(g, stream, args.horizon, args.via)
    return {"command": "encode", "output": [list(s) for s in out.symbols]}, EXIT_OK


def cmd_oracle(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    dim, states = oracle_state_dim(g)
    return {
        "command": "oracle",
        "oracle_dim": dim,
        "basis_states": [s.to_lists() for s in states],
    }, EXIT_OK


def cmd_verify(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    check = {1: verify_theorem1, 2: verify_theorem2, 3: verify_theorem3}[args.theorem]
    rep = check(g)
    out = {"command": "verify"}
    out.update(rep.to_json())
    return out, EXIT_OK if rep.passed else EXIT_FAILED


def cmd_minimal(args: argparse.Namespace, g: PolyMatrix) -> tuple[dict[str, Any], int]:
    rep = minimality_report(g)
    out = {"command": "minimal", "sandwich": [rep.intdeg, rep.oracle_dim, rep.extdeg]}
    out.update(rep.to_json())
    if rep.kernel_dim is not None and rep.oracle_dim != rep.code_degree + rep.kernel_dim:
        return out, EXIT_FAILED
    return out, EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace, PolyMatrix], tuple[dict[str, Any], int]]] = {
    "analyze": cmd_analyze,
    "reduce": cmd_reduce,
    "smith": cmd_smith,
    "canonical": cmd_canonical,
    "realize": cmd_realize,
    "encode": cmd_encode,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "minimal": cmd_minimal,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="convstate", description="State-space analysis of convolutional codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("matrix", help="matrix JSON file")
        sp.add_argument("--json", action="store_true", help="canonical JSON output")
        if name == "analyze":
            sp.add_argument("--oracle", action="store_true", help="also compute the exact state dimension")
        elif name == "reduce":
            sp.add_argument("--emit-T", dest="emit_T", action="store_true")
        elif name == "realize":
            sp.add_argument("--form", choices=["controller", "standard"], default="controller")
        elif name == "encode":
            sp.add_argument("--input", required=True, help="symbol stream file")
            sp.add_argument("--horizon", type=int)
            sp.add_argument("--via", choices=["series", "encoder"], default="encoder")
        elif name == "verify":
            sp.add_argument("--theorem", type=int, choices=[1, 2, 3], required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "encode" and args.horizon is not None and args.horizon < 0:
        print("usage error: --horizon must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        g = load_matrix(args.matrix)
        report, code = COMMANDS[args.command](args, g)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except PreconditionError as exc:
        print(f"precondition violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        sys.stdout.write(dump_json(report) + "\n")
    elif args.command == "encode":
        sys.stdout.write("".join(" ".join(map(str, s)) + "\n" for s in report["output"]))
    else:
        sys.stdout.write(_render_text(report))
    if code == EXIT_FAILED:
        print("verification FAILED", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
