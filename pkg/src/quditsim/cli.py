"""One-shot command-line front end emitting canonical JSON on stdout.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 I/O error.
Diagnostics go to stderr; stdout carries exactly one JSON document. Floats
are serialized with 17 significant digits so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .analysis import (
    entropies,
    entropy_to_dict,
    expect_k,
    expect_q,
    k_distributions,
    partition,
    partition_to_dict,
)
from .fourier import planewave, to_q_rep, to_k_rep
from .gates import build_functional_circuit, circuit_from_dict, run_circuit
from .groups import DigitLabel, QuditSystem, is_prime
from .states import (
    Representation,
    StateVector,
    basis_state,
    probabilities,
    state_from_dict,
    state_to_dict,
    tensor_product,
)
from .verification import DEFAULT_SEED, run_verification

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


class UsageError(Exception):
    """Malformed command arguments; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> Any:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite float {x!r} in payload")
    return format(x, ".17g")


def _emit(obj: Any, out: list[str]) -> None:
    if obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(", ")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _emit(value, out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-digit floats."""
    out: list[str] = []
    _emit(obj, out)
    return "".join(out)


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_digit_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated digits, got {text!r}") from None


def _label_from_args(n: int, d: int, digit_text: str) -> DigitLabel:
    digits = _parse_digit_list(digit_text)
    try:
        return DigitLabel(digits, QuditSystem(n, d))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_transform(args: argparse.Namespace) -> tuple[Any, int]:
    state = state_from_dict(_load_json(args.infile))
    target = Representation(args.to)
    if state.rep is target:
        out = state
    elif target is Representation.Q:
        out = to_q_rep(state)
    else:
        out = to_k_rep(state)
    return state_to_dict(out), EXIT_OK


def _cmd_planewave(args: argparse.Namespace) -> tuple[Any, int]:
    label = _label_from_args(args.n, args.d, args.k)
    return state_to_dict(planewave(label)), EXIT_OK


def _cmd_partition(args: argparse.Namespace) -> tuple[Any, int]:
    label = _label_from_args(args.n, args.d, args.k)
    return partition_to_dict(partition(label)), EXIT_OK


def _cmd_functional(args: argparse.Namespace) -> tuple[Any, int]:
    handlers = state_from_dict(_load_json(args.handlers))
    if handlers.system.d != args.d:
        raise ValueError(
            f"handler state has d={handlers.system.d}, expected d={args.d}"
        )
    m, d = handlers.system.n, args.d
    sources = _parse_digit_list(args.sources)
    if any(not 0 <= x < d for x in sources):
        raise UsageError(f"source digits must lie in [0, {d})")
    # a count mismatch against the handler file is a validation error (exit 2)
    source_label = DigitLabel(sources, QuditSystem(m, d))
    # The amplitude list gives the functional coefficients whether the file
    # is tagged q or k, so a k-rep file is accepted verbatim.
    handler_wires = StateVector(handlers.system, Representation.Q, handlers.amplitudes)
    circuit, layout = build_functional_circuit(m, d)
    start = tensor_product(
        tensor_product(handler_wires, basis_state(source_label, Representation.Q)),
        basis_state(DigitLabel((0,), QuditSystem(1, d)), Representation.Q),
    )
    out = run_circuit(circuit, start)
    marginal = probabilities(out).reshape((d,) * circuit.system.n)
    holder_axes = tuple(a for a in range(circuit.system.n) if a != layout.holder_wire)
    holder_probs = marginal.sum(axis=holder_axes)
    return {
        "state": state_to_dict(out),
        "holder_probabilities": [float(p) for p in holder_probs],
    }, EXIT_OK


def _cmd_run(args: argparse.Namespace) -> tuple[Any, int]:
    circuit = circuit_from_dict(_load_json(args.circuit))
    state = state_from_dict(_load_json(args.infile))
    return state_to_dict(run_circuit(circuit, state)), EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> tuple[Any, int]:
    state = state_from_dict(_load_json(args.infile))
    input_rep = state.rep.value
    if state.rep is Representation.K:
        state = to_q_rep(state)
    report = entropies(state)
    return {
        "n": state.system.n,
        "d": state.system.d,
        "input_rep": input_rep,
        "expect_q": [float(x) for x in expect_q(state)],
        "expect_k": [float(x) for x in expect_k(state)],
        "k_distributions": [
            [float(p) for p in row] for row in k_distributions(state)
        ],
        "entropy": entropy_to_dict(report),
        "d_is_prime": is_prime(state.system.d),
    }, EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> tuple[Any, int]:
    if args.d < 2 or args.n < 1:
        raise UsageError(f"need d >= 2 and n >= 1, got d={args.d}, n={args.n}")
    report = run_verification(args.d, args.n, seed=args.seed)
    if report["all_pass"]:
        return report, EXIT_OK
    failing = [c["name"] for c in report["checks"] if not c["pass"]]
    print(f"failing checks: {', '.join(failing)}", file=sys.stderr)
    return report, EXIT_VALIDATION


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quditsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="Fourier-transform a state file")
    p.add_argument("--in", dest="infile", required=True, metavar="STATE_JSON")
    p.add_argument("--to", required=True, choices=["q", "k"])
    p.set_defaults(handler=_cmd_transform)

    p = sub.add_parser("planewave", help="q-rep state of one basis functional")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", required=True, metavar="DIGITS")
    p.set_defaults(handler=_cmd_planewave)

    p = sub.add_parser("partition", help="basis classes induced by a functional")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", required=True, metavar="DIGITS")
    p.set_defaults(handler=_cmd_partition)

    p = sub.add_parser(
        "functional", help="run the functional-creation circuit on handler state"
    )
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--handlers", required=True, metavar="STATE_JSON")
    p.add_argument("--sources", required=True, metavar="DIGITS")
    p.set_defaults(handler=_cmd_functional)

    p = sub.add_parser("run", help="apply a circuit file to a state file")
    p.add_argument("--circuit", required=True, metavar="CIRCUIT_JSON")
    p.add_argument("--in", dest="infile", required=True, metavar="STATE_JSON")
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("analyze", help="expectations, distributions, entropies")
    p.add_argument("--in", dest="infile", required=True, metavar="STATE_JSON")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("verify", help="run the invariant sweep for one system")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"seed for randomized sweeps (default {DEFAULT_SEED})",
    )
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    sys.stdout.write(dumps_canonical(payload) + "\n")
    return code


def entrypoint() -> None:
    raise SystemExit(main())
