"""Command-line front end: ``ketsim {factor,qft,order,gates}``.

Exit codes: 0 success, 1 usage or validation error, 2 factoring ran out
of attempts.  With ``--json`` a single JSON document goes to stdout.
"""
from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path
from typing import List, Optional

from . import qft as qft_mod
from . import shor
from .measurement import make_stream
from .state import basis_ket, from_records, norm

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2
STATE_FILE_NORM_TOLERANCE = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(x: float) -> float:
    """Round to 12 significant digits; never emit -0.0."""
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def _fmt(x: float) -> str:
    return f"{_num(x):.12g}"


def _emit(envelope: dict) -> None:
    sys.stdout.write(json.dumps(envelope, indent=2) + "\n")


def _envelope(command: str, inputs: dict, seed, result, traces=None) -> dict:
    env = {"command": command, "inputs": inputs, "seed": seed, "result": result}
    if traces is not None:
        env["traces"] = traces
    return env


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(64)


def cmd_factor(args) -> int:
    seed = _seed(args)
    n = args.N
    try:
        shor.validate_input(n)
    except shor.InvalidInput as exc:
        raise UsageError(f"{exc} ({type(exc).__name__}); {exc.hint}") from exc
    config = shor.ShorConfig(seed=seed, qubits_override=args.qubits,
                             max_attempts_override=args.attempts)
    if args.qubits is not None and (1 << args.qubits) <= n - 1:
        raise UsageError(f"--qubits {args.qubits} too small to hold residues mod {n}")
    res = shor.shor_factor(n, config)
    traces = [t.to_dict() for t in res.traces]
    result = {
        "N": n,
        "qubits": res.qubits,
        "max_attempts": res.max_attempts,
        "attempts_used": len(res.traces),
        "factors": list(res.factors) if res.factors else None,
    }
    if args.json:
        inputs = {"N": n, "attempts": args.attempts, "qubits": args.qubits}
        _emit(_envelope("factor", inputs, seed, result, traces))
    else:
        print(f"N={n} q={res.qubits} seed={seed} max_attempts={res.max_attempts}")
        for i, t in enumerate(res.traces, 1):
            if t.gcd_shortcut is not None:
                print(f"  attempt {i}: x={t.chosen_x} shares factor {t.gcd_shortcut} with N")
                continue
            outcome = f"factors {t.factors[0]} and {t.factors[1]}" if t.factors else t.failure_reason.value
            print(f"  attempt {i}: x={t.chosen_x} k={t.measured_k} "
                  f"denominators={t.convergent_denominators} r={t.accepted_r} -> {outcome}")
        if res.factors:
            a1, a2 = res.factors
            print(f"Factors a1={a1} and a2={a2} have been found.")
        else:
            print("No factors found; try another seed or more attempts.")
    return EXIT_OK if res.factors else EXIT_EXHAUSTED


def _load_state_file(path: Path):
    try:
        records = json.loads(path.read_text())
        state = from_records(records)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"malformed state file {path}: {exc}") from exc
    length = norm(state)
    if abs(length - 1.0) > STATE_FILE_NORM_TOLERANCE:
        raise UsageError(f"state in {path} is not normalized (norm {length:.12g})")
    return state


def cmd_qft(args) -> int:
    if (args.basis is None) == (args.state_file is None):
        raise UsageError("give exactly one of --basis or --state-file")
    if args.state_file is not None:
        if args.method != "circuit":
            raise UsageError(f"--method {args.method} only accepts --basis input")
        state = _load_state_file(args.state_file)
        if args.qubits is not None and args.qubits != state.width:
            raise UsageError(f"--qubits {args.qubits} does not match state width {state.width}")
        q = state.width
    else:
        if args.qubits is None:
            raise UsageError("--basis requires --qubits")
        q, j = args.qubits, args.basis
        if q < 1 or not 0 <= j < (1 << q):
            raise UsageError(f"--basis {j} out of range for {q} qubits")
        state = basis_ket(q, j)

    if args.method == "circuit":
        out = qft_mod.run_circuit(qft_mod.build_qft_circuit(q), state)
    elif args.method == "direct":
        out = qft_mod.qft_direct(args.basis, q)
    else:
        out = qft_mod.qft_product_form(args.basis, q)

    terms = [
        {"basis": str(b), "re": _num(a.real), "im": _num(a.imag), "probability": _num(abs(a) ** 2)}
        for b, a in out.basis_terms()
    ]
    if args.json:
        inputs = {"qubits": q, "basis": args.basis,
                  "state_file": str(args.state_file) if args.state_file else None,
                  "method": args.method}
        _emit(_envelope("qft", inputs, None, {"width": q, "terms": terms}))
    else:
        for t in terms:
            print(f"{t['basis']}  {_fmt(t['re'])}  {_fmt(t['im'])}  {_fmt(t['probability'])}")
    return EXIT_OK


def cmd_order(args) -> int:
    n, x = args.N, args.x
    if n < 3:
        raise UsageError(f"N={n} is too small")
    if not 1 <= x < n:
        raise UsageError(f"x={x} must lie in 1..N-1")
    seed = _seed(args)
    inputs = {"N": n, "x": x, "qubits": args.qubits}
    g = shor.gcd(x, n)
    if g != 1:
        result = {"gcd_shortcut": [g, n // g]}
        if args.json:
            _emit(_envelope("order", inputs, seed, result))
        else:
            print(f"x={x} is not coprime to N={n}: gcd shortcut gives factor {g} (N = {g} * {n // g})")
        return EXIT_OK

    q = args.qubits or shor.default_qubits(n)
    if (1 << q) <= n - 1:
        raise UsageError(f"--qubits {q} too small to hold residues mod {n}")
    k = shor.order_find_quantum(n, x, q, make_stream(seed))
    dens = shor.convergent_denominators(k, q)
    _, r, reason = shor.scan_denominators(n, x, dens)
    candidate = next((d for d in dens if shor.mod_pow(x, d, n) == 1), None)
    result = {
        "qubits": q,
        "measured_k": k,
        "convergent_denominators": dens,
        "candidate_r": candidate,
        "accepted_r": r,
        "failure_reason": reason.value if reason else None,
        "brute_force_order": shor.brute_force_order(x, n),
    }
    if args.json:
        _emit(_envelope("order", inputs, seed, result))
    else:
        print(f"N={n} x={x} q={q} seed={seed}")
        print(f"measured k = {k}  (k/2^q = {k}/{1 << q})")
        print(f"convergent denominators: {dens}")
        print(f"first denominator with x^d = 1 mod N: {candidate}")
        print(f"accepted r for factoring: {r}" + (f" ({reason.value})" if reason else ""))
        print(f"brute-force order: {result['brute_force_order']}")
    return EXIT_OK


def cmd_gates(args) -> int:
    q = args.qubits
    if q < 1:
        raise UsageError(f"--qubits must be >= 1, got {q}")
    circuit = qft_mod.build_qft_circuit(q)
    counts = qft_mod.gate_counts(q)
    if args.json:
        result = {"steps": [s.to_text() for s in circuit.steps], "counts": counts}
        _emit(_envelope("gates", {"qubits": q}, None, result))
    else:
        print(circuit.to_text())
        print(f"# h_and_r={counts['h_and_r']} swaps={counts['swaps']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ketsim", description="Sparse-state quantum algorithm simulator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factor", help="factor N with Shor's algorithm")
    p.add_argument("N", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--attempts", type=int, default=None, help="override the attempt budget")
    p.add_argument("--qubits", type=int, default=None, help="override the register width q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("qft", help="evaluate the quantum Fourier transform")
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--basis", type=int, default=None, help="input basis index j")
    p.add_argument("--state-file", type=Path, default=None,
                   help='JSON array of {"basis": "0101", "re": .., "im": ..}')
    p.add_argument("--method", choices=("circuit", "direct", "product"), default="circuit")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qft)

    p = sub.add_parser("order", help="run one round of quantum order finding")
    p.add_argument("N", type=int)
    p.add_argument("x", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("gates", help="list the QFT circuit and its gate counts")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gates)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code
    seed = getattr(args, "seed", None)
    if seed is not None and not 0 <= seed < 2**64:
        print("ketsim: error: --seed must be a 64-bit unsigned integer", file=sys.stderr)
        return EXIT_USAGE
    for name in ("attempts", "qubits"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            print(f"ketsim: error: --{name} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ketsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
