"""Command-line interface.

Exit codes: 0 success, 1 verification or comparison failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import FORMULAS, compare_block, format_scaling, scaling_study
from .blocks import BLOCKS, build_block
from .circuit import CircuitError
from .export import export, from_json
from .gcd import GcdOptions, build_gcd
from .resources import resource_report
from .verify import EXHAUSTIVE_CAP, exhaustive_verify, random_verify, run_gcd

OK, FAILED, USAGE = 0, 1, 2


def _format_report(rep) -> str:
    return (f"cnot={rep.cnot_count} toffoli={rep.toffoli_count} not={rep.not_count} "
            f"depth=[{rep.cnot_depth};{rep.toffoli_depth}] total_depth={rep.total_depth} "
            f"ancillae={rep.ancillae}")


def _options(args) -> GcdOptions:
    return GcdOptions(steps=getattr(args, "steps", None), handle_zero_b=not getattr(args, "no_zero_b_fix", False))


def cmd_synth(args) -> int:
    circuit, layout = build_gcd(args.n, _options(args))
    Path(args.out).write_text(export(circuit, args.format))
    print(f"n={args.n} steps={layout.steps} qubits={circuit.qubit_count} {_format_report(resource_report(circuit))}")
    print(f"wrote {args.format} to {args.out}")
    return OK


def cmd_simulate(args) -> int:
    circuit, layout = build_gcd(args.n, _options(args))
    r = run_gcd(circuit, layout, args.a, args.b)
    print(f"gcd_out={r.gcd_out} inputs_restored={r.inputs_restored} "
          f"ancillae_clear={r.ancillae_clear} active_steps={r.active_steps}")
    return OK if r.inputs_restored and r.ancillae_clear else FAILED


def cmd_verify(args) -> int:
    opts = _options(args)
    if args.random is not None:
        report = random_verify(args.n, args.random, opts, seed=args.seed)
    else:
        if args.n > EXHAUSTIVE_CAP:
            print(f"error: exhaustive verification is capped at n={EXHAUSTIVE_CAP}; "
                  f"try --random <trials>", file=sys.stderr)
            return USAGE
        report = exhaustive_verify(args.n, opts)
    print(report.summary())
    for a, b, r in report.failures[:10]:
        print(f"  FAIL a={a} b={b} -> {r}")
    return OK if report.ok else FAILED


def cmd_analyze(args) -> int:
    if args.block in FORMULAS:
        cmp = compare_block(args.block, args.n)
        print(cmp.format())
        return OK if cmp.ok else FAILED
    print(f"block={args.block} n={args.n} (no closed-form reference)")
    print(_format_report(resource_report(build_block(args.block, args.n))))
    return OK


def cmd_scaling(args) -> int:
    print(format_scaling(scaling_study(args.max_n)))
    return OK


def cmd_export(args) -> int:
    circuit = from_json(Path(args.input).read_text())
    text = export(circuit, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="revgcd", description="Reversible binary-GCD circuit synthesis")
    sub = p.add_subparsers(dest="command", required=True)

    def gcd_args(sp):
        sp.add_argument("--n", type=int, required=True, help="bit width")
        sp.add_argument("--steps", type=int, default=None, help="iterations (default 2n)")
        sp.add_argument("--no-zero-b-fix", action="store_true", help="skip the B=0 pre-swap")

    sp = sub.add_parser("synth", help="build the full GCD circuit and write it out")
    gcd_args(sp)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("qasm2", "json"), default="json")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("simulate", help="run the circuit on one input pair")
    gcd_args(sp)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="check the circuit against gcd() on many inputs")
    gcd_args(sp)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all input pairs (default)")
    mode.add_argument("--random", type=int, metavar="TRIALS", help="random input pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("analyze", help="compare a block's resources to its closed form")
    sp.add_argument("--block", required=True, choices=sorted(BLOCKS))
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("scaling", help="depth and size of full circuits for n = 8, 16, ...")
    sp.add_argument("--max-n", type=int, required=True)
    sp.set_defaults(func=cmd_scaling)

    sp = sub.add_parser("export", help="convert a JSON circuit to qasm2 or json")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--format", choices=("qasm2", "json"), required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CircuitError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
