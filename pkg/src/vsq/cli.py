"""``vsq`` command-line front end.

Exit codes: 0 success, 1 domain error (message prefixed ``error:``), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from vsq import compiler, encoding, levels, pulses, qmath, runtime, verify
from vsq.encoding import basis_label
from vsq.errors import VsqError


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise VsqError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_program(text: str) -> pulses.PulseProgram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if isinstance(doc, dict) and "groups" in doc:
        return compiler.parse_program(text)
    return compiler.compile(compiler.parse_circuit(text))


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = verify.run_all(tol=args.tol)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark}  {r.module:<9} {r.name:<36} {r.detail}")
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} properties passed in {time.perf_counter() - t0:.2f} s")
    failed = [f"{r.module}: {r.name}" for r in results if not r.passed]
    if failed:
        print("error: failed properties: " + "; ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_truth_table(args) -> int:
    gate = compiler.GateOp(args.gate, angle=args.angle if args.gate in compiler.ROTATIONS else None)
    u = pulses.program_unitary(compiler.compile(compiler.Circuit((gate,))))
    perm = verify.column_permutation(u, 1e-12)
    if perm is None:
        print(f"{args.gate} is not a permutation up to phases; matrix:")
    else:
        print(" ".join(f"{basis_label(c)}→{basis_label(r)}" for c, r in perm.items()))
        phases = [u[r, c] for c, r in perm.items()]
        print("phases: (" + ", ".join(_fmt_phase(z) for z in phases) + ")")
    print(qmath.render(u))
    return 0


def _fmt_phase(z: complex) -> str:
    re, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def cmd_compile(args) -> int:
    prog = compiler.compile(compiler.parse_circuit(_read(args.circuit)))
    _emit(compiler.serialize_program(prog), args.out)
    return 0


def cmd_schedule(args) -> int:
    prog = _load_program(_read(args.input))
    cfg = compiler.RunConfig.from_rabi_hz(args.rabi_hz, args.gap_s)
    sch = compiler.make_schedule(prog, levels.scheme(args.scheme), levels.load_dataset(), cfg)
    _emit(compiler.export_schedule(sch), args.out)
    return 0


def cmd_simulate(args) -> int:
    if args.readout and not args.scheme:
        raise VsqError("--readout needs --scheme")
    prog = compiler.compile(compiler.parse_circuit(_read(args.circuit)))
    d = levels.load_dataset()
    if args.scheme:
        # the circuit must be schedulable on the chosen scheme
        compiler.make_schedule(prog, levels.scheme(args.scheme), d, compiler.RunConfig(1.0))
    state = runtime.run_program(prog, runtime.ground_state())
    hist = runtime.measure(state, args.seed, args.shots)
    doc = {"shots": hist.shots, "seed": hist.seed, "counts": hist.labelled()}
    if args.readout:
        plan = runtime.readout_plan(levels.scheme(args.scheme), d)
        doc["emission"] = [runtime.outcome_to_emission(k, plan).to_dict() for k in sorted(hist.counts)]
    _emit(json.dumps(doc, indent=2), args.out)
    return 0


def cmd_levels_show(args) -> int:
    d = levels.load_dataset()
    s = levels.scheme(args.scheme)
    rep = levels.validate(s, d)
    roles = [
        {"role": f"E{k}", "state": basis_label(k), "level": str(lvl), "frequency_hz": levels.level_frequency(d, lvl)}
        for k, lvl in enumerate(s.assignment)
    ]
    carriers = [
        {
            "transition": pulses.format_transition(p),
            "carrier_hz": f,
            "band": "rf" if rep.rf[p] else ("optical" if rep.optical[p] else "other"),
        }
        for p, f in rep.carriers.items()
    ]
    if args.format == "json":
        doc = {
            "scheme": s.name,
            "readout_term": s.readout_term,
            "levels": roles,
            "carriers": carriers,
            "min_separation_hz": rep.min_separation,
            "valid": rep.passed,
            "errors": rep.errors,
        }
        print(json.dumps(doc, indent=2, ensure_ascii=False))
        return 0
    print(f"scheme {s.name} (readout via {s.readout_term})")
    for r in roles:
        print(f"  {r['role']}  |{r['state']}>  {r['level']:<14} {r['frequency_hz']:.9e} Hz")
    for c in carriers:
        print(f"  {c['transition']}  {c['carrier_hz']:.9e} Hz  {c['band']}")
    print(f"  min carrier separation {rep.min_separation:.6g} Hz; {'valid' if rep.passed else 'INVALID'}")
    for e in rep.errors:
        print(f"  ! {e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vsq", description="Two-qubit virtual-spin register on four Pr3+ levels.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every module's invariant suite")
    p.add_argument("--tol", type=float, default=qmath.DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("truth-table", help="basis map and phases of a gate's pulse realization")
    p.add_argument("--gate", required=True, choices=["cnot_rs", "cnot_sr", "ry_r", "ry_s"])
    p.add_argument("--angle", type=float, default=np.pi, help="rotation angle for ry_r/ry_s (rad)")
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("compile", help="circuit JSON -> pulse program JSON")
    p.add_argument("circuit")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("schedule", help="timed pulse schedule as CSV")
    p.add_argument("input", help="circuit or pulse-program JSON")
    p.add_argument("--scheme", required=True, choices=["fig3", "fig4"])
    p.add_argument("--rabi-hz", type=float, required=True, help="Rabi frequency in Hz (Omega = 2*pi*value)")
    p.add_argument("--gap-s", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("simulate", help="run a circuit from the ground state and sample outcomes")
    p.add_argument("circuit")
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--scheme", choices=["fig3", "fig4"])
    p.add_argument("--readout", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("levels", help="inspect level data")
    lsub = p.add_subparsers(dest="levels_command", required=True)
    q = lsub.add_parser("show")
    q.add_argument("--scheme", required=True, choices=["fig3", "fig4"])
    q.add_argument("--format", choices=["json", "table"], default="table")
    q.set_defaults(func=cmd_levels_show)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (VsqError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
