"""Invariant suites for every module, runnable from the ``vsq verify`` command.

Each check returns a :class:`CheckResult`. Random samples come from a fixed
numpy generator, so a run is reproducible.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from vsq import compiler, encoding, levels, pulses, qmath, runtime
from vsq.compiler import CNOT_RS, CNOT_SR, Circuit, RawPulse, RunConfig, RyR, RyS
from vsq.qmath import embed_two_level, max_abs_diff

CANONICAL_ANGLES = (0.0, math.pi / 6, math.pi / 4, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi)
CNOT_RS_PERM = {0: 0, 1: 1, 2: 3, 3: 2}
CNOT_SR_PERM = {0: 0, 1: 3, 2: 2, 3: 1}


@dataclass
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def random_unitary2(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return v / np.linalg.norm(v)


def random_pulse(rng: np.random.Generator, allow_negative: bool = True) -> pulses.Pulse:
    i, j = sorted(rng.choice(4, size=2, replace=False))
    lo = -4 * math.pi if allow_negative else 0.0
    return pulses.Pulse((int(i), int(j)), float(rng.uniform(lo, 4 * math.pi)), float(rng.uniform(0, 2 * math.pi)))


def random_circuit(rng: np.random.Generator, max_len: int = 8) -> Circuit:
    gates = []
    for _ in range(int(rng.integers(0, max_len + 1))):
        kind = rng.choice(["ry_r", "ry_s", "cnot_rs", "cnot_sr", "raw_pulse"])
        if kind == "ry_r":
            gates.append(RyR(rng.uniform(-4 * math.pi, 4 * math.pi)))
        elif kind == "ry_s":
            gates.append(RyS(rng.uniform(-4 * math.pi, 4 * math.pi)))
        elif kind == "cnot_rs":
            gates.append(CNOT_RS)
        elif kind == "cnot_sr":
            gates.append(CNOT_SR)
        else:
            p = random_pulse(rng)
            gates.append(RawPulse(p.transition, p.angle, p.phase))
    return Circuit(tuple(gates))


def column_permutation(u: np.ndarray, tol: float) -> dict[int, int] | None:
    """Column -> row map if every column has exactly one entry of unit modulus."""
    perm = {}
    for col in range(u.shape[1]):
        mags = np.abs(u[:, col])
        rows = [r for r, m in enumerate(mags) if abs(m - 1) <= tol]
        if len(rows) != 1 or np.any(np.delete(mags, rows[0]) > tol):
            return None
        perm[col] = rows[0]
    return perm


def _ok(cond: bool, detail: str) -> tuple[bool, str]:
    return bool(cond), detail


# -- qmath ---------------------------------------------------------------


def _qmath_checks(tol: float, rng: np.random.Generator):
    def bilinear():
        worst = 0.0
        for _ in range(100):
            a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
            alpha = complex(rng.normal(), rng.normal())
            lhs = qmath.tensor(alpha * a + b, c)
            rhs = alpha * qmath.tensor(a, c) + qmath.tensor(b, c)
            worst = max(worst, max_abs_diff(lhs, rhs))
        return _ok(worst <= 1e-14, f"max deviation {worst:.3g}")

    def embed_unitary():
        bad = 0
        for _ in range(50):
            u = random_unitary2(rng)
            for i, j in itertools.combinations(range(4), 2):
                bad += not qmath.is_unitary(embed_two_level(u, i, j), tol)
        return _ok(bad == 0, f"{bad} non-unitary embeddings")

    def norm_preserved():
        worst = 0.0
        for _ in range(200):
            u = embed_two_level(random_unitary2(rng), 0, 3) @ embed_two_level(random_unitary2(rng), 1, 2)
            v = random_state(rng) * rng.uniform(0.1, 3)
            worst = max(worst, abs(np.linalg.norm(qmath.apply(u, v, tol)) - np.linalg.norm(v)))
        return _ok(worst <= 1e-12, f"max norm change {worst:.3g}")

    def phase_equivalence():
        eq = qmath.equal_up_to_global_phase
        fails = 0
        for _ in range(100):
            u = pulses.pulse_unitary(random_pulse(rng)) @ embed_two_level(random_unitary2(rng), 0, 2)
            th1, th2 = rng.uniform(0, 2 * math.pi, size=2)
            v = np.exp(1j * th1) * u
            w = np.exp(1j * th2) * v
            fails += not eq(u, u, tol)
            fails += eq(u, v, tol) != eq(v, u, tol)
            if eq(u, v, tol) and eq(v, w, tol):
                fails += not eq(u, w, 2 * tol + tol**2 / 4)
        fails += eq(qmath.I4, np.diag([1, 1, 1, -1]), tol)
        return _ok(fails == 0, f"{fails} violations of reflexive/symmetric/transitive")

    return [
        ("tensor bilinear", bilinear),
        ("embed preserves unitarity", embed_unitary),
        ("apply preserves norm", norm_preserved),
        ("global-phase equivalence laws", phase_equivalence),
    ]


# -- encoding ------------------------------------------------------------


def _encoding_checks(tol: float, rng: np.random.Generator):
    def group_law():
        worst = 0.0
        for _ in range(100):
            a, b = rng.uniform(-4 * math.pi, 4 * math.pi, size=2)
            for rot in (encoding.rotation_S, encoding.rotation_R):
                worst = max(worst, max_abs_diff(rot(a) @ rot(b), rot(a + b)))
        return _ok(worst <= tol, f"max deviation {worst:.3g}")

    def commute():
        worst = 0.0
        for _ in range(100):
            a, b = rng.uniform(-4 * math.pi, 4 * math.pi, size=2)
            r, s = encoding.rotation_R(a), encoding.rotation_S(b)
            worst = max(worst, float(np.max(np.abs(r @ s - s @ r))))
        return _ok(worst <= 1e-13, f"max commutator entry {worst:.3g}")

    def reconciliation():
        xr = qmath.tensor(encoding.X, qmath.I2)
        xs = qmath.tensor(qmath.I2, encoding.X)
        ry_pi = encoding.ry(math.pi)
        d1 = max_abs_diff(xr @ encoding.cnot_rs_formula() @ xr, embed_two_level(ry_pi, 2, 3))
        d2 = max_abs_diff(xs @ encoding.cnot_sr_formula() @ xs, embed_two_level(ry_pi, 1, 3))
        return _ok(max(d1, d2) <= 1e-14, f"deviations {d1:.3g}, {d2:.3g}")

    def truth_tables():
        cases = [
            ("cnot_rs_formula", encoding.cnot_rs_formula(), {0: 1, 1: 0, 2: 2, 3: 3}),
            ("cnot_sr_formula", encoding.cnot_sr_formula(), {0: 2, 1: 1, 2: 0, 3: 3}),
            ("cnot_rs pulse", pulses.program_unitary(compiler.compile(Circuit((CNOT_RS,)))), CNOT_RS_PERM),
            ("cnot_sr pulse", pulses.program_unitary(compiler.compile(Circuit((CNOT_SR,)))), CNOT_SR_PERM),
        ]
        bad = [name for name, u, perm in cases if column_permutation(u, tol) != perm]
        return _ok(not bad, "mismatch: " + ", ".join(bad) if bad else "4 tables")

    def spinor_period():
        d = max_abs_diff(encoding.rotation_S(2 * math.pi) @ encoding.rotation_S(2 * math.pi), qmath.I4)
        return _ok(d <= tol, f"deviation {d:.3g}")

    return [
        ("rotation group law", group_law),
        ("R/S rotations commute", commute),
        ("CNOT formula X-conjugation", reconciliation),
        ("CNOT truth tables", truth_tables),
        ("4pi spinor period", spinor_period),
    ]


# -- pulses --------------------------------------------------------------


def _pulse_checks(tol: float, rng: np.random.Generator):
    def unitary():
        bad = sum(not qmath.is_unitary(pulses.pulse_unitary(random_pulse(rng)), tol) for _ in range(1000))
        return _ok(bad == 0, f"{bad}/1000 non-unitary")

    def synthesis():
        worst = 0.0
        angles = list(CANONICAL_ANGLES) + list(rng.uniform(0, 4 * math.pi, size=50))
        for phi in angles:
            for gate, ref in ((RyS(phi), encoding.rotation_S), (RyR(phi), encoding.rotation_R)):
                (group,) = pulses.gate_to_pulses(gate)
                worst = max(worst, max_abs_diff(pulses.group_unitary(group), ref(phi)))
        return _ok(worst <= tol, f"{len(angles)} angles, max deviation {worst:.3g}")

    def disjoint_commute():
        worst = 0.0
        pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
        for _ in range(100):
            a, b = pairs[int(rng.integers(3))]
            p = pulses.Pulse(a, rng.uniform(0, 4 * math.pi), rng.uniform(0, 2 * math.pi))
            q = pulses.Pulse(b, rng.uniform(0, 4 * math.pi), rng.uniform(0, 2 * math.pi))
            up, uq = pulses.pulse_unitary(p), pulses.pulse_unitary(q)
            worst = max(worst, max_abs_diff(up @ uq, uq @ up))
        return _ok(worst <= 1e-13, f"max deviation {worst:.3g}")

    return [
        ("pulse unitarity", unitary),
        ("rotation synthesis identity", synthesis),
        ("disjoint pulses commute", disjoint_commute),
    ]


# -- levels --------------------------------------------------------------


def _level_checks(tol: float, rng: np.random.Generator):
    d = levels.builtin_pr_laf3()

    def symmetric_positive():
        bad = 0
        for name in ("fig3", "fig4"):
            s = levels.scheme(name)
            for i, j in itertools.permutations(range(4), 2):
                f1 = levels.transition_frequency(s, d, (i, j))
                bad += not (f1 > 0 and f1 == levels.transition_frequency(s, d, (j, i)))
        return _ok(bad == 0, f"{bad} asymmetric or non-positive")

    def monotone():
        bad = [t.label for t in d.terms if any(b <= a for a, b in zip(
            [s.offset_mhz for s in t.sublevels], [s.offset_mhz for s in t.sublevels][1:]))]
        return _ok(not bad, "non-monotone: " + ", ".join(bad) if bad else "all ladders increase")

    def roundtrip():
        d2 = levels.SpectroscopicDataset.from_json(d.to_json())
        worst = 0.0
        for t in d.terms:
            for sub in [None] + [s.mI for s in t.sublevels]:
                lvl = levels.PhysLevel(t.label, sub)
                worst = max(worst, abs(levels.level_frequency(d, lvl) - levels.level_frequency(d2, lvl)))
        return _ok(worst <= 1e-6, f"max frequency change {worst:.3g} Hz")

    def listed_bijection():
        try:
            for name in ("fig3", "fig4"):
                levels.match_listed_transitions(levels.scheme(name), d)
        except ValueError as exc:
            return False, str(exc)
        return True, "fig3, fig4"

    def schemes_valid():
        bad = [n for n in ("fig3", "fig4") if not levels.validate(levels.scheme(n), d).passed]
        return _ok(not bad, "invalid: " + ", ".join(bad) if bad else "fig3, fig4 pass")

    return [
        ("transition frequency symmetric", symmetric_positive),
        ("sublevel ladders increase", monotone),
        ("dataset JSON round-trip", roundtrip),
        ("listed transitions match gate set", listed_bijection),
        ("builtin schemes validate", schemes_valid),
    ]


# -- compiler ------------------------------------------------------------


def _compiler_checks(tol: float, rng: np.random.Generator):
    d = levels.builtin_pr_laf3()

    def soundness():
        worst = 0.0
        for _ in range(200):
            c = random_circuit(rng)
            worst = max(worst, max_abs_diff(pulses.program_unitary(compiler.compile(c)), compiler.circuit_unitary(c)))
        return _ok(worst <= tol, f"200 circuits, max deviation {worst:.3g}")

    def time_conservation():
        bad = 0
        for _ in range(50):
            c = random_circuit(rng)
            gates = tuple(
                g if g.kind != "raw_pulse" else RawPulse(g.pulse.transition, abs(g.pulse.angle), g.pulse.phase)
                for g in c.gates
                if g.kind not in ("ry_r", "ry_s") or g.angle >= 0
            )
            prog = compiler.compile(Circuit(gates))
            cfg = RunConfig(rng.uniform(1e5, 1e8), rng.choice([0.0, rng.uniform(0, 1e-6)]))
            for name in ("fig3", "fig4"):
                s = levels.scheme(name)
                sch = compiler.make_schedule(prog, s, d, cfg)
                n = len(sch.group_durations)
                expect = sum(sch.group_durations) + cfg.inter_group_gap * (n - 1) if n else 0.0
                bad += sch.total_time != expect
                bad += any(e.carrier != levels.transition_frequency(s, d, e.transition) for e in sch.entries)
                back = compiler.parse_schedule_csv(compiler.export_schedule(sch))
                bad += tuple(back) != tuple(sorted(sch.entries, key=lambda e: e.t_start))
        return _ok(bad == 0, f"{bad} schedule violations")

    def roundtrip():
        bad = 0
        for _ in range(100):
            c = random_circuit(rng)
            bad += compiler.parse_circuit(compiler.serialize_circuit(c)) != c
            p = compiler.compile(c)
            bad += compiler.parse_program(compiler.serialize_program(p)) != p
        return _ok(bad == 0, f"{bad} round-trip mismatches")

    return [
        ("compiler soundness", soundness),
        ("schedule time/carrier/CSV", time_conservation),
        ("circuit and program round-trip", roundtrip),
    ]


# -- runtime -------------------------------------------------------------


def _runtime_checks(tol: float, rng: np.random.Generator):
    d = levels.builtin_pr_laf3()

    def norm():
        worst = 0.0
        for _ in range(500):
            init = runtime.QuantumState(random_state(rng))
            out = runtime.run_program(compiler.compile(random_circuit(rng)), init)
            worst = max(worst, abs(float(np.linalg.norm(out.amplitudes)) - 1))
        return _ok(worst <= 1e-10, f"max norm drift {worst:.3g}")

    def determinism():
        st = runtime.QuantumState(random_state(rng))
        a = runtime.measure(st, 1234, 2000)
        b = runtime.measure(st, 1234, 2000)
        c = runtime.measure(st, 1234, 2000, batch_size=300)
        e = runtime.measure(st, 1234, 2000, batch_size=300)
        return _ok(a == b and c == e, "repeat runs identical" if a == b else "histograms differ")

    def consistency():
        bad = 0
        for _ in range(20):
            v = random_state(rng)
            v[int(rng.integers(4))] = 0
            st = runtime.QuantumState(v / np.linalg.norm(v))
            shots = int(rng.integers(0, 500))
            h = runtime.measure(st, int(rng.integers(2**63)), shots)
            bad += sum(h.counts.values()) != shots
            bad += any(h.counts.get(k, 0) for k in range(4) if st.amplitudes[k] == 0)
        return _ok(bad == 0, f"{bad} histogram violations")

    def uniform():
        prog = compiler.compile(Circuit((RyR(math.pi / 2), RyS(math.pi / 2))))
        st = runtime.run_program(prog, runtime.ground_state())
        freq = np.zeros(4)
        for seed in range(10):
            h = runtime.measure(st, seed, 10_000)
            freq += [h.counts.get(k, 0) / 10_000 for k in range(4)]
        freq /= 10
        worst = float(np.max(np.abs(freq - 0.25)))
        return _ok(worst <= 0.01, f"max deviation from 1/4: {worst:.4f}")

    def readout():
        bad = [n for n in ("fig3", "fig4") if not runtime.readout_plan(levels.scheme(n), d).distinguishable]
        return _ok(not bad, "indistinguishable: " + ", ".join(bad) if bad else "fig3, fig4")

    return [
        ("norm preservation", norm),
        ("seeded determinism", determinism),
        ("histogram consistency", consistency),
        ("uniform-state frequencies", uniform),
        ("readout distinguishability", readout),
    ]


SUITES: dict[str, Callable] = {
    "qmath": _qmath_checks,
    "encoding": _encoding_checks,
    "pulses": _pulse_checks,
    "levels": _level_checks,
    "compiler": _compiler_checks,
    "runtime": _runtime_checks,
}


def run_all(tol: float = qmath.DEFAULT_TOL, seed: int = 20240611) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for module, build in SUITES.items():
        for name, check in build(tol, rng):
            t0 = time.perf_counter()
            try:
                passed, detail = check()
            except Exception as exc:  # a crashing check is a failed check
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(module, name, passed, detail, time.perf_counter() - t0))
    return results
