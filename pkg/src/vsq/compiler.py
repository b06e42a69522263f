"""Circuit IR, compilation to pulse programs, timed schedules and file formats.

Circuit JSON::

    {"gates": [{"op": "ry_r", "angle": 1.5707963267948966},
               {"op": "cnot_rs"},
               {"op": "raw_pulse", "transition": "E0-E3", "angle": 3.14, "phase": 1.57}]}

Schedule CSV columns: ``t_start_s,duration_s,carrier_hz,transition,angle_rad,phase_rad``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from vsq import qmath
from vsq.encoding import GATE_NAMES, reference_gate
from vsq.errors import InvalidScheme, InvalidTransition, NegativeAngle, ParseError
from vsq.levels import LevelScheme, SpectroscopicDataset, transition_frequency, validate
from vsq.pulses import (
    DEFAULT_PHASE,
    Pulse,
    PulseProgram,
    format_transition,
    gate_to_pulses,
    parse_transition,
)

ROTATIONS = ("ry_r", "ry_s")


@dataclass(frozen=True)
class GateOp:
    kind: str
    angle: float | None = None
    pulse: Pulse | None = None

    def __post_init__(self):
        if self.kind not in GATE_NAMES:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if (self.angle is not None) != (self.kind in ROTATIONS):
            raise ValueError(f"{self.kind}: angle is required for rotations and only for them")
        if (self.pulse is not None) != (self.kind == "raw_pulse"):
            raise ValueError(f"{self.kind}: pulse is required for raw_pulse and only for it")
        if self.angle is not None and not math.isfinite(self.angle):
            raise ValueError("gate angle must be finite")

    def to_dict(self) -> dict:
        if self.kind in ROTATIONS:
            return {"op": self.kind, "angle": float(self.angle)}
        if self.kind == "raw_pulse":
            p = self.pulse
            return {
                "op": "raw_pulse",
                "transition": format_transition(p.transition),
                "angle": float(p.angle),
                "phase": float(p.phase),
            }
        return {"op": self.kind}


def RyR(angle: float) -> GateOp:
    return GateOp("ry_r", angle=float(angle))


def RyS(angle: float) -> GateOp:
    return GateOp("ry_s", angle=float(angle))


CNOT_RS = GateOp("cnot_rs")
CNOT_SR = GateOp("cnot_sr")


def RawPulse(transition: tuple[int, int], angle: float, phase: float = DEFAULT_PHASE) -> GateOp:
    return GateOp("raw_pulse", pulse=Pulse(transition, angle, phase))


@dataclass(frozen=True)
class Circuit:
    gates: tuple[GateOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self):
        return len(self.gates)


def _number(rec: dict, key: str, where: str) -> float:
    if key not in rec:
        raise ParseError(f"{where}: missing field '{key}'")
    val = rec[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ParseError(f"{where}: field '{key}' must be a number")
    if not math.isfinite(val):
        raise ParseError(f"{where}: field '{key}' must be finite")
    return float(val)


def parse_circuit(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("gates"), list):
        raise ParseError("top level must be an object with a 'gates' list")
    gates = []
    for n, rec in enumerate(doc["gates"]):
        where = f"gates[{n}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{where}: gate must be an object")
        op = rec.get("op")
        if op in ROTATIONS:
            gates.append(GateOp(op, angle=_number(rec, "angle", where)))
        elif op in ("cnot_rs", "cnot_sr"):
            gates.append(GateOp(op))
        elif op == "raw_pulse":
            if not isinstance(rec.get("transition"), str):
                raise ParseError(f"{where}: missing field 'transition'")
            try:
                pair = parse_transition(rec["transition"])
            except InvalidTransition as exc:
                raise ParseError(f"{where}.transition: {exc}") from None
            angle = _number(rec, "angle", where)
            phase = _number(rec, "phase", where) if "phase" in rec else DEFAULT_PHASE
            gates.append(RawPulse(pair, angle, phase))
        else:
            raise ParseError(f"{where}.op: unknown op {op!r}")
    return Circuit(tuple(gates))


def serialize_circuit(c: Circuit) -> str:
    return json.dumps({"gates": [g.to_dict() for g in c.gates]}, indent=2)


def parse_program(text: str) -> PulseProgram:
    try:
        return PulseProgram.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    except (KeyError, TypeError, ValueError, InvalidTransition) as exc:
        raise ParseError(f"malformed pulse program: {exc}") from None


def serialize_program(p: PulseProgram) -> str:
    return json.dumps(p.to_dict(), indent=2)


def compile(c: Circuit) -> PulseProgram:  # noqa: A001 - mirrors the pipeline stage name
    groups = []
    for g in c.gates:
        groups.extend(gate_to_pulses(g))
    return PulseProgram(tuple(groups))


def circuit_unitary(c: Circuit) -> np.ndarray:
    out = np.eye(4, dtype=np.complex128)
    for g in c.gates:
        out = reference_gate(g) @ out
    return qmath.matrix4(out)


@dataclass(frozen=True)
class RunConfig:
    rabi_angular_frequency: float
    inter_group_gap: float = 0.0
    tolerance: float = qmath.DEFAULT_TOL

    def __post_init__(self):
        if not self.rabi_angular_frequency > 0:
            raise ValueError("Rabi angular frequency must be positive")
        if not self.inter_group_gap >= 0:
            raise ValueError("inter-group gap must be non-negative")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def from_rabi_hz(cls, rabi_hz: float, gap_s: float = 0.0, tolerance: float = qmath.DEFAULT_TOL):
        return cls(2 * math.pi * rabi_hz, gap_s, tolerance)


@dataclass(frozen=True)
class ScheduleEntry:
    t_start: float
    duration: float
    carrier: float
    transition: tuple[int, int]
    angle: float
    phase: float


@dataclass(frozen=True)
class Schedule:
    entries: tuple[ScheduleEntry, ...] = ()
    total_time: float = 0.0
    group_durations: tuple[float, ...] = field(default=(), compare=False)


def make_schedule(
    p: PulseProgram, s: LevelScheme, d: SpectroscopicDataset, cfg: RunConfig
) -> Schedule:
    """Lay pulse groups out back to back in time.

    Each pulse lasts ``angle / Omega``; pulses of one group start together and
    the next group starts after the longest of them plus ``inter_group_gap``.
    """
    report = validate(s, d)
    if not report.passed:
        raise InvalidScheme(f"scheme {s.name}: " + "; ".join(report.errors))
    omega = cfg.rabi_angular_frequency
    gap = cfg.inter_group_gap
    entries = []
    durations: list[float] = []
    for n, g in enumerate(p.groups):
        # start time by the same formula as total_time so the two agree exactly
        t = sum(durations) + gap * n
        longest = 0.0
        for pulse in g.pulses:
            if pulse.angle < 0:
                raise NegativeAngle(
                    f"pulse on {format_transition(pulse.transition)} has angle {pulse.angle}; "
                    "use a positive angle with the carrier phase shifted by pi"
                )
            dur = pulse.angle / omega
            longest = max(longest, dur)
            entries.append(
                ScheduleEntry(
                    t_start=t,
                    duration=dur,
                    carrier=transition_frequency(s, d, pulse.transition),
                    transition=pulse.transition,
                    angle=pulse.angle,
                    phase=pulse.phase,
                )
            )
        durations.append(longest)
    total = sum(durations) + gap * (len(durations) - 1) if durations else 0.0
    return Schedule(tuple(entries), total, tuple(durations))


CSV_HEADER = ("t_start_s", "duration_s", "carrier_hz", "transition", "angle_rad", "phase_rad")


def _g17(x: float) -> str:
    return "%.17g" % x


def export_schedule(sch: Schedule) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for e in sorted(sch.entries, key=lambda e: e.t_start):
        w.writerow(
            [
                _g17(e.t_start),
                _g17(e.duration),
                _g17(e.carrier),
                format_transition(e.transition),
                _g17(e.angle),
                _g17(e.phase),
            ]
        )
    return buf.getvalue()


def parse_schedule_csv(text: str) -> list[ScheduleEntry]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ParseError("schedule CSV must start with header " + ",".join(CSV_HEADER))
    out = []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"line {n}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        try:
            t0, dur, carrier, tr, angle, phase = row
            out.append(
                ScheduleEntry(float(t0), float(dur), float(carrier), parse_transition(tr), float(angle), float(phase))
            )
        except (ValueError, InvalidTransition) as exc:
            raise ParseError(f"line {n}: {exc}") from None
    return out
