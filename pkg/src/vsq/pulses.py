"""Resonant pulses on pairs of working levels and the gate-to-pulse mapping.

A pulse on transition ``(Ei, Ej)`` with rotation angle ``phi`` and carrier
phase ``chi`` acts as

    exp(-i * phi/2 * (cos(chi) * sigma_x + sin(chi) * sigma_y))

on ``span{|i>, |j>}``. The default ``chi = pi/2`` is a pure y-rotation. Pulses
in one group are applied simultaneously; because their level pairs are
disjoint their embeddings commute and the group acts as their product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from vsq import qmath
from vsq.errors import InvalidTransition, OverlappingTransitions, UnknownGate

DEFAULT_PHASE = math.pi / 2


def parse_transition(text: str) -> tuple[int, int]:
    """``"E2-E3"`` -> ``(2, 3)``."""
    try:
        a, b = text.split("-")
        if a[0] != "E" or b[0] != "E":
            raise ValueError
        i, j = int(a[1:]), int(b[1:])
    except (ValueError, IndexError):
        raise InvalidTransition(f"malformed transition {text!r}, expected 'Ei-Ej'") from None
    _check_pair(i, j)
    return i, j


def format_transition(pair: tuple[int, int]) -> str:
    return f"E{pair[0]}-E{pair[1]}"


def _check_pair(i: int, j: int) -> None:
    if not (0 <= i < j <= 3):
        raise InvalidTransition(f"transition needs levels 0 <= i < j <= 3, got ({i}, {j})")


@dataclass(frozen=True)
class Pulse:
    transition: tuple[int, int]
    angle: float
    phase: float = DEFAULT_PHASE

    def __post_init__(self):
        i, j = self.transition
        _check_pair(i, j)
        object.__setattr__(self, "transition", (int(i), int(j)))
        if not (math.isfinite(self.angle) and math.isfinite(self.phase)):
            raise InvalidTransition("pulse angle and phase must be finite")

    def to_dict(self) -> dict:
        return {
            "transition": format_transition(self.transition),
            "angle_rad": float(self.angle),
            "phase_rad": float(self.phase),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Pulse":
        return cls(
            parse_transition(d["transition"]),
            float(d["angle_rad"]),
            float(d.get("phase_rad", DEFAULT_PHASE)),
        )


@dataclass(frozen=True)
class PulseGroup:
    pulses: tuple[Pulse, ...]

    def __post_init__(self):
        object.__setattr__(self, "pulses", tuple(self.pulses))
        seen: set[int] = set()
        for p in self.pulses:
            shared = seen.intersection(p.transition)
            if shared:
                raise OverlappingTransitions(
                    f"level E{min(shared)} is driven by more than one pulse in the group"
                )
            seen.update(p.transition)


@dataclass(frozen=True)
class PulseProgram:
    groups: tuple[PulseGroup, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))

    def to_dict(self) -> dict:
        return {"groups": [[p.to_dict() for p in g.pulses] for g in self.groups]}

    @classmethod
    def from_dict(cls, d: dict) -> "PulseProgram":
        return cls(tuple(PulseGroup(tuple(Pulse.from_dict(p) for p in g)) for g in d["groups"]))


def pulse_unitary(p: Pulse) -> np.ndarray:
    c = math.cos(p.angle / 2)
    s = math.sin(p.angle / 2)
    # exact branch for the default phase so y-pulses match encoding.ry bit-for-bit
    if p.phase == DEFAULT_PHASE:
        block = [[c, -s], [s, c]]
    else:
        block = [
            [c, -1j * s * cmath.exp(-1j * p.phase)],
            [-1j * s * cmath.exp(1j * p.phase), c],
        ]
    return qmath.embed_two_level(block, *p.transition)


def group_unitary(g: PulseGroup) -> np.ndarray:
    if not isinstance(g, PulseGroup):
        g = PulseGroup(tuple(g))
    out = np.eye(4, dtype=np.complex128)
    for p in g.pulses:
        out = pulse_unitary(p) @ out
    return qmath.matrix4(out)


def gate_to_pulses(g) -> list[PulseGroup]:
    """Pulse groups realizing one gate.

    ``ry_s``: simultaneous E0-E1 and E2-E3 rotations; ``ry_r``: E0-E2 and
    E1-E3; ``cnot_rs``: a pi pulse on E2-E3; ``cnot_sr``: a pi pulse on E1-E3.
    """
    kind = getattr(g, "kind", None)
    if kind == "ry_s":
        return [PulseGroup((Pulse((0, 1), g.angle), Pulse((2, 3), g.angle)))]
    if kind == "ry_r":
        return [PulseGroup((Pulse((0, 2), g.angle), Pulse((1, 3), g.angle)))]
    if kind == "cnot_rs":
        return [PulseGroup((Pulse((2, 3), math.pi),))]
    if kind == "cnot_sr":
        return [PulseGroup((Pulse((1, 3), math.pi),))]
    if kind == "raw_pulse":
        return [PulseGroup((g.pulse,))]
    raise UnknownGate(f"unknown gate kind {kind!r}")


def program_unitary(p: PulseProgram) -> np.ndarray:
    out = np.eye(4, dtype=np.complex128)
    for g in p.groups:
        out = group_unitary(g) @ out
    return qmath.matrix4(out)
