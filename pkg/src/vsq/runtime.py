"""State evolution, seeded Born-rule sampling and the 3P1 transfer readout model."""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass

import numpy as np

from vsq import qmath
from vsq.encoding import basis_label
from vsq.errors import InvalidScheme, NormDrift, UnknownOutcome
from vsq.levels import LevelScheme, PhysLevel, SpectroscopicDataset, level_gap, validate
from vsq.pulses import PulseProgram, group_unitary
from vsq.rng import Xoshiro256pp, batch_seed

NORM_TOL = 1e-10


@dataclass(frozen=True)
class QuantumState:
    amplitudes: np.ndarray

    def __post_init__(self):
        v = qmath.vector4(self.amplitudes)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > NORM_TOL:
            raise NormDrift(f"state norm {norm!r} deviates from 1 by more than {NORM_TOL:g}")
        object.__setattr__(self, "amplitudes", v)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def ground_state() -> QuantumState:
    """All population in E0, i.e. ``|00>``."""
    return QuantumState(np.array([1, 0, 0, 0], dtype=complex))


def basis_state(index: int) -> QuantumState:
    v = np.zeros(4, dtype=complex)
    v[index] = 1
    return QuantumState(v)


def run_program(p: PulseProgram, init: QuantumState) -> QuantumState:
    v = np.array(init.amplitudes)
    for g in p.groups:
        v = group_unitary(g) @ v
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > NORM_TOL:
        raise NormDrift(f"final norm {norm!r} deviates from 1 by more than {NORM_TOL:g}")
    return QuantumState(v)


@dataclass(frozen=True)
class MeasurementHistogram:
    counts: dict[int, int]
    shots: int
    seed: int

    def labelled(self) -> dict[str, int]:
        return {basis_label(k): self.counts.get(k, 0) for k in range(4)}


def _sample(cdf: list[float], support: list[int], rng: Xoshiro256pp, shots: int, counts: dict[int, int]):
    last = support[-1]
    for _ in range(shots):
        u = rng.random()
        k = bisect.bisect_right(cdf, u)
        # u above a rounded-down final cdf entry falls to the last populated level
        k = last if k >= len(cdf) else k
        counts[k] = counts.get(k, 0) + 1


def measure(
    state: QuantumState, seed: int, shots: int, batch_size: int | None = None
) -> MeasurementHistogram:
    """Sample ``shots`` computational-basis outcomes with the Born rule.

    Draws come from xoshiro256++ seeded through SplitMix64 and are mapped by
    inverse-CDF lookup. With ``batch_size`` the shots are split into batches,
    each seeded from ``(seed, batch_index)``, so batches can be run in any
    order or in parallel and still merge to the same histogram.
    """
    if shots < 0:
        raise ValueError("shots must be non-negative")
    probs = [float(p) for p in state.probabilities]
    total = math.fsum(probs)
    cdf = list(itertools.accumulate(p / total for p in probs))
    support = [k for k, p in enumerate(probs) if p > 0]
    counts: dict[int, int] = {}
    if shots == 0:
        return MeasurementHistogram(counts, 0, seed)
    if batch_size is None:
        _sample(cdf, support, Xoshiro256pp(seed), shots, counts)
    else:
        if batch_size <= 0:
            raise ValueError("batch_size must be positive")
        for b, start in enumerate(range(0, shots, batch_size)):
            n = min(batch_size, shots - start)
            _sample(cdf, support, Xoshiro256pp(batch_seed(seed, b)), n, counts)
    return MeasurementHistogram(dict(sorted(counts.items())), shots, seed)


@dataclass(frozen=True)
class ReadoutStep:
    role: int
    level: PhysLevel
    transfer_transition: tuple[str, str]
    angle: float
    carrier: float


@dataclass(frozen=True)
class ReadoutPlan:
    scheme: str
    steps: tuple[ReadoutStep, ...]
    distinguishable: bool


@dataclass(frozen=True)
class EmissionRecord:
    outcome: int
    transfer_transition: tuple[str, str] | None
    transfer_carrier: float | None
    distinguishable: bool

    def to_dict(self) -> dict:
        return {
            "outcome": basis_label(self.outcome),
            "transfer": None if self.transfer_transition is None else "-".join(self.transfer_transition),
            "carrier_hz": self.transfer_carrier,
            "distinguishable": self.distinguishable,
        }


def readout_plan(s: LevelScheme, d: SpectroscopicDataset) -> ReadoutPlan:
    """Pi pulses moving E1, E2, E3 to the readout term, with their carriers.

    The plan is distinguishable when the three transfer carriers are pairwise
    separated by at least the scheme's resolvability threshold.
    """
    report = validate(s, d)
    if not report.passed:
        raise InvalidScheme(f"scheme {s.name}: " + "; ".join(report.errors))
    target = PhysLevel(s.readout_term)
    steps = []
    for role in (1, 2, 3):
        lvl = s.level(role)
        steps.append(
            ReadoutStep(role, lvl, (f"E{role}", s.readout_term), math.pi, level_gap(d, lvl, target))
        )
    carriers = [st.carrier for st in steps]
    ok = all(abs(a - b) >= s.min_sep_hz for a, b in itertools.combinations(carriers, 2))
    return ReadoutPlan(s.name, tuple(steps), ok)


def outcome_to_emission(outcome: int, plan: ReadoutPlan) -> EmissionRecord:
    """Which transfer line fluoresces for a given occupied level.

    Outcome 0 is the ground level, which is never transferred: it shows up as
    no fluorescence on any of the three steps.
    """
    if outcome == 0:
        return EmissionRecord(0, None, None, True)
    for st in plan.steps:
        if st.role == outcome:
            return EmissionRecord(outcome, st.transfer_transition, st.carrier, plan.distinguishable)
    raise UnknownOutcome(f"outcome must be in 0..3, got {outcome!r}")
