"""Two qubits in four optical levels of a single Pr3+ ion.

Submodules: ``qmath`` (4x4 linear algebra), ``encoding`` (virtual-spin gates),
``pulses`` (resonant pulse model), ``levels`` (Pr3+:LaF3 data and level
schemes), ``compiler`` (circuits, pulse programs, schedules), ``runtime``
(state evolution, sampling, readout) and ``verify`` (invariant suites).
"""

from vsq.compiler import (
    CNOT_RS,
    CNOT_SR,
    Circuit,
    GateOp,
    RawPulse,
    RunConfig,
    RyR,
    RyS,
    circuit_unitary,
    compile,
    make_schedule,
    parse_circuit,
)
from vsq.errors import VsqError
from vsq.levels import builtin_pr_laf3, scheme
from vsq.pulses import Pulse, PulseGroup, PulseProgram, program_unitary
from vsq.runtime import ground_state, measure, run_program

__version__ = "0.1.0"
