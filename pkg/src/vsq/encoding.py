"""Virtual-spin encoding of two qubits in four energy levels.

The four working levels E0..E3 carry the computational states
``|00>, |01>, |10>, |11>`` (first label = virtual spin R, second = spin S).
Qubit value 0 corresponds to spin projection +1/2, i.e. the first basis
vector of each spin-1/2 factor.

Two CNOT constructions live here. ``cnot_rs_formula`` / ``cnot_sr_formula``
build the projector-form operators literally, while :func:`reference_gate`
returns what the single pi pulse on E2-E3 (resp. E1-E3) actually does. Under
the q=0 <-> +1/2 mapping the two differ by an X conjugation of the control
qubit; both are kept and the relation is checked by the verification suite.
"""

from __future__ import annotations

import math

import numpy as np

from vsq import qmath
from vsq.errors import UnknownGate
from vsq.qmath import I2, matrix2, tensor

SY = matrix2([[0, -0.5j], [0.5j, 0]])
SZ = matrix2([[0.5, 0], [0, -0.5]])
X = matrix2([[0, 1], [1, 0]])

GATE_NAMES = ("ry_r", "ry_s", "cnot_rs", "cnot_sr", "raw_pulse")


def ry(phi: float) -> np.ndarray:
    """``exp(-i*phi*Sy)`` in closed form."""
    c = math.cos(phi / 2)
    s = math.sin(phi / 2)
    return matrix2([[c, -s], [s, c]])


def basis_index(q_r: int, q_s: int) -> int:
    if q_r not in (0, 1) or q_s not in (0, 1):
        raise ValueError(f"qubit values must be 0 or 1, got ({q_r}, {q_s})")
    return 2 * q_r + q_s


def basis_label(index: int) -> str:
    if index not in range(4):
        raise ValueError(f"basis index must be in 0..3, got {index}")
    return f"{index >> 1}{index & 1}"


def rotation_S(phi: float) -> np.ndarray:
    """y-rotation of spin S by ``phi``, leaving R alone."""
    return tensor(I2, ry(phi))


def rotation_R(phi: float) -> np.ndarray:
    """y-rotation of spin R by ``phi``, leaving S alone."""
    return tensor(ry(phi), I2)


def cnot_rs_formula() -> np.ndarray:
    """``-i[(1/2)1_R + R_z] (x) (2S_y) + [(1/2)1_R - R_z] (x) 1_S``, as written."""
    up = 0.5 * I2 + SZ
    down = 0.5 * I2 - SZ
    return qmath.matrix4(-1j * tensor(up, 2 * SY) + tensor(down, I2))


def cnot_sr_formula() -> np.ndarray:
    """``1_R (x) [(1/2)1_S - S_z] - i(2R_y) (x) [(1/2)1_S + S_z]``, as written."""
    up = 0.5 * I2 + SZ
    down = 0.5 * I2 - SZ
    return qmath.matrix4(tensor(I2, down) - 1j * tensor(2 * SY, up))


def reference_gate(g) -> np.ndarray:
    """Oracle matrix for one gate, built without going through pulse groups."""
    kind = getattr(g, "kind", None)
    if kind == "ry_s":
        return rotation_S(g.angle)
    if kind == "ry_r":
        return rotation_R(g.angle)
    if kind == "cnot_rs":
        return qmath.embed_two_level(ry(math.pi), 2, 3)
    if kind == "cnot_sr":
        return qmath.embed_two_level(ry(math.pi), 1, 3)
    if kind == "raw_pulse":
        from vsq.pulses import pulse_unitary

        return pulse_unitary(g.pulse)
    raise UnknownGate(f"unknown gate kind {kind!r}")
