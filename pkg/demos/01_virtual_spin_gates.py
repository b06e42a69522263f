"""
================================
Gates on two virtual spins
================================

Four levels E0..E3 of one ion hold the states |00>, |01>, |10>, |11>.
Writing the 4-dimensional space as a product of two spin-1/2 spaces (R, S)
turns pairs of simultaneous resonant pulses into single-qubit rotations and
a single pi pulse into a CNOT.
"""

import math

import numpy as np

from vsq import encoding, qmath
from vsq.compiler import CNOT_RS, CNOT_SR, RyR, RyS
from vsq.pulses import gate_to_pulses, group_unitary

np.set_printoptions(precision=3, suppress=True)

# %%
# A rotation of spin S drives E0<->E1 and E2<->E3 at the same time with the
# same rotation angle. The pair of pulses reproduces exp(-i*phi*1_R (x) S_y).

phi = 0.8
(group,) = gate_to_pulses(RyS(phi))
print("pulses:", [(p.transition, round(p.angle, 3)) for p in group.pulses])
print("deviation from 1_R (x) Ry(phi):", qmath.max_abs_diff(group_unitary(group), encoding.rotation_S(phi)))

# %%
# Spin R is rotated by driving E0<->E2 and E1<->E3 instead.

(group,) = gate_to_pulses(RyR(phi))
print("deviation from Ry(phi) (x) 1_S:", qmath.max_abs_diff(group_unitary(group), encoding.rotation_R(phi)))

# %%
# A pi pulse on E2<->E3 flips S only when R = 1; a pi pulse on E1<->E3 flips R
# only when S = 1. Up to per-branch signs these are the two CNOTs.

for gate in (CNOT_RS, CNOT_SR):
    (group,) = gate_to_pulses(gate)
    print(gate.kind)
    print(qmath.render(group_unitary(group)))

# %%
# The operator formulas in projector form act on the q=0 branch instead.
# Conjugating the control qubit with X maps them onto the pulse gates.

xr = qmath.tensor(encoding.X, qmath.I2)
print("formula vs pulse after X relabel:",
      qmath.max_abs_diff(xr @ encoding.cnot_rs_formula() @ xr, encoding.reference_gate(CNOT_RS)))

# %%
# Spin-1/2 rotations are 4*pi periodic: a 2*pi rotation gives -1.

print(np.real(np.diag(encoding.rotation_S(2 * math.pi))))
