"""
==========================================
From circuit to pulse schedule to counts
==========================================

Prepare a Bell state, lay its pulses out in time on the RF-assisted scheme,
and sample measurement outcomes with a fixed seed.
"""

import math
from pathlib import Path

from vsq import compiler, levels, runtime

circuit = compiler.parse_circuit((Path(__file__).parent / "circuits" / "bell.json").read_text())
program = compiler.compile(circuit)

# %%
# Oracle check: the pulse program and the gate-level product agree exactly.

from vsq.pulses import program_unitary
from vsq.qmath import max_abs_diff

print("pulse path vs oracle:", max_abs_diff(program_unitary(program), compiler.circuit_unitary(circuit)))

# %%
# A 1 MHz Rabi frequency makes a pi pulse last 0.5 us.

cfg = compiler.RunConfig.from_rabi_hz(1e6)
schedule = compiler.make_schedule(program, levels.scheme("fig4"), levels.builtin_pr_laf3(), cfg)
print(compiler.export_schedule(schedule))
print("total time:", schedule.total_time, "s")

# %%
# Evolve from the ground level and sample.

state = runtime.run_program(program, runtime.ground_state())
print("amplitudes:", state.amplitudes.round(6))
hist = runtime.measure(state, seed=42, shots=10_000)
print("counts:", hist.labelled())

plan = runtime.readout_plan(levels.scheme("fig4"), levels.builtin_pr_laf3())
for k in hist.counts:
    print(runtime.outcome_to_emission(k, plan))
