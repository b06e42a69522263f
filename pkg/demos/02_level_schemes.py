"""
==================================
Pr3+:LaF3 levels and the two schemes
==================================

Scheme ``fig3`` uses four optical terms as working levels, so every gate is
an optical transition. Scheme ``fig4`` uses the ground level plus the three
quadrupole sublevels of 3P0: two of the four gate transitions then fall in
the radio-frequency range.
"""

from vsq import levels, runtime

d = levels.builtin_pr_laf3()

# %%
# Quadrupole splittings, in MHz.

for label in ("3H4", "3P0"):
    print(label, d.term(label).splittings())

# %%
# Gate carriers for both schemes, with the band each falls in.

for name in ("fig3", "fig4"):
    s = levels.scheme(name)
    rep = levels.validate(s, d)
    print(f"\n{name}: " + ", ".join(str(l) for l in s.assignment))
    for pair, f in rep.carriers.items():
        band = "RF" if rep.rf[pair] else "optical"
        print(f"  E{pair[0]}-E{pair[1]}  {f:.6e} Hz  {band}")
    print(f"  smallest separation between carriers: {rep.min_separation:.4g} Hz")

# %%
# Readout moves a working level to 3P1 with a pi pulse; which transfer line
# fluoresces tells which level was occupied.

for name in ("fig3", "fig4"):
    plan = runtime.readout_plan(levels.scheme(name), d)
    print(name, [f"E{st.role}: {st.carrier:.6e} Hz" for st in plan.steps], "distinguishable:", plan.distinguishable)
