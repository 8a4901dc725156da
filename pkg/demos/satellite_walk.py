"""Walk a chain of satellite potentials and watch what stays fixed.

Every step rescales (k, b) but keeps k b^2 (and so D b^2 / a^2) constant.
G-steps keep the label m, M-steps keep g.

Run: python3 demos/satellite_walk.py
"""

from genmorse import PhysicalParams, reduce
from genmorse.algebra import satellite_chain, satellite_state
from genmorse.numerics import franck_condon
from genmorse.wavefunction import bound_state

model = reduce(PhysicalParams(10.0, 1.0, 2.5))
walk = ["g-", "g-", "m+", "g+", "m-"]
steps = satellite_chain(model, 0, walk)

print(f"start: k={model.k:.6f} b={model.b:.6f} n=0  k b^2={model.kb2:.10f}")
for s in steps:
    t = s.target
    print(
        f"{s.direction.value:>3}: k={t.k:.6f} b={t.b:.6f} n={t.n}  "
        f"m={t.label.m:.6f} g={t.label.g:.6f}  k b^2={t.k * t.b**2:.10f}  coeff={s.coeff:+.6f}"
    )

first = steps[0]
ov = franck_condon(bound_state(model, 0), satellite_state(first))
print(f"\noverlap of the ground state with its first G- satellite: {ov:.10f}")
