"""Closed-form levels of the deep reference well, checked against a Numerov shooting solve.

Run: python3 demos/spectrum_and_oracle.py
"""

from genmorse import PhysicalParams, reduce
from genmorse.core import morse_energy
from genmorse.numerics import GridSpec, numerov_eigenvalue

params = PhysicalParams(D=10.0, a=1.0, r_e=2.5)
model = reduce(params)
print(f"k = {model.k}, b = {model.b:.6f}, l = {model.l:.6f}, bound levels: {model.n_max + 1}")

grid = GridSpec.for_model(model)
print(f"{'n':>2} {'E (closed form)':>18} {'E (Numerov)':>18} {'E (Morse)':>12}")
for r in model.levels():
    eps = numerov_eigenvalue(model.potential, r.n, grid)
    print(f"{r.n:>2} {r.E_n:>18.12f} {eps * params.energy_scale:>18.12f} {morse_energy(params, r.n):>12.6f}")
