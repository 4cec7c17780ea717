# %% [markdown]
# # Two atoms: Casimir-Polder and London
#
# One transition at E = 2 pi (so lambda_A = 1).  The ratio to the
# retarded 1/L^7 law goes to 1 far away and falls linearly in L close in,
# where the 1/L^6 London law takes over.

# %%
import math

import numpy as np

from casimir_kit.casimir_polder import cp_energy, cp_retarded, eta_cp, london_sum
from casimir_kit.model import AtomModel

atom = AtomModel.single(2 * math.pi, 1.0)

# %%
print(f"{'L/lambda_A':>10} {'eta_CP':>10} {'E/E_London':>11}")
for L in np.geomspace(1e-3, 1e2, 11):
    e = cp_energy(atom, atom, L).value
    print(f"{L:10.3g} {eta_cp(atom, L):10.6f} {e / london_sum(atom, atom, L):11.6f}")

# %%
# two different atoms: the product of polarizabilities replaces the square
b = AtomModel(((1.0, 0.3), (5.0, 2.0)))
print(cp_energy(atom, b, 0.5).value / cp_retarded(atom, b, 0.5))
