# %% [markdown]
# # Force and energy reduction factors
#
# Identical plasma mirrors, lengths in units of the plasma wavelength.
# This is the data behind the classic eta_F(L / lambda_P) curve, with the
# short-distance line alpha L / lambda_P for comparison.

# %%
import math

import numpy as np

from casimir_kit.lifshitz import casimir_force, eta_E, eta_F
from casimir_kit.model import CavityConfig, PlasmaMirror
from casimir_kit.plasmon import alpha_coefficient


def cavity(x):
    return CavityConfig.identical(PlasmaMirror(2 * math.pi), x)


alpha = alpha_coefficient()
xs = np.geomspace(0.01, 100, 13)

# %%
print(f"{'L/lambda_P':>11} {'eta_F':>10} {'eta_E':>10} {'alpha*x':>10}")
for x in xs:
    print(f"{x:11.4g} {eta_F(cavity(x)):10.6f} {eta_E(cavity(x)):10.6f} {alpha * x:10.6f}")

# %% [markdown]
# At short distance almost all of the force is carried by TM modes,
# the surface plasmons.

# %%
for x in (0.01, 0.1, 1.0, 10.0):
    f = casimir_force(cavity(x))
    print(f"x = {x:5}: TE share {f.te / f.per_unit_area:.2e}")

# %% [markdown]
# The same numbers in SI for a gold-like mirror: `casimir-kit force
# --lambda-p 137.5e-9 --L 100e-9 --A 1e-8 --units si`.
