# %% [markdown]
# # Short distance: coupled plasmons and the alpha series
#
# Two routes to the same energy: the zero-point shift of the coupled
# surface plasmons, and the series in (4n-3)!!/(4n-2)!!.

# %%
import math
from fractions import Fraction

import numpy as np

from casimir_kit.lifshitz import casimir_energy
from casimir_kit.model import CavityConfig, PlasmaMirror
from casimir_kit.plasmon import (
    alpha_coefficient,
    double_factorial_ratios,
    plasmon_series_sum,
    plasmon_shift_energy,
    short_distance_energy_series,
)

# %%
terms = double_factorial_ratios(5) / np.arange(1, 6) ** 3
print("terms / first:", [str(Fraction(t / terms[0]).limit_denominator(10**5)) for t in terms])
s, n = plasmon_series_sum()
print(f"sum = {s:.13f} with {n} terms; alpha = {alpha_coefficient():.10f}")
print("share of n = 1:", terms[0] / s)

# %%
for x in (1e-4, 1e-3, 1e-2, 1e-1):
    cav = CavityConfig.identical(PlasmaMirror(2 * math.pi), x)
    a = plasmon_shift_energy(cav).energy
    b = short_distance_energy_series(cav).energy
    full = casimir_energy(cav).energy
    print(f"x = {x:6}: shift {a:.10e}  series {b:.10e}  full/shift {full / a:.5f}")
