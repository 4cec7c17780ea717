# %% [markdown]
# # Reflection on a plasma mirror
#
# Natural units: c = 1 and omega_p = 1.  On the imaginary frequency axis
# both Fresnel amplitudes are real and bounded by 1.  At real frequencies
# below the light line the TM amplitude has a pole at the surface plasmon.

# %%
import numpy as np

from casimir_kit.model import PlasmaMirror
from casimir_kit.plasma_optics import (
    Polarization,
    brewster_frequency,
    plasmon_frequency,
    reflection_imaginary,
    reflection_real_evanescent,
)

m = PlasmaMirror(1.0)

# %%
xi = np.geomspace(1e-3, 1e2, 6)
for pol in Polarization:
    print(pol.value, np.round(reflection_imaginary(xi, 1.0, pol, m), 6))

# %% [markdown]
# TM goes to -1 at xi -> 0 and both die off once xi >> omega_p.

# %%
k = np.array([0.0, 0.5, 1.0, 3.0, 10.0, 100.0])
print("k          ", k)
print("omega_pl   ", np.round(plasmon_frequency(k, m), 6))
print("omega_brew ", np.round(brewster_frequency(k, m), 6))
print("omega_p/sqrt2 =", 1 / np.sqrt(2))

# %% [markdown]
# Near the plasmon the evanescent TM amplitude is far larger than 1,
# while TE stays passive.

# %%
w = plasmon_frequency(3.0, m)
om = w * (1 + np.array([-1e-2, -1e-3, 1e-3, 1e-2]))
print("TM", reflection_real_evanescent(om, 3.0, Polarization.TM, m))
print("TE", reflection_real_evanescent(om, 3.0, Polarization.TE, m))
