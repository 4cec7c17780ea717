# %% [markdown]
# # The quadrature engine
#
# Semi-infinite integrals go through a map onto (0, 1) and adaptive
# Gauss-Kronrod panels.  The rational map is the default; the exponential
# map needs integrands decaying faster than its scale and says so when
# they do not.

# %%
import numpy as np

from casimir_kit.quadrature import QuadratureSpec, Transform, integrate_2d_lifshitz, integrate_semi_infinite


def f(u):
    return (u**4 + 2 * u**3 + 5 * u**2 + 6 * u + 3) * np.exp(-2 * u)


for t in Transform:
    q = integrate_semi_infinite(f, QuadratureSpec(transform=t))
    print(f"{t.value:10} {q.value!r:22} err {q.error_estimate:.1e} evals {q.evaluations}")

# %%
print(integrate_semi_infinite(lambda u: 1 / (1 + u**2)).value, "vs pi/2 =", np.pi / 2)
print(integrate_semi_infinite(lambda u: 1 / (1 + u**2), QuadratureSpec(transform=Transform.EXP_MAP)))

# %% [markdown]
# The wedge integral used by the force: with perfect mirrors it returns
# pi^2 / 240 exactly.

# %%
q = integrate_2d_lifshitz(lambda xi, k: 2 * k**2 / (2 * np.pi**2) / np.expm1(2 * k), 1.0)
print(q.value, np.pi**2 / 240, q.evaluations)
