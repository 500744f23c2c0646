# %% [markdown]
# # Exact moments across the three symmetry classes
#
# Every moment is an exact rational times a half-integer power of pi.
# The unitary case is the base; the symplectic and orthogonal cases add a
# finite correction built from skew-orthogonal polynomial coefficients.

# %%
from fractions import Fraction as F

from rmtmoments import gaussian, jacobi, laguerre, moment

for beta in (1, 2, 4):
    row = [moment(gaussian(beta, 4), 2 * k).exact for k in range(1, 5)]
    print(f"Gaussian beta={beta}, n=4, <tr X^2k>, k=1..4:", ", ".join(str(v.rational) for v in row))

# %% [markdown]
# Laguerre moments exist for negative orders as long as the integrand stays
# integrable at the origin; beyond that the result is flagged as divergent.

# %%
for k in range(-4, 4):
    r = moment(laguerre(2, 3, 1), k)
    print(k, r.exact.rational if r.convergent else "diverges")

# %% [markdown]
# Jacobi moments decrease with k and are bounded by n, for any real a, b > -1.

# %%
ens = jacobi(4, F(5, 2), F(1, 2), 1)
print([str(moment(ens, k).exact.rational) for k in range(0, 6)])
