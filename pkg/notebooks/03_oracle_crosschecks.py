# %% [markdown]
# # Checking the closed forms against three independent oracles
#
# * quadrature of the one-point density,
# * the literal n-fold jpdf integral for n <= 3,
# * Monte Carlo sampling of random matrices.

# %%
from fractions import Fraction as F

from rmtmoments import jacobi, laguerre, moment
from rmtmoments.densities import density, quad_moment
from rmtmoments.oracle import SamplerConfig, bruteforce_jpdf_moment, mc_moment

cases = [(laguerre(4, 3, 1), -1), (jacobi(1, 2, 1, F(1, 2)), 2), (laguerre(2, 2, F(1, 2)), 3)]
for ens, k in cases:
    exact = float(moment(ens, k).exact)
    q = quad_moment(density(ens), k)
    b = bruteforce_jpdf_moment(ens, k)
    print(f"{ens.family} beta={ens.beta} n={ens.n} k={k}: exact {exact:.15f}")
    print(f"   density quadrature {float(q.value):.15f}")
    print(f"   jpdf cubature      {float(b.value):.15f}")

# %%
ens, k = laguerre(1, 4, 5), -1
est = mc_moment(SamplerConfig(ens, seed=1, streams=4, samples=25_000), k)
print(f"Monte Carlo {est.mean:.5f} +- {est.std_error:.5f}, exact {float(moment(ens, k).exact):.5f}")
