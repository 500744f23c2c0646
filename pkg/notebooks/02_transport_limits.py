# %% [markdown]
# # Transport observables and their large-n limits
#
# Transmission-eigenvalue moments of a chaotic cavity with n and m channels
# approach n times a Catalan-number sum; the delay-time moments approach
# 1, 2, 6, 22, 90, ...

# %%
from rmtmoments import DelayQuery, TransportQuery, delay_limit, delay_moment, limit_catalan, transmission_moment

k = 3
print("limit of <T_3>/n at m = n:", float(limit_catalan(k)))
for beta in (1, 2, 4):
    print(f"beta={beta}")
    prev = None
    for n in (10, 20, 40, 80):
        res = float(transmission_moment(TransportQuery(beta, n, n, k)).exact) / n - float(limit_catalan(k))
        ratio = f"  ratio {prev / res:.3f}" if prev else ""
        print(f"  n={n:3d} residual {res: .3e}{ratio}")
        prev = res

# %% [markdown]
# For beta = 1 and 4 the residual halves under doubling (an O(1/n) correction);
# for beta = 2 it falls by four (O(1/n^2)).

# %%
for k in range(1, 5):
    vals = [float(delay_moment(DelayQuery(2, n, k)).exact) for n in (10, 50, 200)]
    print(f"<D_{k}> at n=10,50,200:", ", ".join(f"{v:.5f}" for v in vals), " limit", delay_limit(k).rational)
