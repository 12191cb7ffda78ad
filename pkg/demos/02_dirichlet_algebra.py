# %% [markdown]
# Convolution identities for truncated arithmetic functions.

# %%
import numpy as np

from rhtorus import (
    build_sieve, convolve, log_function, mangoldt_function, mobius_function,
    mobius_invert, ones, totient_function, weighted_norm,
)

n = 10**4
s = build_sieve(n)
mu = mobius_function(n, "int", s)
print("mu*1 is the unit:", list(convolve(mu, ones(n)).values[1:8]))
print("phi*1 is the identity:", list(convolve(totient_function(n, "int", s), ones(n)).values[1:8]))

lam1 = convolve(mangoldt_function(n, s), ones(n, "real"))
print("max |Lambda*1 - log|:", np.max(np.abs(lam1.values[1:] - log_function(n).values[1:])))

# %% [markdown]
# Inversion recovers phi from the identity function.

# %%
from rhtorus import identity

print(mobius_invert(identity(30), sieve=s).values[1:13])
print("weighted norm of mu at beta=2:", weighted_norm(mu, 2))
