# %% [markdown]
# Arithmetic tables from a single sieve pass.

# %%
import numpy as np

from rhtorus import build_sieve, chebyshev_psi, mertens, primorials

s = build_sieve(10**5)
print("first primes:", s.primes[:10])
print("mu(1..12):   ", s.mobius[1:13])
print("phi(1..12):  ", s.totient[1:13])
print("sigma(1..12):", s.sigma[1:13])

# %% [markdown]
# Partial sums.  M(x) is exact, psi(x) is a correctly rounded float.

# %%
for x in (10, 100, 1000, 10**4, 10**5):
    print(f"x={x:>6}  M(x)={mertens(x, s):>4}  psi(x)={chebyshev_psi(x, s):.6f}")

# %%
for r in primorials(6):
    print(r.k, r.prime, r.primorial, r.totient_of_primorial, round(r.log_primorial, 6))
