# %% [markdown]
# Truncated Euler product against a direct sum over smooth numbers.

# %%
import numpy as np

from rhtorus import TruncatedTorusPoint, euler_product_partial, primes_up_to, smooth_number_sum

k = len(primes_up_to(29))
rng = np.random.default_rng(0)
for t in (TruncatedTorusPoint.ones(k), TruncatedTorusPoint.random(k, rng)):
    prod = euler_product_partial(3, t, k)
    oracle = smooth_number_sum(3.0, t, 29)
    print(prod, oracle.value, abs(prod - oracle.value), "tail bound", oracle.tail_bound)

# %% [markdown]
# The transform is multiplicative: the transform of f*g is the product of transforms.

# %%
from rhtorus import mobius_function, ones, transform_homomorphism_check

n = 10**4
pts = np.vstack([TruncatedTorusPoint.random(len(primes_up_to(n)), rng).coords for _ in range(4)])
r = transform_homomorphism_check(mobius_function(n, "real"), ones(n, "real"), pts, 3)
print("deviation", r.max_deviation, "bound", r.tail_bound, "ok", r.within_bound)
