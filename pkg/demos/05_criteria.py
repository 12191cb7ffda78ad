# %% [markdown]
# Numerical evidence for the primorial, Mertens and divisor-sum criteria.
# None of this decides anything; it only checks consistency on finite ranges.

# %%
import numpy as np

from rhtorus import (
    build_sieve, inequality_one_check, lagarias_check, littlewood_diagnostic,
    nicolas_check, prop1_consistency,
)

a = nicolas_check(500)
b = inequality_one_check(500, 3)
print("min primorial margin:", min(r.margin for r in a))
print("verdicts agree:", [r.verdict for r in a] == [r.verdict for r in b])

# %%
s = build_sieve(10**5)
d = littlewood_diagnostic(10**5, sieve=s)
print("max |M(x)|/sqrt(x) on the grid (x >= 2):", np.nanmax(np.asarray(d.ratio_sqrt)[np.asarray(d.x_grid) >= 2]))
print("torus identity residual at x=500:", prop1_consistency(500, 3, s))

rows = lagarias_check(10**4, s)
print("n=1 verdict:", rows[0].verdict, " min margin n>=2:", min(r.margin for r in rows[1:]))
