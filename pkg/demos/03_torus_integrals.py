# %% [markdown]
# Recovering mu, phi and Lambda from integrals over the truncated torus.

# %%
from rhtorus import (
    build_sieve, circle_factor_closed, circle_factor_quadrature,
    torus_integral_mangoldt, torus_integral_mu, torus_integral_phi,
)

s = build_sieve(1000)
for a in (1, 6, 12, 30, 97, 210):
    m = torus_integral_mu(a, 3, sieve=s)
    f = torus_integral_phi(a, 3, sieve=s)
    print(f"a={a:>3}  I={m.value}  mu={m.reconstructed!s:>2}  J={f.value}  phi={f.reconstructed}")

# %% [markdown]
# Each integral is a product of one-dimensional circle means.  A uniform
# grid of M nodes computes them to rounding once M exceeds the relevant degree.

# %%
for kind in ("mu", "phi"):
    for alpha in range(3):
        c = circle_factor_closed(kind, 5, 3, alpha).value
        q = circle_factor_quadrature(kind, 5, 3, alpha, 64)
        print(kind, alpha, c, q)

for n in (8, 9, 10, 49):
    r = torus_integral_mangoldt(n, 3)
    print(n, r.reconstructed)
