"""Zeros of f_n(x) = x^(n+1) - 2x^n + x^2 + n^2 and where they go.

Run with ``python demos/01_zeros_and_limit_set.py``.
"""

# %% The family in term form
# f_n = (x - 2) * x^n + (x^2 + n^2) * 1^n: two terms, one alpha quadratic in n.
import numpy as np

from bkwzeros import family_roots, get_spec, limit_set
from bkwzeros.verify import distance_to_limit_set

F = get_spec("f").family
for t in F.terms:
    print("alpha n-degree", t.alpha.degree_n(), " lambda", t.lam)

# %% Roots for a range of n
rootsets = family_roots(F, 2, 30)
rs = rootsets[-1]
print(f"n={rs.n}: {len(rs.roots)} roots, worst residual {rs.residuals.max():.1e}")
print("largest modulus:", np.abs(rs.roots).max())

# %% The predicted limit set
# The two moduli |x| and 1 tie on the unit circle; the alpha of the dominant
# term outside it vanishes at x = 2, which is therefore an isolated limit.
L = limit_set(F)
print("isolated points:", [z for z, _ in L.isolated])
print("curve pieces:", len(L.curves), "with", len(L.curve_points()), "points")

# %% Distances shrink slowly, roughly like log(n)/n
for rs in rootsets[::7]:
    d = distance_to_limit_set(rs.roots, L)
    print(f"n={rs.n:2d}  max distance {d.max():.3f}  mean {d.mean():.3f}")
