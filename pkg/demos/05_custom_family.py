"""Define a family in JSON, check it, and verify convergence of its zeros.

Here P_n(x) = (x^2 - 1)^n + n, written as two terms.
"""

# %%
import json
import tempfile
from pathlib import Path

from bkwzeros import convergence_report, limit_set, load_family, nondegeneracy_check

spec = {
    "name": "demo",
    "index_offset": 0,
    "terms": [
        # alpha = 1, lambda = x^2 - 1
        {"alpha": [[[1, 0]]], "lambda": [[-1, 0], [0, 0], [1, 0]]},
        # alpha = n (the n^1 coefficient is the constant 1), lambda = 1
        {"alpha": [[], [[1, 0]]], "lambda": [[1, 0]]},
    ],
}
path = Path(tempfile.mkdtemp()) / "demo.json"
path.write_text(json.dumps(spec))
F = load_family(path)

# %% Nondegeneracy: no constant modulus ratio between the lambdas
print("nondegenerate:", nondegeneracy_check(F).passed)

# %% Limit set: the lemniscate |x^2 - 1| = 1 where the two moduli tie
L = limit_set(F)
pts = L.curve_points()
print("curve points:", len(pts), " max ||x^2 - 1| - 1|:", abs(abs(pts**2 - 1) - 1).max())

# %% Zeros approach it
rep = convergence_report(F, 10, 40, L)
for n, mx, mean in rep.per_n[::10]:
    print(f"n={n:2d}  max distance {mx:.3f}")
print("trend", round(rep.trend, 3))
