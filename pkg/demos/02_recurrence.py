"""Every exponential-sum family satisfies a linear recurrence in n.

The characteristic roots are the lambdas, each repeated once more than the
n-degree of its alpha.
"""

# %%
from bkwzeros import expand_at_index, generate_sequence, get_spec, to_recurrence
from bkwzeros.recurrence import characteristic_poly

F = get_spec("steele_cycle").family
R = to_recurrence(F)
print("order", R.order)
for i, f in enumerate(R.f, start=1):
    print(f"  f_{i} = {f}")

# %% The characteristic polynomial y^3 - (t+2) y^2 + (2t+1) y - t
for k, c in enumerate(characteristic_poly(F)):
    print(f"  y^{k}: {c}")

# %% Regenerate the sequence and compare with direct expansion
seq = generate_sequence(R, 8)
for n, p in enumerate(seq, start=1):
    assert p == expand_at_index(F, n)
print("P_8 =", seq[-1])

# %% A family with an alpha quadratic in n needs a triple root at lambda = 1
print("f family order:", to_recurrence(get_spec("f").family).order)
