"""Exact Steele polynomials and expected MST lengths.

Edge lengths are i.i.d. uniform on [0, 1]; the expected length of the
minimum spanning tree is the integral of the Steele polynomial over [0, 1].
"""

# %% Tutte polynomial of a small multigraph
from bkwzeros import Multigraph, mean_mst_length, steele, tutte, tutte_oracle
from bkwzeros.graphpoly import complete_graph, cycle_graph, theta_graph

G = Multigraph(3, ((0, 1), (0, 1), (1, 2), (2, 0)))
T = tutte(G)
print("T =", T, "  spanning trees:", T(1, 1))
assert T == tutte_oracle(G)

# %% Cycles give t^n - n t + (n - 1)
for n in range(3, 7):
    print(f"S(C_{n}) coefficients:", steele(cycle_graph(n)).to_strings())

# %% Expected MST lengths as exact fractions
for name, H in [("C3", cycle_graph(3)), ("K4", complete_graph(4)),
                ("K5", complete_graph(5)), ("theta(2,2,2)", theta_graph(2, 2, 2))]:
    m = mean_mst_length(H)
    print(f"{name:13s} {str(m):>10s}  = {float(m):.6f}")
