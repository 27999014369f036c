"""Write SVG overlays of zeros and limit sets for the five plotted families.

Usage: ``python demos/04_figures.py [output_dir]`` (default ``figures/``).
"""

# %%
import sys
from pathlib import Path

from bkwzeros.cli import main
from bkwzeros.families import FIGURE_CONFIGS

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(parents=True, exist_ok=True)

# %% Same thing the command line does: bkwzeros plot --family g --n 2..30 -o g.svg
for name, lo, hi in FIGURE_CONFIGS:
    target = out / f"{name}_{lo}_{hi}.svg"
    code = main(["plot", "--family", name, "--n", f"{lo}..{hi}", "-o", str(target)])
    print(f"{target}  exit {code}")

# %% The domination family has three curve pieces meeting the unit circles
code = main(["limitset", "--family", "domination", "--out", "svg", "-o", str(out / "domination_limit.svg")])
print("limit set only, exit", code)
