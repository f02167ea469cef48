# %% [markdown]
# # The spectral curve
#
# For odd valence j the curve is xi^2 = y Shat^(j-2) / (j^2 B12^j), with the
# uniformizing parameter y = h0^2 / f0.  This script builds it for j = 3 and
# j = 5, locates the turning points exactly, and writes an SVG plot.

# %%
import tempfile
from pathlib import Path

import mpmath

from mapenum.curve import (branch_points, build_curve, curve_svg, derivative_identities,
                           pi_factor_check, sample_curve)
from mapenum.exact import sturm_isolate

# %%
for j in (3, 5):
    model = build_curve(j)
    print(f"j={j}: xi2 = {model.xi2}")
    print(f"      Pi = {model.Pi}")
    right, left = branch_points(model, 64)
    print(f"      right turning point y0c = {mpmath.nstr(right.y0.value(64), 16)}, "
          f"xi2c = {mpmath.nstr(right.xi2, 16)}")
    print(f"      left turning point  y0  = {mpmath.nstr(left.y0.value(64), 16)}, "
          f"xi2 = {mpmath.nstr(left.xi2, 16)}")
    print("     ", pi_factor_check(model).line(), derivative_identities(model).line())

# %% [markdown]
# For j = 3 the right turning point sits at y0c = 2(2 - sqrt 3), where
# xi_c^2 = 1/(108 sqrt 3).

# %%
with mpmath.workdps(30):
    print(mpmath.nstr(2 * (2 - mpmath.sqrt(3)), 20), mpmath.nstr(1 / (108 * mpmath.sqrt(3)), 20))

# %%
model = build_curve(5)
samples = sample_curve(model, 0, 4, 321)
marks = [(tp.xi2, tp.y0.value(64), "turning point") for tp in branch_points(model)[:1]]
marks += [(0, r.value(64), "Shat = 0") for r in sturm_isolate(model.Shat, 0, 4)]
out = Path(tempfile.gettempdir()) / "curve_j5.svg"
out.write_text(curve_svg(samples, marks))
print("wrote", out, f"({len(samples)} exact samples)")
