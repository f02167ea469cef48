# %% [markdown]
# # Finite-n recurrence coefficients
#
# a_n and b_n^2 of the orthogonal polynomials for the weight
# exp(-N (x^2/2 + t x^j)) are computed exactly from Hankel determinants of
# the moments, as power series in t.  They satisfy the discrete string and
# Toda equations, and their 1/N expansion reproduces the curve series.

# %%
from mapenum.discrete import (compare_with_series, extract_genus_coeffs, hankel_recurrence,
                              verify_string, verify_toda_and_edge)
from mapenum.exact import rat_str
from mapenum.genfun import build_series_context

# %%
c = hankel_recurrence(3, 8, 4)
for n in (1, 2, 3):
    print(f"a_{n}   =", [rat_str(x) for x in c.a[n].coeffs])
    print(f"b_{n}^2 =", [rat_str(x) for x in c.b2[n].coeffs])
print(verify_string(c).line())
print(verify_toda_and_edge(c).line())

# %% Genus expansion from sampling N = n = 1..8 and fitting in 1/n
ex = extract_genus_coeffs(3, 4)
print("z0:", [rat_str(x) for x in ex.z(0)])
print("z1:", [rat_str(x) for x in ex.z(1)])
print("u2:", [rat_str(x) for x in ex.u(2)])
print(compare_with_series(ex, build_series_context(3, 4)).line())
