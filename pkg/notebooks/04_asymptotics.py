# %% [markdown]
# # Large-order behaviour
#
# Every e_g has radius of convergence |xi_c| set by the turning point.  The
# local data there give the leading large-order law of the coefficients and
# the constants of a quadratic recurrence for the leading singular terms.

# %%
import mpmath

from mapenum.asymptotics import asymptotic_vs_exact, critical_data, gamma_direct, zeta_recurrence

# %%
cd = critical_data(3, 64)
for name, value in cd.rows():
    print(f"{name:>6} = {value}")
print("gamma by direct evaluation:", mpmath.nstr(gamma_direct(cd)[-1], 15))

# %%
print("zeta_g:", [mpmath.nstr(z, 10) for z in zeta_recurrence(cd, 6)])

# %% Exact coefficients against the transfer law
for kind, g, ms in (("twolegged", 0, range(4, 13)), ("twolegged", 1, range(4, 13)), ("eg", 2, range(3, 7))):
    tab = asymptotic_vs_exact(3, g, kind, ms, 64, cd)
    print(f"{kind} g={g}: ratios", [mpmath.nstr(r[3], 6) for r in tab.rows],
          "monotone" if tab.monotone() else "not monotone",
          f"(published-law ratio tends to {mpmath.nstr(tab.printed_limit, 6)})")
