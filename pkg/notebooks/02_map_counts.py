# %% [markdown]
# # Counting maps three ways
#
# Counts of labelled j-valent maps come from (i) series coefficients of the
# genus-g generating function e_g, (ii) a residue (Lagrange-inversion)
# extraction, and (iii) brute-force gluing of darts.

# %%
from mapenum.counts import (CountTable, adjudicate_genus1, kappa_closed, oracle_counts, oracle_rows,
                            residue_rows)
from mapenum.exact import rat_str

# %% Published-normalization tables: value / (j * n!)
for j, g in ((3, 0), (5, 0), (3, 2)):
    print(f"j={j} g={g}:", [rat_str(r.table_value()) for r in kappa_closed(j, g, 5)])
for j in (3, 5):
    print(f"j={j} g=1 residue mode:", [rat_str(r.table_value()) for r in residue_rows(j, 1, 5)])
    print(f"j={j} g=1 full mode:   ", [rat_str(r.table_value()) for r in kappa_closed(j, 1, 5)])

# %% The oracle: all perfect matchings of 12 darts at four cubic vertices
tally = oracle_counts(3, 4)
print(tally.summary())
print("Euler characteristic histogram (connected):", tally.euler_connected)

# %% Side-by-side table in CSV
table = CountTable()
table.extend(kappa_closed(3, 1, 2)).extend(residue_rows(3, 1, 2))
table.extend(oracle_rows(oracle_counts(3, 2))).extend(oracle_rows(tally))
print(table.to_csv())

# %% Which genus-one normalization is right?
print(adjudicate_genus1(3, 4).report())
