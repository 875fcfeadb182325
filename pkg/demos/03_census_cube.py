"""Census of every cube puzzle graph under the 2-rule: all regimes in one table.

Run:  python demos/03_census_cube.py
"""
from cubeslide import Rules, census
from cubeslide.explore import CSV_COLUMNS

print(CSV_COLUMNS)
for l in range(1, 8):
    rep = census(Rules(3, 2, l))
    print(rep.to_csv_row(include_runtime=False))

print("""
Reading the table: with 1-2 empty vertices nothing moves (isolated);
at 3 a lone token can circle one free face while the rest are stuck
(semi-isolated); at 4 the graph splits into two giant components separated
by permutation parity (strong parity); beyond that everything is one
component, and the diameter (God's number) shrinks as space opens up.
""")
