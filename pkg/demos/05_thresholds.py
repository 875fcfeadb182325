"""Solvability thresholds: when does the first mobile board appear?

S(d,k) is the fewest empty vertices at which some configuration can move
all of its tokens; below it every board has stuck tokens.  The recursion
S(d,k) = S(d-1,k-1) + S(d-1,k) pins every value; search confirms it.

Run:  python demos/05_thresholds.py
"""
from cubeslide import S_closed_form, S_value, first_mobile_l, s_small

print("d\\k " + " ".join(f"{k:>4}" for k in range(1, 7)))
for d in range(1, 7):
    row = [f"{S_value(d, k):>4}" if k <= d else "    " for k in range(1, 7)]
    print(f"{d:>3} " + " ".join(row))

print("\nfirst movable board needs s(d,k) = 2^k - 1 empties;"
      f"  e.g. s(4,3) = {s_small(4, 3)}")

for d, k in [(3, 2), (4, 3), (4, 2)]:
    found = first_mobile_l(d, k)
    print(f"search over masks: first mobile l for (d={d},k={k}) is {found}"
          f"  (formula: {S_value(d, k)})")

print("\nclosed form cross-check for d=7:",
      [S_closed_form(7, k) for k in range(2, 7)],
      "= recursion:", [S_value(7, k) for k in range(2, 7)])
