"""Play the classic 6-move puzzle on the cube and solve it optimally.

Run:  python demos/02_play_and_solve.py
"""
from cubeslide import LabeledConfig, apply_move, classify, legal_moves, solve

start = LabeledConfig.from_json(
    {"d": 3, "tokens": {"001": 1, "000": 2, "100": 3, "010": 4}})
target = LabeledConfig.from_json(
    {"d": 3, "tokens": {"100": 1, "001": 2, "000": 3, "010": 4}})

print("start :", start.to_json()["tokens"])
print("target:", target.to_json()["tokens"])

moves = legal_moves(start, 2)
print(f"\n{len(moves)} legal 2-moves from the start; token 2 is walled in:")
for m in moves:
    print("  ", m.to_json())

print("\nclassification:", classify(start, 2).to_json())

res = solve(start, target, 2)
print(f"\noptimal solution in {res.length} moves:")
cfg = start
for m in res.moves:
    cfg = apply_move(cfg, m)
    print(f"  token {m.label}: {m.frm.to_string()} -> {m.to.to_string()}"
          f"  (face {m.face.to_string()})")
assert cfg == target
print("replayed to the target.")
