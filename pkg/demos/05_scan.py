"""Instances over a range of t, with the trivial ones picked out."""

from tep7 import verifier
from tep7.tep_model import builtin_family

for k in range(1, 5):
    rep = verifier.genericity_scan(builtin_family(k), range(-50, 51))
    trivial = [r.t for r in rep.rows if r.trivial]
    print(f"family {k}: {rep.counts['points']} points, trivial at t = {trivial}")

row = verifier.genericity_scan(builtin_family(1), [7]).rows[0]
print("t = 7:", row.instance.xs, row.instance.ys)
print("degrees passing:", [r for r, ok in row.degrees.items() if ok])
