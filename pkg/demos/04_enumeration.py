"""Run every branch and group the families that come out.

Affine reparametrization (t -> a t + b) gives 8 classes; allowing
t -> (a t + b)/(c t + e) collapses them to 3.  Neither count is 4.
"""

from tep7 import pipeline
from tep7.tep_model import builtin_family

traces = pipeline.enumerate_branches()
for tr in traces:
    outs = ", ".join(f"{o.choice.name}:{o.status}" for o in tr.outcomes)
    print(f"{tr.choice.label:14s} roots {[str(r) for r in tr.roots]}")
    print("   ", outs)

for relation in ("affine", "projective"):
    classes = pipeline.enumerate_families(traces, relation)
    print(f"\n{relation}: {len(classes)} classes")
    for fam in classes:
        hits = [k for k in range(1, 5) if pipeline.equivalent(fam, builtin_family(k), relation)]
        print(f"  {fam.label:14s} ~ builtin {hits}")
