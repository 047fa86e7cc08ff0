"""f = -2, g = -1 all the way to a quartic family, then t = 2."""

from tep7 import pipeline
from tep7.tep_model import builtin_family, instantiate, verify_family

asm = pipeline.assemble(-2, -1, "worked")
print("conic:", asm.conic)
print("a1(t), a2(t), a3(t):", *asm.alpha, sep="\n  ")
print("y(t):", asm.y)

fam = asm.family
for i in range(4):
    print(f"x{i+1} = {fam.xs[i]}    y{i+1} = {fam.ys[i]}")

rep = verify_family(fam, range(1, 9))
print("zero residual for r =", [r for r, z in rep.zero.items() if z])
print("same as the stored family 1:", pipeline.equivalent(fam, builtin_family(1)))

inst = instantiate(builtin_family(1), 2)
print("t = 2:", inst.xs, "|", inst.ys)
