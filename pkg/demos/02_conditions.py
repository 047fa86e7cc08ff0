"""The two discriminant conditions, printed as products."""

from tep7 import fixtures, pipeline, verifier

# substitute a2 = f a1 + g a3; phi becomes a binary sextic in (a1, a3)
s = pipeline.substituted_phi()
print("sextic has", len(s.terms), "terms")

cond = pipeline.first_condition()  # a few seconds
form = verifier.product_form(cond, [p for p, _ in fixtures.FIRST_FACTORS])
print("first condition:")
print(" ", form.text())

for c in pipeline.linear_factor_choices():
    print(f"  ({c.label})^2 -> {c.fixed} = {c.value}")

# take f = -2
choice = pipeline.choice_for(-2, None)
red = pipeline.reduce_once(choice)
print("square part:", red.square_part)
print("cofactor   :", red.cofactor)
second = pipeline.second_condition(choice, red)
print("second condition:", verifier.product_form(second).text())
print("rational roots  :", [str(r) for r in pipeline.second_roots(second)])
