"""Walk through the primitive length spectrum of PSL(2, Z).

Each non-square discriminant d = 0, 1 mod 4 contributes h+(d) primitive
hyperbolic classes, all of norm eps_d^2.  We list the first few, then
compare the counting function with li(x).
"""

from huberkit.numerics import fixed, li0
from huberkit.qforms import fundamental_unit, narrow_class_number
from huberkit.spectrum import modular_spectrum

for d in (5, 8, 12, 21):
    fu = fundamental_unit(d)
    h, reps = narrow_class_number(d)
    print(f"d = {d:3d}: eps = ({fu.t} + {fu.u} sqrt {d})/2, norm {fixed(fu.norm(), 4)}, "
          f"h+ = {h}, unit of norm -1: {fu.unit_norm == -1}, reps {reps}")

s = modular_spectrum(700)
print(f"\n{s.count()} classes with norm <= 700, in {len(s.aggregates())} (norm, d) groups")
print("    x        pi(x)   li(x)")
for x in (10, 50, 100, 300, 700):
    print(f"{x:6d}  {s.pi(x):8d}  {fixed(li0(x), 2):>7}")
