"""How classes of PSL(2, Z) split in the principal congruence subgroups.

A class whose image in PSL(2, Z/N) has order m contributes |G|/m classes of
Gamma(N), each of norm N(gamma)^m.
"""

from huberkit.numerics import fixed
from huberkit.spectrum import element_order, modular_spectrum, quotient_group, split_spectrum

base = modular_spectrum(2000)
for level in (2, 3, 5):
    g = quotient_group(level)
    first = base.entries[0]
    m = element_order(first.rep, level)
    print(f"N = {level}: |G| = {g.order}; the d = 5 class has order {m}, "
          f"giving {g.order // m} classes of norm {fixed(first.norm ** m, 3)}")

s = split_spectrum(base, 2, 2000)
print("\nGamma(2) up to 2000:")
for norm, mult, d in s.aggregates():
    print(f"  {fixed(norm, 3):>10}  x{mult:<3d} d = {d}")
