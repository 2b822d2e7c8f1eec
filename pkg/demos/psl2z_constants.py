"""Explicit constants for the modular group.

Evaluates the whole constant ledger from the PSL(2, Z) invariants and then
reruns the last part of the chain from the rounded value C = 1,682,997.
"""

from huberkit.huber import cofinite_ledger, huber_chain, ledger_report, psl2z_preset, with_changes
from huberkit.numerics import fixed

inv = psl2z_preset()
led = cofinite_ledger(inv)
print(ledger_report(led))

chain = huber_chain(1682997, inv, led.C14, led.C15)
print("from C = 1682997:  C_u =", fixed(chain["C_u"], 2))
print("from C as computed: C_u =", fixed(led.C_u, 2))

# what the same chain gives with B from the diameter formula instead of 753
unpinned = cofinite_ledger(with_changes(inv, B_override=None))
print(f"\nB = {fixed(unpinned.B, 4)} from Y = 2, d_1 = 1.15 gives C = {fixed(unpinned.C, 2)}")
