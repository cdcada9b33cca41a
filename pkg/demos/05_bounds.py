"""Bounds on the index of Stiefel manifolds and oriented Grassmannians.

Each cell holds an interval for ind, nu or coind.  Known values seed the
table; maps between spaces turn into inequalities that are propagated to a
fixpoint.  ``a:b`` means every integer from a to b is still possible.
"""

from yang_index_lab import compute_table, diff_against_reference, emit_table
from yang_index_lab.bounds import explain

T = compute_table(9)
print(emit_table(T, "g"))
print(emit_table(T, "st"))
print("cells differing from the reference tables:", len(diff_against_reference(T)))

print("\nwhy nu(G(9,4)) is at least 6:")
for line in explain(T, ("G", 9, 4, "nu"), "lo"):
    print("  ", line)

# Without the odd-n Grassmann cycles the lower bounds fall back.
weaker = compute_table(9, drop=["thm13"])
print("\nwithout thm13, G(5,2):", weaker.cell("G", 5, 2).text())
