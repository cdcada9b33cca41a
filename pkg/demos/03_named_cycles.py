"""The explicit cycles behind the lower bounds.

``thm1.1`` is the (n-k)-sphere of frames whose first k-1 vectors are fixed.
``thm1.3_c`` is a cycle in the quotient by orientation-preserving row
operations; it closes up only there.
"""

from yang_index_lab import GRASSMANN, STIEFEL, build_named_chain, verify_chain_report

for n, k in [(4, 2), (6, 3), (7, 7)]:
    rep = verify_chain_report(build_named_chain("thm1.1", n, k))
    print(f"thm1.1 n={n} k={k}: faces={rep['faces']} index={rep['nu']} pass={rep['pass']}")

print()
for n in (3, 5, 7):
    t = build_named_chain("thm1.3_c", n, 2)
    for mode in (GRASSMANN, STIEFEL):
        rep = verify_chain_report(t, mode)
        print(f"thm1.3_c n={n} {mode:9s}: faces={rep['faces']:5d} "
              f"boundary faces={rep['boundary_faces']:4d} index={rep['nu']}")

# For even n the same summands still close up in the quotient, but the index is 0.
rep = verify_chain_report(build_named_chain("thm1.3_c", 6, 2, allow_even=True), GRASSMANN)
print(f"\neven n=6: boundary zero={rep['boundary_zero']} index={rep['nu']}")
