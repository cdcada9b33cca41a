"""Templates, chains over GF(2), the involution, and the index of a cycle.

``~m`` stands for both signs of m and ``!m`` for the sign that keeps the
matrix valid once the ``~`` signs are chosen.  A template expands to
2**(number of ~ slots) matrices, which become the faces of a chain.
"""

from yang_index_lab import (
    STIEFEL,
    boundary,
    chain_from_template,
    expand_template,
    is_valid,
    parse_template,
    split_invariant,
    tau,
    yang_index_of_chain,
)
from yang_index_lab.matrixcore import format_face

for text in ["1 1 ; ~2 ~3", "1 2 ; ~3 !3", "1 ~2 ; ~2 !1"]:
    mats = expand_template(parse_template(text), is_valid)
    print(f"{text}: " + ", ".join(f"[{A}]" for A in mats))

# The sphere of unit vectors in the span of e2, e3, e4, seen from a fixed e1.
c = chain_from_template(parse_template("1 1 1 ; ~2 ~3 ~4"), STIEFEL)
print(f"\n{len(c)} faces of dimension {c.dim}")
print("invariant under the involution:", tau(c) == c)
print("boundary is zero:", not boundary(c))

# The index: split c = d + tau(d), take the boundary of d, repeat down to
# points, and count them mod 2.
s = split_invariant(c)
print("one half of the chain:", " | ".join(format_face(f) for f in s.d.sorted_faces()))
print("index:", yang_index_of_chain(c))
