"""Whole complexes of valid faces and the largest dimension carrying index 1."""

from yang_index_lab import GRASSMANN, enumerate_valid_faces, yang_index_of_complex
from yang_index_lab.complex import homology_report

# With one row the complex is the boundary of the cross-polytope.
for n in (2, 3, 4):
    C = enumerate_valid_faces(n, 1, n - 1)
    r = yang_index_of_complex(C)
    print(f"n={n} k=1 faces={C.face_counts()} index={r.index} exact={r.exact}")

# Oriented 2-planes in 3-space, up to dimension 2.
C = enumerate_valid_faces(3, 2, 2, GRASSMANN)
r = yang_index_of_complex(C)
print(f"\noriented planes in R^3: faces={C.face_counts()} index >= {r.index}")
for f in r.witness.sorted_faces()[:4]:
    print("  ", " ; ".join(" ".join(str(c[i]) for c in f) for i in range(2)))
print("   ...")

print("\ninvariant homology by dimension:")
for row in homology_report(C):
    print("  ", row)
