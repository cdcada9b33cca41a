"""Deciding whether a signed matrix is valid.

A k x (m+1) matrix of signed axis indices is valid when the k paths it
describes stay linearly independent across the whole simplex.  For two rows
there is a purely combinatorial test; for more rows the library certifies
either side exactly, or says it could not decide.
"""

from fractions import Fraction

from yang_index_lab import (
    SignedMatrix,
    certify_valid_general,
    find_circuit,
    gram_determinant,
    is_valid_k2,
)

# Two rows: a row holding both 2 and -2, a circuit, an anticircuit, and a valid one.
for text in ["1 1 ; 2 -2", "1 2 ; 2 1", "1 2 ; -2 -1", "1 1 ; 2 3"]:
    A = SignedMatrix.parse(text)
    v = is_valid_k2(A)
    print(f"{text:14s} -> {v.status:8s} {v.to_json().get('witness', '')}")

# The circuit [1 2 ; 2 1]: two columns whose entries match crosswise.
print(find_circuit(SignedMatrix.parse("1 2 ; 2 1"), "circuit"))

# The Gram determinant is the quantity behind validity.  At the midpoint of
# [1 1 ; 2 3] the two paths are e1 and (e2 + e3) / 2.
half = (Fraction(1, 2), Fraction(1, 2))
print("gram at midpoint:", gram_determinant(SignedMatrix.parse("1 1 ; 2 3"), half))

# Three rows.  The general engine returns a Bernstein certificate for valid
# matrices and an exact (b, t) point for invalid ones.
valid = certify_valid_general(SignedMatrix.parse("1 1 1 ; 2 2 2 ; 3 4 5"))
print("3 rows, valid:", valid.status, valid.certificate)

# No pair of rows of this matrix is invalid, yet the whole is.
cyclic = certify_valid_general(SignedMatrix.parse("1 2 3 ; 2 3 1 ; 3 1 2"))
print("3 rows, cyclic:", cyclic.status, cyclic.witness.to_json())
