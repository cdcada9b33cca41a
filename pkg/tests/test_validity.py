import itertools
import random
from fractions import Fraction

import pytest

from yang_index_lab.matrixcore import DuplicateColumn, SignedMatrix, expand_template
from yang_index_lab.named import build_named_chain
from yang_index_lab.validity import (
    CircuitWitness,
    PointWitness,
    RowPair,
    WrongK,
    certify_valid_general,
    check_point_witness,
    find_circuit,
    gram_determinant,
    induced_matrix,
    invalid_submatrix_filter,
    is_valid,
    is_valid_k2,
    validity_verdict,
)

F = Fraction


def M(text, n=None):
    return SignedMatrix.parse(text, n=n)


def test_induced_matrix():
    assert induced_matrix(M("1 ; 2"), (F(3), F(5))) == [[3], [5]]
    Mab = induced_matrix(M("1 2 ; -2 -1"), (1, 1))
    assert Mab == [[1, -1], [-1, 1]]
    Mab = induced_matrix(M("1 2 ; 2 1"), (1, -1))
    assert Mab == [[1, -1], [-1, 1]]
    half = (F(1, 2), F(1, 2))
    assert all(sum(a * t for a, t in zip(row, half)) == 0 for row in Mab)


def test_find_circuit_examples():
    w = find_circuit(M("1 2 ; 2 1"), "circuit")
    assert isinstance(w, CircuitWitness) and w.length == 2
    w = find_circuit(M("1 2 ; -2 -1"), "anticircuit")
    assert w.length == 2
    assert find_circuit(M("1 2 ; -2 -1"), "circuit") is None
    # a column repeating an entry is a circuit of length one
    w = find_circuit(SignedMatrix(((2, 2),), 2, 2), "circuit")
    assert w.length == 1
    assert find_circuit(M("1 1 ; 2 3"), "circuit") is None


def _circuit_holds(A, w):
    i0, i1 = w.rows
    rows = A.rows
    sign = 1 if w.kind == "circuit" else -1
    cols = list(w.cols)
    return all(rows[i1][cols[a]] == sign * rows[i0][cols[(a + 1) % len(cols)]]
               for a in range(len(cols)))


def test_is_valid_k2_examples():
    v = is_valid_k2(M("1 -1 ; 2 3"))
    assert v.status == "invalid" and isinstance(v.witness, RowPair) and v.witness.alpha == 1
    v = is_valid_k2(M("1 2 ; 2 1"))
    assert v.witness.kind == "circuit"
    v = is_valid_k2(M("1 2 ; -2 -1"))
    assert v.witness.kind == "anticircuit"
    assert is_valid_k2(M("1 1 ; 2 3")).status == "valid"
    with pytest.raises(WrongK):
        is_valid_k2(M("1 2"))
    with pytest.raises(DuplicateColumn):
        is_valid_k2(M("1 1 ; 2 2"))


def test_gram_examples():
    assert gram_determinant(M("1 ; 2"), (1,)) == 1
    assert gram_determinant(M("1 -1"), (F(1, 2), F(1, 2))) == 0
    assert gram_determinant(M("1 1 ; 2 3"), (F(1, 2), F(1, 2))) == F(1, 2)


def test_certify_k1():
    v = certify_valid_general(M("1 2"))
    assert v.status == "valid"
    v = certify_valid_general(M("1 -1"))
    assert v.status == "invalid"
    assert v.witness == PointWitness((F(1),), (F(1, 2), F(1, 2)))


def test_thm11_members_valid_k3():
    t = build_named_chain("thm1.1", 5, 3)
    mats = expand_template(t, is_valid)
    assert len(mats) == 8
    for A in mats:
        assert certify_valid_general(A).status == "valid"


def test_filter_examples():
    A = SignedMatrix.from_rows([[1, 2], [3, 4], [2, 1]], n=4)
    assert invalid_submatrix_filter(A).status == "invalid"
    assert invalid_submatrix_filter(M("1 1 1 ; 2 2 2 ; 3 4 5")) is None
    assert invalid_submatrix_filter(M("1 1 ; 2 3 ; 4 -4")).status == "invalid"


def test_verdict_json():
    j = is_valid_k2(M("1 2 ; 2 1")).to_json()
    assert j["verdict"] == "invalid"
    assert j["witness"]["kind"] == "circuit"
    j = certify_valid_general(M("1 -1")).to_json()
    assert j["witness"]["t"] == [{"num": 1, "den": 2}, {"num": 1, "den": 2}]


def _all_k2(n, ncols):
    cols = [c for c in itertools.product([s * m for m in range(1, n + 1) for s in (1, -1)], repeat=2)]
    for combo in itertools.combinations(cols, ncols):
        yield SignedMatrix(combo, n, 2)


def test_circuits_k2_exhaustive():
    for A in _all_k2(3, 3):
        v = is_valid_k2(A)
        if isinstance(v.witness, CircuitWitness):
            assert _circuit_holds(A, v.witness)
        # circuit iff negating one row gives an anticircuit
        neg = A.with_columns((c[0], -c[1]) for c in A.columns)
        assert (find_circuit(A, "circuit") is None) == (find_circuit(neg, "anticircuit") is None)


def test_point_witnesses_sound():
    rng = random.Random(11)
    mats = list(_all_k2(3, 3))
    for A in rng.sample(mats, 150):
        v = certify_valid_general(A)
        if v.status == "invalid":
            assert check_point_witness(A, v.witness)
            assert gram_determinant(A, v.witness.t) == 0


def _random_t(rng, m):
    w = [rng.randint(0, 50) for _ in range(m)]
    if not any(w):
        w[0] = 1
    s = sum(w)
    return [F(x, s) for x in w]


def test_valid_means_positive_gram():
    rng = random.Random(0x5EED)
    valid = [A for A in _all_k2(3, 3) if is_valid_k2(A).valid][:40]
    valid += [M("1 1 1 ; 2 2 2 ; 3 4 5"), M("1 1 ; 2 3 ; 4 5")]
    for A in valid:
        assert certify_valid_general(A).status == "valid"
        for _ in range(25):
            assert gram_determinant(A, _random_t(rng, A.ncols)) > 0


def test_k3_general_agrees_with_definition_on_samples():
    # invalid k = 3 matrices not caught by any pair of rows
    A = M("1 2 3 ; 2 3 1 ; 3 1 2")
    v = certify_valid_general(A)
    assert v.status == "invalid"
    assert check_point_witness(A, v.witness)


def test_invariance_under_row_and_column_permutation():
    rng = random.Random(5)
    for A in rng.sample(list(_all_k2(3, 3)), 80):
        base = is_valid_k2(A).status
        cols = list(A.columns)
        rng.shuffle(cols)
        assert is_valid_k2(A.with_columns(cols)).status == base
        swapped = A.with_columns((-c[1], c[0]) for c in cols)
        assert is_valid_k2(swapped).status == base


def test_is_valid_oracle():
    assert is_valid(SignedMatrix(((1, 2), (1, 2)), 2, 2)) is False
    assert is_valid(M("1 1 ; 2 3")) is True
    assert validity_verdict(M("1 2 ; 3 -3 ; 2 1")).status == "invalid"


def test_circuit_search_length_bound():
    # a circuit uses distinct columns and distinct magnitudes in each row
    rng = random.Random(3)
    for A in rng.sample(list(_all_k2(3, 3)), 200):
        for kind in ("circuit", "anticircuit"):
            w = find_circuit(A, kind)
            if w is not None:
                assert w.length <= min(A.ncols, A.n)
