import json
import random
from itertools import combinations
from math import comb

import pytest

from yang_index_lab.chains import (
    GRASSMANN,
    STIEFEL,
    boundary,
    chain_from_template,
    tau,
    yang_index_of_chain,
)
from yang_index_lab.complex import (
    audit,
    default_cache_dir,
    enumerate_valid_faces,
    homology_report,
    invariant_cycle_basis,
    load_cached,
    verify_chain_report,
    vertices,
    yang_index_of_complex,
)
from yang_index_lab.matrixcore import SignedMatrix
from yang_index_lab.named import build_named_chain
from yang_index_lab.validity import is_valid_k1


def test_square():
    C = enumerate_valid_faces(2, 1, 1)
    assert set(C.faces(0)) == {((1,),), ((-1,),), ((2,),), ((-2,),)}
    assert set(C.faces(1)) == {((1,), (2,)), ((1,), (-2,)), ((-1,), (2,)), ((-1,), (-2,))}


def _brute_k1(n, m):
    # all (m+1)-subsets of signed axes accepted by the k = 1 rule
    cols = [(s * i,) for i in range(1, n + 1) for s in (1, -1)]
    return sum(1 for f in combinations(cols, m + 1) if is_valid_k1(SignedMatrix(f, n, 1)).valid)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cross_polytope_counts(n):
    C = enumerate_valid_faces(n, 1, n - 1)
    for m in range(n):
        assert len(C.faces(m)) == comb(n, m + 1) * 2 ** (m + 1) == _brute_k1(n, m)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_index(n):
    r = yang_index_of_complex(enumerate_valid_faces(n, 1, n - 1))
    assert r.index == n - 1 and r.exact


def test_truncated_is_lower_bound():
    r = yang_index_of_complex(enumerate_valid_faces(3, 1, 1))
    assert r.index == 1 and not r.exact


def test_grassmann_32():
    C = enumerate_valid_faces(3, 2, 2, GRASSMANN)
    assert C.face_counts() == [6, 42, 96]
    r = yang_index_of_complex(C)
    assert r.index == 2
    ex = chain_from_template(build_named_chain("example_g32", 3), GRASSMANN)
    assert all(f in C for f in ex.faces)
    assert r.witness == ex


def test_thm11_witness_lies_in_complex():
    for n, k in [(3, 2), (4, 2)]:
        C = enumerate_valid_faces(n, k, n - k)
        r = yang_index_of_complex(C)
        assert r.index >= n - k
        c = chain_from_template(build_named_chain("thm1.1", n, k))
        assert all(f in C for f in c.faces)


def test_stiefel_orbits_and_audit():
    C = enumerate_valid_faces(3, 2, 2)
    assert audit(C) == []
    for m in range(3):
        basis = invariant_cycle_basis(C, m)
        assert 2 * basis.orbit_count == len(C.faces(m))
        for c in basis.cycles:
            if m:
                assert not boundary(c)


def test_grassmann_audit():
    assert audit(enumerate_valid_faces(4, 2, 2, GRASSMANN)) == []


def test_homology_report_sphere():
    rows = homology_report(enumerate_valid_faces(3, 1, 2))
    assert [r["homology"] for r in rows] == [1, 1, 1]
    assert all(r["index_nonzero"] for r in rows)


def test_cache_roundtrip(tmp_path):
    C = enumerate_valid_faces(3, 2, 2, GRASSMANN, cache_dir=tmp_path)
    path = next(tmp_path.iterdir())
    head = json.loads(path.read_text().splitlines()[0])
    assert head == {"n": 3, "k": 2, "m": 2, "mode": "grassmann", "engine": "1", "excluded": {}}
    again = load_cached(tmp_path, 3, 2, 2, GRASSMANN)
    assert again.faces_by_dim == C.faces_by_dim
    assert load_cached(tmp_path, 3, 2, 1, GRASSMANN) is None


def test_cache_env(monkeypatch, tmp_path):
    monkeypatch.setenv("YANG_CACHE_DIR", str(tmp_path))
    assert default_cache_dir() == tmp_path


def test_vertices():
    assert len(vertices(3, 2)) == 24
    assert vertices(2, 1) == [(1,), (-1,), (2,), (-2,)]


def test_bad_params():
    with pytest.raises(ValueError):
        enumerate_valid_faces(2, 3, 1)
    with pytest.raises(ValueError):
        enumerate_valid_faces(3, 2, 1, mode="flat")


def test_verify_report():
    rep = verify_chain_report(build_named_chain("thm1.1", 6, 3))
    assert rep["pass"] and rep["nu"] == 1 and rep["all_valid"]
    rep = verify_chain_report(build_named_chain("thm1.3_c", 7), GRASSMANN)
    assert rep["pass"] and rep["nu"] == 1
    rep = verify_chain_report(build_named_chain("thm1.3_c", 7), STIEFEL)
    assert not rep["pass"] and not rep["boundary_zero"] and rep["nu"] is None


def test_index_vanishes_on_boundaries():
    rng = random.Random(0x5EED)
    C = enumerate_valid_faces(3, 2, 2)
    faces = C.faces(2)
    for _ in range(50):
        e = C.chain(rng.sample(faces, 5), 2)
        e = e + tau(e)
        if e:
            assert yang_index_of_chain(boundary(e)) == 0
