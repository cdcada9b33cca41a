import random
from fractions import Fraction

from yang_index_lab.bernstein import (
    bisect_poly,
    certify_positive,
    elevate,
    linear_form,
    monomials,
    poly_det,
    poly_eval,
    poly_mul,
)


def _rand_point(rng, nv):
    w = [rng.randint(0, 20) for _ in range(nv)]
    s = sum(w) or 1
    return [Fraction(x, s) for x in w]


def test_monomials_count():
    assert len(list(monomials(3, 4))) == 15
    assert all(sum(e) == 4 for e in monomials(3, 4))


def test_elevate_preserves_values():
    rng = random.Random(1)
    p = poly_mul(linear_form([1, -2, 3]), linear_form([2, 1, 1]))
    q = elevate(p, 3)
    for _ in range(20):
        t = _rand_point(rng, 3)
        assert poly_eval(p, t) == poly_eval(q, t)


def test_bisect_matches_substitution():
    rng = random.Random(2)
    p = poly_mul(linear_form([1, 0, 2]), linear_form([3, -1, 1]))
    half = bisect_poly(p, 2, 0, 1, "i")
    for _ in range(20):
        mu = _rand_point(rng, 3)
        lam = [mu[0] + mu[1] / 2, mu[1] / 2, mu[2]]
        assert poly_eval(half, mu) == 4 * poly_eval(p, lam)


def test_det():
    a, b = linear_form([1, 0]), linear_form([0, 1])
    d = poly_det([[a, b], [b, a]], 2)
    assert d == {(2, 0): 1, (0, 2): -1}


def test_positive_and_zero():
    # t1^2 + t2^2 > 0 on the segment
    p = {(2, 0): 1, (0, 2): 1}
    assert certify_positive(p, 2, 2).status == "positive"
    # (t1 - t2)^2 vanishes at the midpoint
    q = {(2, 0): 1, (1, 1): -2, (0, 2): 1}
    r = certify_positive(q, 2, 2)
    assert r.status == "zero"
    assert r.zero == (Fraction(1, 2), Fraction(1, 2))


def test_irrational_zero_unresolved():
    # (t1^2 - 2 t2^2)^2 vanishes only where t1 / t2 = sqrt(2)
    p = {(4, 0): 1, (2, 2): -4, (0, 4): 4}
    r = certify_positive(p, 2, 4, max_depth=6)
    assert r.status == "unresolved"
