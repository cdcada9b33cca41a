"""Chain templates for the explicit cycles that witness the lower bounds.

Columns are written top entry first.  ``F(x)`` is a free sign slot, ``D(x)``
a dependent one, a bare int is fixed.
"""

from __future__ import annotations

from .matrixcore import ChainTemplate, Dep, Fixed, Free, Slot


class UnknownName(KeyError):
    pass


class BadParams(ValueError):
    pass


F, D = Free, Dep


def _slot(x) -> Slot:
    return x if isinstance(x, Slot) else Fixed(x)


def _grid(cols):
    cols = [tuple(_slot(x) for x in c) for c in cols]
    return tuple(zip(*cols))


def _template(terms, n, k, name) -> ChainTemplate:
    return ChainTemplate(tuple(_grid(t) for t in terms), n, k, name)


def thm11(n: int, k: int) -> ChainTemplate:
    """Rows 1..k-1 constant, last row +-k .. +-n: the (n-k)-sphere in a fixed frame complement."""
    if not 1 <= k <= n:
        raise BadParams(f"need 1 <= k <= n, got n={n}, k={k}")
    cols = [tuple(range(1, k)) + (F(j),) for j in range(k, n + 1)]
    return _template([cols], n, k, "thm1.1")


def _need_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise BadParams(f"need odd n >= 3, got n={n}")


def _twos(lo: int, hi: int):
    return [(D(2), F(j)) for j in range(lo, hi + 1)]


def thm13_c_terms(n: int) -> list[list[tuple]]:
    terms = []
    for i in range(3, n):
        terms.append(
            [(1, F(j)) for j in range(2, i + 1)]
            + [(1, F(n)), (F(2), D(i))]
            + _twos(i + 1, n - 1)
        )
    terms.append([(1, F(2)), (1, F(n)), (F(2), D(1))] + _twos(3, n - 1))
    terms.append([(1, D(n - 1)), (1, F(n)), (F(2), F(1))] + _twos(3, n - 1))
    terms.append([(1, F(n - 1)), (1, D(n)), (F(2), F(1))] + _twos(3, n - 2) + [(D(2), F(n))])
    terms.append([(1, D(n - 1)), (F(2), F(1))] + _twos(3, n))
    return terms


def thm13_d_terms(n: int) -> list[list[tuple]]:
    terms = []
    for i in range(3, n):
        terms.append(
            [(1, F(j)) for j in range(2, i)]
            + [(1, D(i)), (1, n), (F(2), F(i))]
            + _twos(i + 1, n - 1)
        )
    terms.append([(1, F(2)), (1, n), (F(2), D(1))] + _twos(3, n - 1))
    terms.append([(1, D(n - 1)), (1, n), (F(2), F(1))] + _twos(3, n - 1))
    terms.append([(1, F(n - 1)), (1, n), (F(2), F(1))] + _twos(3, n - 2) + [(D(2), n)])
    terms.append([(1, D(n - 1)), (F(2), F(1))] + _twos(3, n - 1) + [(D(2), n)])
    return terms


def thm13_d_boundary_terms(n: int) -> list[list[tuple]]:
    """The boundary of d_n, written out term by term."""
    terms = []
    for i in range(3, n):
        terms.append(
            [(1, F(j)) for j in range(2, i)]
            + [(1, D(i)), (F(2), F(i))]
            + _twos(i + 1, n - 1)
        )
    terms.append([(1, F(2)), (F(2), D(1))] + _twos(3, n - 1))
    terms.append([(F(2), F(1))] + _twos(3, n - 1) + [(D(2), n)])
    return terms


def tail_terms(i: int) -> list[list[tuple]]:
    """[+-2 -+2 ... -+2 ; +-1 +-3 ... +-(i-1) i]."""
    return [[(F(2), F(1))] + _twos(3, i - 1) + [(D(2), i)]]


def tail_reduced_terms(i: int) -> list[list[tuple]]:
    """[2 2 ... 2 ; +-1 +-3 ... +-i]."""
    return [[(2, F(1))] + [(2, F(j)) for j in range(3, i + 1)]]


def build_named_chain(name: str, n: int, k: int = 2, allow_even: bool = False) -> ChainTemplate:
    """Template for a named chain.

    ``thm1.1`` takes (n, k).  ``thm1.3_c`` needs odd n >= 3 and equals
    ``example_g32`` at n = 3; ``thm1.3_d`` needs odd n >= 5.
    ``thm1.3_dboundary`` takes any n >= 4.  ``allow_even`` lets ``thm1.3_c``
    take even n >= 4 as an experiment.  ``thm1.3_tail`` and
    ``thm1.3_tail_reduced`` read n as the tail length i >= 3; ``thm1.3_base``
    and ``example_g32`` need (n, k) = (3, 2).
    """
    if name == "thm1.1":
        return thm11(n, k)
    if name not in NAMED:
        raise UnknownName(name)
    if k != 2:
        raise BadParams(f"{name} is a k = 2 chain, got k={k}")
    if name == "thm1.3_c" and allow_even and n >= 4 and n % 2 == 0:
        return _template(thm13_c_terms(n), n, 2, name)
    if name in ("thm1.3_c", "thm1.3_d"):
        _need_odd(n)
        if n == 3:
            # the general summands degenerate at n = 3; the base cycle is the
            # sixteen-matrix chain
            if name == "thm1.3_d":
                raise BadParams("thm1.3_d needs odd n >= 5")
            return _template(G32_TERMS, 3, 2, name)
        terms = thm13_c_terms(n) if name == "thm1.3_c" else thm13_d_terms(n)
        return _template(terms, n, 2, name)
    if name == "thm1.3_dboundary":
        if n < 4:
            raise BadParams(f"need n >= 4, got n={n}")
        return _template(thm13_d_boundary_terms(n), n, 2, name)
    if name in ("thm1.3_tail", "thm1.3_tail_reduced"):
        if n < 3:
            raise BadParams(f"need i >= 3, got {n}")
        terms = tail_terms(n) if name == "thm1.3_tail" else tail_reduced_terms(n)
        return _template(terms, n, 2, name)
    if (n, k) != (3, 2):
        raise BadParams(f"{name} needs (n, k) = (3, 2)")
    if name == "thm1.3_base":
        return _template([[(1, F(2)), (F(2), D(1))]], 3, 2, name)
    return _template(G32_TERMS, 3, 2, name)


G32_TERMS = [
    [(1, F(2)), (1, F(3)), (F(2), D(3))],
    [(1, F(2)), (F(2), D(1)), (D(2), F(3))],
]


NAMED = (
    "thm1.1",
    "thm1.3_c",
    "thm1.3_d",
    "thm1.3_dboundary",
    "thm1.3_tail",
    "thm1.3_tail_reduced",
    "thm1.3_base",
    "example_g32",
)
