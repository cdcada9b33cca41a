import csv
import io
import json
import random

import pytest

from yang_index_lab.bounds import (
    BASE_FACTS,
    EXTRA_FACTS,
    Contradiction,
    G,
    ST,
    base_facts,
    compute_table,
    diff_against_reference,
    emit_table,
    explain,
    golden_tables,
    propagate,
    space_dim,
)


def nu(T, fam, n, k):
    return T.cell(fam, n, k).text()


def test_base_fact_examples():
    T = base_facts(9)
    assert (T.cell(ST, 8, 2).lo, T.cell(ST, 8, 2).hi) == (6, 6)
    assert (T.cell(G, 4, 2).lo, T.cell(G, 4, 2).hi) == (2, 2)
    assert (T.cell(G, 5, 1).lo, T.cell(G, 5, 1).hi) == (4, 4)


def test_dims():
    assert space_dim(ST, 5, 2) == 7
    assert space_dim(G, 5, 2) == 6
    assert space_dim(ST, 3, 3) == 3


def test_propagation_examples():
    T = compute_table(9)
    assert nu(T, ST, 4, 3) == "1:2"
    assert nu(T, G, 6, 3) == "4:9"
    assert nu(T, G, 3, 2) == "2"
    assert nu(T, G, 9, 4) == "6:20"
    assert nu(T, ST, 8, 2) == "6"


def test_small_table():
    T = compute_table(2)
    md = emit_table(T, "g")
    rows = [line for line in md.splitlines()[2:]]
    assert rows == ["| 0 | 0 |  |  |", "| 1 | 0 | 0 |  |", "| 2 | 0 | 1 | 0 |"]


def test_tables_match_reference():
    T = compute_table(9)
    assert diff_against_reference(T) == []
    gold = golden_tables()
    assert gold["G"][4] == ["0", "3", "2", "3", "0"]
    assert gold["St"][7] == ["7", "6", "5:6", "4:6", "3:6", "2:6", "1:6", "0"]


def test_formats():
    T = compute_table(4)
    rows = list(csv.reader(io.StringIO(emit_table(T, "st", "csv"))))
    assert rows[0] == ["n", "k=1", "k=2", "k=3", "k=4"]
    assert rows[3] == ["3", "2", "1:2", "0", ""]
    data = json.loads(emit_table(T, "g", "json"))
    assert data["family"] == "G"
    cell = next(c for c in data["cells"] if (c["n"], c["k"]) == (4, 2))
    assert (cell["lo"], cell["hi"], cell["text"]) == (2, 2, "2")
    extra = {f["id"] for f in data["facts"] if f["extra"]}
    assert extra == EXTRA_FACTS == {"st_diag_zero"}
    with pytest.raises(ValueError):
        emit_table(T, "g", "xml")


def test_drop_thm13():
    T = compute_table(9, drop=["thm13"])
    assert T.cell(G, 5, 2).lo < 4
    assert diff_against_reference(T)


def test_drop_extra_fact():
    # the quotient rule into the zero-dimensional G(n, n) already forces the diagonal
    T = compute_table(9, drop=["st_diag_zero"])
    assert diff_against_reference(T) == []
    chain = explain(T, (ST, 5, 5, "nu"), "hi")
    assert "quotient" in chain[0] and "G(5,5)" in chain[-1]
    # without both, the diagonal widens
    T = compute_table(9, drop=["st_diag_zero", "quotient"])
    assert T.cell(ST, 3, 3).text() == "0:2"
    assert diff_against_reference(T)


def test_confluence():
    base = compute_table(9).snapshot()
    for seed in range(20):
        assert compute_table(9, rng=random.Random(seed)).snapshot() == base


def test_monotone_shrinking():
    T = base_facts(7)
    before = T.snapshot()
    propagate(T)
    for key, (lo, hi) in T.snapshot().items():
        assert lo >= before[key][0] and hi <= before[key][1]


def test_no_contradiction_n12():
    T = compute_table(12)
    assert all(c.lo <= c.hi for c in T.cells.values())


@pytest.mark.parametrize("fact", sorted(BASE_FACTS))
def test_leave_one_out(fact):
    compute_table(9, drop=[fact])


def test_provenance_terminates_in_base_fact():
    T = compute_table(9)
    for key in T.cells:
        for bound in ("lo", "hi"):
            chain = explain(T, key, bound)
            assert chain
            assert chain[-1].split(" by ")[-1] in BASE_FACTS


def test_contradiction():
    with pytest.raises(Contradiction) as e:
        compute_table(5, inject=[{"family": "G", "n": 4, "k": 2, "lo": 3}])
    assert e.value.chain["lo"] and e.value.chain["hi"]


def test_inject():
    T = compute_table(9, inject=[{"family": "st", "n": 4, "k": 3, "lo": 2, "id": "computed"}])
    assert T.cell(ST, 4, 3).text() == "2"
    with pytest.raises(KeyError):
        compute_table(3, inject=[{"family": "G", "n": 7, "k": 2, "lo": 1}])


def test_unknown_drop():
    with pytest.raises(KeyError):
        base_facts(3, drop=["nope"])
