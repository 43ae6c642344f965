"""Smoke test for the Python bindings.

    pip install --no-build-isolation ./crates/dichroma-py
    python -m pytest python/smoke_test.py
"""

import itertools

import pytest

import dichroma


def c3():
    return dichroma.Digraph(3, [(0, 1), (1, 2), (2, 0)])


def test_digraph_basics():
    d = c3()
    assert d.n == 3 and len(d) == 3
    assert d.arcs() == [(0, 1), (1, 2), (2, 0)]
    assert d.has_arc(0, 1) and not d.has_arc(1, 0)
    assert d.reverse().has_arc(1, 0)
    assert dichroma.Digraph.from_text(d.to_text()) == d
    assert d.induced([0, 1]).arcs() == [(0, 1)]


def test_bad_input_raises():
    with pytest.raises(dichroma.DichromaError):
        dichroma.Digraph(2, [(0, 0)])
    with pytest.raises(dichroma.DichromaError, match="SemanticError|loop"):
        dichroma.Digraph.from_text("digraph 2\n0 0\n")


def test_exact_and_verify():
    chi, colouring = dichroma.exact_dichromatic(c3())
    assert (chi, colouring) == (2, [1, 1, 2])
    bad = dichroma.verify_dicolouring(c3(), [1, 1, 1])
    assert bad["MonochromaticCycle"]["cycle"] == [0, 1, 2]
    assert dichroma.verify_dicolouring(c3(), colouring) == "Valid"
    with pytest.raises(dichroma.BudgetExceeded):
        dichroma.exact_dichromatic(dichroma.gen_fk(3, 3), budget=2)


def test_brooks_and_lambda():
    k4 = dichroma.Digraph(4, [(u, v) for u, v in itertools.permutations(range(4), 2)])
    verdict = dichroma.classify_brooks(k4)
    assert verdict["tight"] and verdict["delta_max"] == 3
    assert max(dichroma.brooks_colour(k4)) == 4
    assert dichroma.arc_connectivity(k4) == 3


def test_heroes_and_patterns():
    for k in (1, 2, 3):
        assert dichroma.exact_dichromatic(dichroma.gen_fk(3, k))[0] == k
    pattern = dichroma.named_pattern("C3(1,2,2)")
    assert dichroma.contains_induced(dichroma.gen_chordal_c122(3), pattern) is None
    assert dichroma.contains_induced(c3(), dichroma.named_pattern("C3")) == [0, 1, 2]


def test_local_structure():
    assert dichroma.inround_order(c3()) is not None
    colouring = dichroma.two_dicolour_lot(c3(), [0])
    assert max(colouring) == 2


def test_defective():
    sh = dichroma.Multigraph.shannon(4)
    assert dichroma.defective_colour(sh, 3)["colours"] == 2
    index, colouring = dichroma.exact_defective_index(sh, 3)
    assert index == 2 and dichroma.verify_edge_colouring(sh, colouring, 3)
    g, c = dichroma.colour_shannon_multigraph(9, 3)
    assert g == dichroma.Multigraph.shannon(9) and max(c) == 4
    assert dichroma.exact_defective_index(dichroma.Multigraph.complete(7), 3)[0] == 3


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
