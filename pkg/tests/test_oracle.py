import pytest

from chordcount.oracle import (ChordDiagram, OracleBudgetError, boundary_cycles, census, compositions,
                               diagram_count, enumerate_diagrams, is_connected, is_orientable, matchings)
from chordcount.verification import census_checks


def test_encode_decode():
    d = ChordDiagram((2, 2), (2, 3, 0, 1), (0, 1))
    assert d.encode() == "2,2|0-2,1-3|01"
    assert ChordDiagram.decode(d.encode()) == d


def test_enumeration_sizes():
    assert sum(1 for _ in matchings(6)) == 15
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    for b, k, tw in [(1, 3, False), (2, 2, True), (3, 1, True)]:
        assert sum(1 for _ in enumerate_diagrams(b, k, tw)) == diagram_count(b, k, tw)


def test_single_chord():
    plain = ChordDiagram((2,), (1, 0), (0,))
    twisted = ChordDiagram((2,), (1, 0), (1,))
    assert boundary_cycles(plain) == 2  # annulus
    assert boundary_cycles(twisted) == 1  # Moebius band
    assert is_orientable(plain) and not is_orientable(twisted)


def test_crossing_chords_torus():
    d = ChordDiagram((4,), (2, 3, 0, 1), (0, 0))
    assert boundary_cycles(d) == 1  # chi = 1 - 2 + 1 = 0, genus 1


def test_connectivity():
    assert not is_connected(ChordDiagram((2, 2), (1, 0, 3, 2), (0, 0)))
    assert is_connected(ChordDiagram((2, 2), (2, 3, 0, 1), (0, 0)))
    assert not is_connected(ChordDiagram((0, 2), (1, 0), (0,)))


def test_twist_on_both_ends_is_orientable():
    # flipping backbone 2 undoes the twists on both chords
    d = ChordDiagram((2, 2), (2, 3, 0, 1), (1, 1))
    assert is_orientable(d)
    assert not is_orientable(ChordDiagram((2, 2), (2, 3, 0, 1), (1, 0)))


def test_small_counts():
    t = census(1, 2, twisted=False)
    assert t.orientable_by_genus() == {0: 2, 1: 1}
    tw = census(1, 2, twisted=True)
    assert tw.nonoriented_by_crosscap() == {0: 2, 1: 5, 2: 5}
    assert tw.orientable_by_genus() == {0: 2, 1: 1}


def test_census_one_backbone_three_chords():
    assert all(c.ok for c in census_checks())
    t = census(1, 3, twisted=True)
    assert t.nonoriented_by_crosscap()[1] == 22
    assert t.nonorientable_by_crosscap()[2] == 42


def test_budget():
    with pytest.raises(OracleBudgetError):
        list(enumerate_diagrams(3, 6, True, budget=1000))
    with pytest.raises(ValueError):
        list(enumerate_diagrams(0, 1, False))
