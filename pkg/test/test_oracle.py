import numpy as np
import pytest

from src.classify import census_closed
from src.curve import Parabola
from src.errors import BoundExceeded, ZeroA
from src.gf import ONE, ZERO
from src.oracle import brute_census, brute_count, count_histogram, count_matrix, orbit_check


def test_brute_count_smallest(gf2):
    """Direct count of y = x^2 at q = 2."""
    assert brute_count(gf2, Parabola(ONE, ZERO, ZERO)) == 3


def test_brute_count_rejects_lines(gf2):
    """a = 0 is a line, not a parabola."""
    with pytest.raises(ZeroA):
        brute_count(gf2, Parabola(ZERO, ONE, ZERO))


def test_count_matrix_agrees_with_single_counts(gf3):
    """Each count matrix cell equals the single-parabola count."""
    a = 3
    counts = count_matrix(gf3, a)
    assert counts.shape == (9, 3)
    # every x lands in exactly one trace class
    assert np.all(counts.sum(axis=1) == 9)
    for bi, b in enumerate(gf3.elements()):
        for c in gf3.elements():
            assert counts[bi, gf3.sub_index(gf3.trace(c))] == brute_count(gf3, Parabola(a, b, c))


def test_histogram_length(gf4):
    """The histogram covers counts 0 through 2q."""
    assert len(count_histogram(gf4, 1)) == 9


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_brute_census_matches_closed_formulas(field, q):
    """Brute census equals the closed formulas."""
    table = brute_census(field(q))
    assert table.mode == "brute"
    assert table.same_rows(census_closed(q))
    assert table.total == q**4 * (q * q - 1)


def test_brute_census_sixteen(field):
    """Brute census at q = 16 equals the closed formulas."""
    assert brute_census(field(16)).same_rows(census_closed(16))


def test_brute_census_bound(gf5):
    """q above the bound raises BoundExceeded."""
    with pytest.raises(BoundExceeded):
        brute_census(gf5, max_q=4)


def test_workers_do_not_change_census(gf3):
    """Parallel and serial censuses are identical."""
    assert brute_census(gf3, workers=2) == brute_census(gf3, workers=1)


@pytest.mark.parametrize("q,parabolas,autos", [(2, 48, 8), (3, 648, 27)])
def test_exhaustive_orbit_check(field, q, parabolas, autos):
    """Exhaustive orbit check covers every pair with no violations."""
    report = orbit_check(field(q))
    assert report.exhaustive
    assert (report.parabolas, report.automorphisms) == (parabolas, autos)
    assert report.pairs == parabolas * autos
    assert report.violations == []


def test_sampled_orbit_check(gf4):
    """Sampled orbit check finds no violations."""
    report = orbit_check(gf4, samples=6, seed=1)
    assert not report.exhaustive
    assert report.parabolas == 6
    assert report.violations == []
    assert orbit_check(gf4, samples=6, seed=1) == report
