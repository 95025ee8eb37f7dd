import pytest

from src.config import Limits, Settings
from src.errors import BoundExceeded
from src.verify import (
    check_char_sum,
    check_delta_zero,
    check_hilbert90,
    check_linmap,
    check_scaling,
    check_trace_dependence,
    classifier_soundness,
    image_criterion_report,
    run_verification,
)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_field_identities(field, q):
    """Every field identity holds with no violations."""
    ctx = field(q)
    for report in (
        check_hilbert90(ctx),
        check_scaling(ctx),
        check_linmap(ctx),
        check_char_sum(ctx),
        check_delta_zero(ctx),
        check_trace_dependence(ctx),
    ):
        assert report.violations == 0, report.detail
        assert report.checked > 0


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_image_criterion(field, q):
    """The image test agrees with actually solving the linear map."""
    report = image_criterion_report(field(q))
    assert report.violations == 0
    assert report.checked == (q + 1) * q * q


def test_even_field_skips_odd_checks(gf4):
    """Odd-only checks report themselves as skipped in characteristic 2."""
    assert check_char_sum(gf4).checked == 0
    assert image_criterion_report(gf4).detail == ["skipped: even q"]
    assert check_linmap(gf4).violations == 0


def test_sampled_trace_dependence(field):
    """Sampling checks exactly the requested number of leading coefficients."""
    report = check_trace_dependence(field(8), samples=5, seed=3)
    assert report.violations == 0
    assert report.checked == 5 * 64 * 64


@pytest.mark.parametrize("q", [2, 3, 4])
def test_full_suite(field, q):
    """The whole suite passes on small fields and keeps its order."""
    report = run_verification(field(q), Settings())
    assert report.ok, [c for c in report.checks if c.violations]
    names = [c.name for c in report.checks]
    assert names[0] == "hilbert90" and names[-1] == "census"


def test_soundness_respects_bound(gf5):
    """The exhaustive classifier comparison refuses fields above the bound."""
    with pytest.raises(BoundExceeded):
        classifier_soundness(gf5, max_q=3)


def test_suite_skips_exhaustive_checks_above_bound(gf5):
    """Above max_enum_q the exhaustive sweeps are reported as skipped."""
    report = run_verification(gf5, Settings(limits=Limits(max_enum_q=3)))
    by_name = {c.name: c for c in report.checks}
    for name in ("scaling", "linmap", "classifier_soundness"):
        assert by_name[name].checked == 0
        assert by_name[name].detail == ["skipped: q above max_enum_q=3"]
    assert by_name["census"].checked == 1
    assert report.ok
