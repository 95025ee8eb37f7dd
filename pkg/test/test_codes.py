import pytest

from src.classify import census_closed, line_census, line_census_closed
from src.codes import (
    _rank,
    basis_m,
    check_matrix,
    corner_edge_code,
    corner_edge_monomials,
    max_m,
    min_distance,
    monomial_basis,
    nk_table,
    phase_params,
    weight4_brute,
    weight4_formula,
    weight4_report,
)
from src.errors import (
    BoundExceeded,
    DOutOfRange,
    JOutOfRange,
    MOutOfRange,
    PhaseDecompositionFailed,
    QTooSmall,
)
from src.gf import ONE, ZERO

# m values whose code the four-phase table does not decompose
UNCOVERED = {(4, 18)}


def test_monomial_basis_small():
    """Bases are listed by weight and capped at the largest useful m."""
    assert monomial_basis(2, 2).monomials == [(0, 0), (1, 0)]
    assert monomial_basis(2, 0).monomials == [(0, 0)]
    assert len(monomial_basis(3, max_m(3)).monomials) == 26


def test_monomial_basis_range():
    """m outside [0, max_m] is rejected."""
    with pytest.raises(MOutOfRange):
        monomial_basis(3, 999)
    with pytest.raises(MOutOfRange):
        monomial_basis(3, -1)


def test_basis_m():
    assert basis_m(3, [(0, 0), (1, 0), (0, 1)]) == 4


def test_check_matrix_small(gf2):
    """The first row evaluates the constant monomial at every point."""
    H = check_matrix(gf2, m=2)
    assert H.shape == (2, 8)
    assert (H.entries[0] == ONE).all()
    assert H.rank(gf2) == 2


def test_phase_examples():
    """Known rows of the phase table at q = 2."""
    spec = phase_params(2, 2)
    assert (spec.phase, spec.a, spec.b, spec.d, spec.k) == (1, 1, 0, 2, 6)
    spec = phase_params(2, 7)
    assert (spec.phase, spec.a, spec.b, spec.d, spec.k) == (4, 0, 0, 8, 1)


def test_phase_out_of_range():
    with pytest.raises(MOutOfRange):
        phase_params(3, 999)


def test_uncovered_phase_two_value():
    """The one m the table leaves undecomposed raises instead of guessing."""
    with pytest.raises(PhaseDecompositionFailed):
        phase_params(4, 18)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_dimension_matches_rank(field, q):
    """Phase-table dimension equals n minus the rank of the check matrix."""
    ctx = field(q)
    n = q**3
    for m in range(max_m(q) + 1):
        H = check_matrix(ctx, m=m)
        rank = H.rank(ctx)
        assert rank == len(H.monomials)
        if (q, m) in UNCOVERED:
            continue
        spec = phase_params(q, m)
        assert spec.k == n - rank, (q, m, spec)


@pytest.mark.parametrize("m", range(max_m(2) + 1))
def test_minimum_distance_q2(gf2, m):
    """Enumerated minimum distance matches the table for every m at q = 2."""
    H = check_matrix(gf2, m=m)
    assert min_distance(gf2, H) == phase_params(2, m).d


@pytest.mark.parametrize("m", range(8))
def test_minimum_distance_phase_one_q3(gf3, m):
    """First-phase codes at q = 3 reach the tabulated distance."""
    spec = phase_params(3, m)
    assert spec.phase == 1
    assert min_distance(gf3, check_matrix(gf3, m=m)) == spec.d


def test_minimum_distance_bound(gf3):
    """Both search budgets exhausted raises BoundExceeded."""
    H = check_matrix(gf3, m=20)
    with pytest.raises(BoundExceeded):
        min_distance(gf3, H, max_codewords=1, max_support_checks=10)


def test_rank_helper(gf3):
    assert _rank(gf3, []) == 0
    assert _rank(gf3, [(ONE, ZERO), (ZERO, ONE), (ONE, ONE)]) == 2
    assert _rank(gf3, [(2, 3), (6, 7)]) == 1  # second row is alpha^4 times the first


def test_corner_and_edge_monomials():
    """Corner and edge monomial sets, and their d and j ranges."""
    assert corner_edge_monomials(3, 3, 0) == [(0, 0), (1, 0), (0, 1)]
    assert corner_edge_monomials(3, 3, 2) == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)]
    with pytest.raises(DOutOfRange):
        corner_edge_monomials(3, 4, 0)
    with pytest.raises(DOutOfRange):
        corner_edge_monomials(3, 1, 0)
    with pytest.raises(JOutOfRange):
        corner_edge_monomials(3, 3, 3)


@pytest.mark.parametrize("j,m,k", [(0, 4, 24), (1, 6, 23), (2, 7, 22)])
def test_corner_edge_codes(gf3, j, m, k):
    """Corner and edge codes at q = 3 are the expected C(m)."""
    spec, H = corner_edge_code(gf3, 3, j)
    assert (spec.m, spec.k, spec.d) == (m, k, 3)
    assert spec.label == f"H^{j}_3"
    assert phase_params(3, m).k == k
    assert H.rank(gf3) == 27 - k


def test_nk_table(gf3):
    """Parabola and line counts merged at q = 3."""
    assert nk_table(gf3) == {0: 36, 1: 27, 2: 216, 3: 252, 4: 54, 5: 108, 6: 36}


@pytest.mark.parametrize("q", [3, 4, 5])
def test_nk_table_sums_parabolas_and_counted_lines(field, q):
    """N_k is the parabola census plus the enumerated line census."""
    ctx = field(q)
    parabolas = census_closed(q).as_dict()
    lines = line_census(ctx)
    assert lines.same_rows(line_census_closed(q))
    expected = {k: parabolas.get(k, 0) + lines.as_dict().get(k, 0) for k in {*parabolas, *lines.as_dict()}}
    assert nk_table(ctx) == expected


def test_nk_table_follows_line_census(gf3, monkeypatch):
    """A change in the enumerated line census shows up in N_k and in A4 of H1_3."""
    lines = line_census(gf3)
    shifted = lines.model_copy(update={"rows": [r.model_copy(update={"k": 5}) if r.k == 4 else r for r in lines.rows]})
    monkeypatch.setattr("src.codes.line_census", lambda ctx: shifted)
    n_k = nk_table(gf3)
    assert n_k[4] == 0
    assert n_k[5] == 108 + 54
    assert weight4_report(gf3, "H1_3").a4_formula != 11664


@pytest.mark.parametrize("code,expected", [("H0_3", 101088), ("H1_3", 11664), ("H2_3", 432)])
def test_weight4_formula(code, expected):
    assert weight4_formula(3, code) == expected


def test_weight4_formula_needs_q3():
    with pytest.raises(QTooSmall):
        weight4_formula(2, "H0_3")


@pytest.mark.parametrize("code", ["H0_3", "H1_3", "H2_3"])
def test_weight4_enumeration_q3(gf3, code):
    """Formula and enumeration agree on every d = 3 code at q = 3."""
    report = weight4_report(gf3, code, brute=True)
    assert report.a4_brute == report.a4_formula
    assert report.agree
    if code == "H1_3":
        assert report.n_k == nk_table(gf3)


@pytest.mark.parametrize(
    "code,expected", [("H0_3", 7949520), ("H1_3", 490320), ("H2_3", 17520)]
)
def test_weight4_enumeration_q4(gf4, code, expected):
    """Formula and enumeration agree on every d = 3 code at q = 4."""
    report = weight4_report(gf4, code, brute=True, workers=4)
    assert report.a4_formula == expected
    assert report.a4_brute == expected


def test_weight4_bound(gf3):
    """Enumeration refuses to check more supports than allowed."""
    _, H = corner_edge_code(gf3, 3, 0)
    with pytest.raises(BoundExceeded):
        weight4_brute(gf3, H, max_supports=100)
