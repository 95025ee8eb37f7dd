"""CLI behaviour through typer's test runner."""
import json

from typer.testing import CliRunner

from src.main import app

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, ["--config", "does-not-exist.yaml", "--log-level", "ERROR", *args])


def test_census_closed():
    """census prints the closed rows as JSON."""
    result = invoke("census", "--q", "3", "--mode", "closed")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert {r["k"]: r["count"] for r in data["rows"]} == {
        0: 36, 1: 0, 2: 216, 3: 252, 4: 0, 5: 108, 6: 36,
    }


def test_census_verify():
    """--verify passes when all three modes agree."""
    result = invoke("census", "--q", "2", "--verify")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["total"] == 48


def test_census_csv():
    """--out csv prints a k,count table."""
    result = invoke("census", "--q", "4", "--out", "csv")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "k,count"


def test_census_rejects_non_prime_power():
    """q must be a prime power."""
    assert invoke("census", "--q", "1").exit_code == 2
    assert invoke("census", "--q", "6").exit_code == 2


def test_census_output_independent_of_workers():
    """Output is identical for any worker count."""
    one = invoke("census", "--q", "3", "--mode", "brute", "--workers", "1")
    two = invoke("census", "--q", "3", "--mode", "brute", "--workers", "2")
    assert one.exit_code == two.exit_code == 0
    assert one.stdout == two.stdout


def test_census_db(tmp_path):
    """--db writes the census to SQLite."""
    db = tmp_path / "r.db"
    result = invoke("census", "--q", "2", "--db", str(db))
    assert result.exit_code == 0
    assert db.exists()


def test_classify_smallest():
    """classify prints the count of y = x^2 at q = 2."""
    result = invoke("classify", "--q", "2", "--a", "a^0", "--b", "0", "--c", "0")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["count"] == 3


def test_classify_with_brute():
    """--brute adds a matching direct count."""
    result = invoke("classify", "--q", "3", "--a", "a^0", "--b", "0", "--c", "0", "--brute")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["count"] == data["brute"]


def test_classify_bad_input():
    """Zero a and malformed elements exit with code 2."""
    assert invoke("classify", "--q", "3", "--a", "0").exit_code == 2
    assert invoke("classify", "--q", "3", "--a", "alpha").exit_code == 2


def test_code_info():
    """code info prints phase, distance and dimension."""
    result = invoke("code", "--q", "2", "--m", "2", "info")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert (data["phase"], data["d"], data["k"]) == (1, 2, 6)


def test_code_info_verify():
    """info --verify checks the table against the matrix rank."""
    assert invoke("code", "--q", "2", "--m", "4", "info", "--verify").exit_code == 0


def test_code_out_of_range():
    """m beyond the largest useful value exits with code 2."""
    assert invoke("code", "--q", "3", "--m", "999", "info").exit_code == 2


def test_code_weight4_verify():
    """weight4 --verify prints matching formula and enumeration."""
    result = invoke("code", "--q", "3", "--corner", "3", "weight4", "--verify")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["a4_formula"] == data["a4_brute"] == 101088


def test_code_weight4_needs_distance_three():
    """weight4 needs a d = 3 corner or edge code."""
    assert invoke("code", "--q", "3", "--m", "4", "weight4").exit_code == 2


def test_code_matrix(tmp_path):
    """matrix prints CSV rows and writes the packed file."""
    out = tmp_path / "h.bin"
    result = invoke("code", "--q", "2", "--m", "2", "matrix", "--out", "csv", "--binary", str(out))
    assert result.exit_code == 0
    assert len(result.stdout.splitlines()) == 2
    assert out.read_bytes()[:4] == b"HMAT"


def test_field():
    """field prints p, e and the modulus."""
    result = invoke("field", "--q", "4")
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"e": 2, "modulus": [1, 1, 0, 0, 1], "p": 2}


def test_field_modulus_override():
    """--field-modulus is honoured and validated."""
    result = runner.invoke(app, ["--log-level", "ERROR", "--field-modulus", "2,2,1", "field", "--q", "3"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["modulus"] == [2, 2, 1]
    assert runner.invoke(app, ["--log-level", "ERROR", "--field-modulus", "1,0,1", "field", "--q", "2"]).exit_code == 2


def test_verify_command():
    """verify reports no violations at q = 2."""
    result = invoke("verify", "--q", "2")
    assert result.exit_code == 0
    assert all(c["violations"] == 0 for c in json.loads(result.stdout)["checks"])
