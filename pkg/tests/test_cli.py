import pytest

from starcodim.algebra import dump, nilpotent_tensor
from starcodim.cli import main
from starcodim.families import make_A_T


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.alg"
    dump(make_A_T(2), str(path))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys, a2_file):
    code, out, _ = run(capsys, "validate", str(a2_file))
    assert code == 0 and "valid" in out


def test_validate_broken_sign(capsys, a2_file, tmp_path):
    text = a2_file.read_text().replace("involution sign -1 +1 +1 -1", "involution sign -1 +1 +1 +1")
    bad = tmp_path / "bad.alg"
    bad.write_text(text)
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "(z1, a)" in out


def test_validate_duplicate(capsys, a2_file, tmp_path):
    text = a2_file.read_text()
    dup = tmp_path / "dup.alg"
    dup.write_text(text + text.splitlines()[-1] + "\n")
    code, _, err = run(capsys, "validate", str(dup))
    assert code == 2 and "line" in err


def test_codim_small(capsys):
    code, out, _ = run(capsys, "codim", "--family", "at", "--T", "2", "--n-max", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,k,m,c_km,binomial,contribution,c_n"
    assert lines[2].endswith(",2") and lines[-1].endswith(",4")


def test_codim_empty(capsys):
    code, out, _ = run(capsys, "codim", "--family", "at", "--T", "2", "--n-max", "0")
    assert code == 0 and out.splitlines() == ["n,k,m,c_km,binomial,contribution,c_n"]


def totals(out):
    return [line.split(",")[-1] for line in out.splitlines()[1:] if not line.endswith(",")]


def test_codim_modes_agree(capsys):
    _, full, _ = run(capsys, "codim", "--T", "2", "--n-max", "4", "--basis-mode", "full")
    _, fast, _ = run(capsys, "codim", "--T", "2", "--n-max", "4", "--basis-mode", "left-normed")
    assert totals(full) == totals(fast) == ["2", "4", "12", "38"]


def test_codim_single_cell(capsys):
    code, out, _ = run(capsys, "codim", "--T", "2", "--k", "1", "--m", "2")
    assert code == 0 and out.splitlines()[1] == "3,1,2,2,3,6,"


def test_codim_jobs_deterministic(capsys, tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"out{jobs}.csv"
        assert run(capsys, "codim", "--T", "3", "--n-max", "5", "--jobs", jobs, "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--family", "at", "--T", "2", "--suite", "all", "--n-max", "6")
    assert code == 0 and ",fail," not in out


def test_verify_single_suite(capsys, a2_file):
    code, out, _ = run(capsys, "verify", "--file", str(a2_file), "--suite", "theorem1", "--n-max", "3")
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 3 and all(r.startswith("theorem1,") for r in rows)


def test_verify_failure_exit(capsys, monkeypatch, a2_file):
    from starcodim import analysis

    original = analysis.check_dimension_bound

    def strict(d, seq):
        return original(1, seq)  # d = 1 makes c*_1 = 2 > 1

    monkeypatch.setattr("starcodim.cli.analysis.check_dimension_bound", strict)
    code, out, _ = run(capsys, "verify", "--file", str(a2_file), "--suite", "theorem1", "--n-max", "1")
    assert code == 1 and ",fail," in out


def test_verify_slice_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma8", "--T", "2")
    rows = out.splitlines()[1:]
    assert code == 0
    assert any("Id(A_2) in Id(Ã_2" in r for r in rows) and any("in Id(A_2)" in r for r in rows)
    assert max(int(r.split(",")[1]) for r in rows) == 4


def test_verify_needs_T(capsys, a2_file):
    code, _, _ = run(capsys, "verify", "--file", str(a2_file), "--suite", "lemma1")
    assert code == 2


def test_exponent(capsys):
    code, out, err = run(capsys, "exponent", "--family", "at", "--T", "2", "--window", "4..6")
    assert code == 0 and "beta_2 in [1.6493848884661178" in err
    assert [line.split(",")[0] for line in out.splitlines()] == ["n", "4", "5", "6"]


def test_exponent_zero(capsys, tmp_path):
    path = tmp_path / "nil.alg"
    dump(nilpotent_tensor(make_A_T(2), 1), str(path))
    code, out, _ = run(capsys, "exponent", "--file", str(path), "--window", "2..4")
    assert code == 0 and out.splitlines()[1:] == ["2,NA", "3,NA", "4,NA"]


def test_schedule(capsys):
    code, out, _ = run(capsys, "schedule", "--alpha", "2", "--mode", "bound")
    assert code == 0 and out.splitlines()[1] == "T1 = 10"
    code, out, _ = run(capsys, "schedule", "--alpha", "100", "--mode", "computed", "--horizon", "3")
    assert code == 3 and "INCOMPLETE" in out
    code, _, err = run(capsys, "schedule", "--alpha", "1")
    assert code == 2 and "alpha" in err


def test_export_round_trip(capsys, tmp_path):
    path = tmp_path / "t.alg"
    assert run(capsys, "export", "--family", "tilde", "--T", "2", "--M", "2", "--out", str(path))[0] == 0
    assert run(capsys, "validate", str(path))[0] == 0
    path = tmp_path / "c.alg"
    args = ["export", "--family", "c-prefix", "--T", "2", "--N", "3", "--T", "5", "--N", "6", "--M", "1"]
    assert run(capsys, *args, "--out", str(path))[0] == 0
    assert run(capsys, "validate", str(path))[0] == 0


def test_certify_round_trip(capsys, tmp_path):
    cert = tmp_path / "w.cert"
    code, _, _ = run(capsys, "certify", "--T", "2", "--M", "2", "--factorial", "2", "--out", str(cert))
    assert code == 0 and cert.read_text().splitlines()[-1] == "rank 2"
    code, out, _ = run(capsys, "certify", "--family", "tilde", "--T", "2", "--M", "2", "--check", str(cert))
    assert code == 0 and "ok" in out
    cert.write_text(cert.read_text().replace("rank 2", "rank 5"))
    code, out, _ = run(capsys, "certify", "--family", "tilde", "--T", "2", "--M", "2", "--check", str(cert))
    assert code == 1


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "codim")[0] == 2
    assert run(capsys, "codim", "--family", "b", "--T", "2")[0] == 2
    assert run(capsys, "validate", str(tmp_path / "missing.alg"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_degree_cap(capsys, monkeypatch):
    monkeypatch.setenv("STARCODIM_MAX_DEGREE", "3")
    assert run(capsys, "codim", "--T", "2", "--n-max", "4")[0] == 2
