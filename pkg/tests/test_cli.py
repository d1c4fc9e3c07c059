import json

import pytest

from quotarith.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_row(capsys):
    code, out, _ = run(capsys, "compute", "--m", "57")
    assert code == 0
    assert out == "m,phi,lambda,rad,delta,d,f,ratio,D\n57,36,18,57,1,3,3,1,3\n"


def test_compute_one_is_all_ones(capsys):
    code, out, _ = run(capsys, "compute", "--m", "1", "--format", "jsonl")
    row = json.loads(out)
    assert code == 0 and set(row.values()) == {1}


def test_compute_quotient(capsys):
    code, out, _ = run(capsys, "compute", "--m", "8", "--quotient", "carmichael", "--a", "3")
    assert code == 0 and out.splitlines()[1] == "8,3,carmichael,1"
    code, out, _ = run(capsys, "compute", "--m", "5", "--quotient", "euler", "--a", "3", "--exact")
    assert out.splitlines()[1] == "5,3,euler,1,16"


def test_compute_errors(capsys):
    code, _, err = run(capsys, "compute", "--m", "6", "--quotient", "euler", "--a", "4")
    assert code == 4 and "NotCoprime" in err
    with pytest.raises(SystemExit) as exc:
        main(["compute"])
    assert exc.value.code == 4
    code, _, _ = run(capsys, "compute", "--m", "1000", "--quotient", "euler", "--a", "3", "--exact", "--cap", "10")
    assert code == 4


@pytest.mark.parametrize(
    "suite, max_m", [("zero-set", 60), ("image", 40), ("identities", 1), ("identities", 5000),
                     ("bounds", 5000), ("bounds", 1), ("nonexistence", 5000), ("squarefree-equality", 5000)],
)
def test_verify_passes(capsys, suite, max_m):
    code, out, err = run(capsys, "verify", suite, "--max-m", str(max_m))
    assert code == 0, err
    assert out.splitlines()[1].endswith(",0")


def test_verify_reports_failures(capsys, monkeypatch):
    from quotarith import cli

    monkeypatch.setattr(cli, "f_of", lambda m: 1)
    code, out, err = run(capsys, "verify", "zero-set", "--max-m", "10")
    assert code == 1
    assert "counterexample: m=4" in err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "equal", "--n", "3")
    res = json.loads(out)
    assert code == 0 and res["m"] == 57 and res["verified"] is True
    code, out, _ = run(capsys, "construct", "pq-pair", "--p", "3", "--q", "7")
    assert json.loads(out)["m"] == 1827
    code, out, _ = run(capsys, "construct", "ratio", "--n", "2")
    assert json.loads(out)["m"] == 1552
    code, out, _ = run(capsys, "construct", "witness", "--t", "7")
    assert json.loads(out)["F"] == 6


def test_construct_exit_codes(capsys):
    code, _, err = run(capsys, "construct", "pair", "--a", "3", "--b", "6")
    assert code == 2 and "HypothesisViolated" in err
    code, _, _ = run(capsys, "construct", "pq-pair", "--p", "3", "--q", "19")
    assert code == 2
    code, _, err = run(capsys, "construct", "equal", "--n", "10", "--cap", "100")
    assert code == 3 and "CapExceeded" in err
    code, _, _ = run(capsys, "construct", "equal")
    assert code == 4


def test_survey_profiles(capsys):
    code, out, _ = run(capsys, "survey", "profiles", "--x", "10")
    lines = out.splitlines()
    assert lines[0] == "m,phi,lambda,rad,delta,d,f"
    assert len(lines) == 11
    assert lines[8] == "8,4,2,2,2,2,1"


def test_survey_density_to_file(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code, out, _ = run(capsys, "survey", "density", "--x", "100000", "--out", str(path))
    assert code == 0 and out == ""
    data = path.read_bytes()
    assert data == b"x,total,equal_count,exception_count,predictor_match_count\n100000,100000,77722,22278,\n"


def test_survey_density_predictor_too_small(capsys):
    code, out, err = run(capsys, "survey", "density", "--x", "2")
    assert code == 0 and "RangeTooSmall" in err
    assert out.splitlines()[1] == "2,2,2,0,"


def test_survey_bounds_and_atlas(capsys):
    code, out, _ = run(capsys, "survey", "bounds", "--x", "10")
    assert out.splitlines() == ["m,d,bound,ratio", "1,1,1,1", "2,1,1.30311644861,0.767391126913", "4,2,2,1"]
    code, out, _ = run(capsys, "survey", "atlas", "--x", "10", "--format", "jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert {"f": 1, "d": 2, "smallest_m": 8} in rows


def test_survey_memory_cap(capsys):
    code, _, err = run(capsys, "survey", "profiles", "--x", "1000000", "--cap", "1")
    assert code == 3 and "MemoryBudgetExceeded" in err


@pytest.mark.parametrize("kind", ["density", "bounds", "atlas", "profiles"])
def test_survey_output_independent_of_threads_and_backend(capsys, kind):
    outputs = set()
    for threads in ("1", "2", "8"):
        for backend in ("numba", "numpy"):
            code, out, _ = run(capsys, "survey", kind, "--x", "3000", "--threads", threads, "--backend", backend)
            assert code == 0
            outputs.add(out)
    assert len(outputs) == 1
