import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stcut.cli import main
from stcut.config import DENSE, SPARSE, WIDE, EnsembleSpec, SpecError, parse_rational


@pytest.fixture
def sparse_file(tmp_path):
    p = tmp_path / "sparse.json"
    p.write_text(SPARSE.dumps())
    return p


def read_csv(path):
    lines = path.read_text().split("\n")
    meta = [x for x in lines if x.startswith("#")]
    body = [x for x in lines if x and not x.startswith("#")]
    return meta, body[0].split(","), [r.split(",") for r in body[1:]]


def test_bound_command(sparse_file, tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bound", "--config", str(sparse_file), "--out", str(out)]) == 0
    meta, header, rows = read_csv(out)
    assert "# m=248" in meta and "# n=120" in meta
    assert header == ["delta", "raw_bound", "clamped_bound"]
    assert len(rows) == 12
    assert "\r" not in out.read_text()


def test_bound_single_row(sparse_file, tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bound", "--config", str(sparse_file), "--out", str(out), "--delta-max", "1"]) == 0
    assert len(read_csv(out)[2]) == 1


def test_bad_rational(tmp_path, capsys):
    p = tmp_path / "bad.json"
    data = SPARSE.to_dict()
    data["degree_fractions"]["3"] = "1/0"
    p.write_text(json.dumps(data))
    assert main(["bound", "--config", str(p)]) != 0
    assert "1/0" in capsys.readouterr().err


def test_invalid_ensemble_named(tmp_path, capsys):
    p = tmp_path / "odd.json"
    p.write_text(json.dumps({"n": 3, "degree_fractions": {"3": "1"}}))
    assert main(["bound", "--config", str(p)]) == 2
    assert "odd" in capsys.readouterr().err


def test_parse_rational():
    assert parse_rational("2/15") == parse_rational(" 2 / 15 ")
    assert parse_rational("3") == 3
    for bad in ["0.3333", "1/0", "a/b", "", None, 1.5]:
        with pytest.raises(SpecError):
            parse_rational(bad)


def test_simulate_requires_seed(tmp_path, capsys):
    p = tmp_path / "s.json"
    data = SPARSE.to_dict()
    data["seed"] = None
    p.write_text(json.dumps(data))
    assert main(["simulate", "--config", str(p), "--samples", "5"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_simulate_columns(sparse_file, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["simulate", "--config", str(sparse_file), "--out", str(out), "--samples", "30",
                 "--seed", "11", "--mode", "multigraph", "--delta-max", "6"]) == 0
    meta, header, rows = read_csv(out)
    assert header == ["delta", "count_geq", "estimate", "stderr", "num_samples", "seed", "mode"]
    assert rows[0][4:] == ["30", "11", "multigraph"]
    assert "# seed=11" in meta and "# mode=multigraph" in meta


def test_simulate_byte_stable(sparse_file, tmp_path):
    paths = [tmp_path / f"{k}.csv" for k in range(3)]
    for p, workers in zip(paths, ["1", "1", "2"]):
        assert main(["simulate", "--config", str(sparse_file), "--out", str(p), "--samples", "120",
                     "--seed", "5", "--mode", "multigraph", "--workers", workers]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes() == paths[2].read_bytes()


def test_compare_command(sparse_file, tmp_path):
    out = tmp_path / "c.csv"
    assert main(["compare", "--config", str(sparse_file), "--out", str(out), "--samples", "200",
                 "--seed", "2", "--mode", "multigraph", "--delta-max", "8"]) == 0
    _, header, rows = read_csv(out)
    assert header[-1] == "violation" and len(rows) == 8
    assert all(r[-1] == "0" for r in rows)


def test_compare_global(sparse_file, tmp_path):
    out = tmp_path / "g.csv"
    assert main(["compare", "--global", "--config", str(sparse_file), "--out", str(out),
                 "--samples", "60", "--seed", "2", "--mode", "multigraph"]) == 0
    _, header, rows = read_csv(out)
    assert header == ["delta", "st_estimate", "global_estimate", "violation"]
    assert all(float(r[2]) <= float(r[1]) for r in rows)


def test_compare_exit_code_on_violation(sparse_file, tmp_path, monkeypatch, capsys):
    import stcut.cli as cli
    from stcut.experiment import tail_from_histogram

    def all_disconnected(dd, mu, num_samples, seed, mode, delta_max, workers=1):
        return tail_from_histogram({0: num_samples}, num_samples, delta_max, mode, seed, "st")

    monkeypatch.setattr(cli, "run_st_experiment", all_disconnected)
    out = tmp_path / "v.csv"
    assert main(["compare", "--config", str(sparse_file), "--out", str(out), "--samples", "10"]) == 1
    _, _, rows = read_csv(out)
    assert [r[-1] for r in rows[:4]] == ["1", "1", "1", "1"]
    assert "violations at delta" in capsys.readouterr().err


def test_oracle_command(capsys):
    assert main(["oracle", "--checks", "binomial,constraint_map,maxflow", "--max-n", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 3 and all(x.startswith("PASS") for x in out)
    assert main(["oracle", "--max-n", "21"]) == 2
    assert main(["oracle", "--checks", ""]) == 2
    assert main(["oracle", "--checks", "nope"]) == 2


def test_presets_round_trip():
    for spec in (SPARSE, DENSE, WIDE):
        again = EnsembleSpec.loads(spec.dumps())
        assert again == spec
        assert again.dumps() == spec.dumps()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, 10))),
       st.integers(0, 2**64 - 1), st.sampled_from(["simple", "multigraph"]))
def test_spec_round_trip(kn, seed, mode):
    k, half_n = kn
    n = 2 * half_n
    spec = EnsembleSpec(n=n, degree_fractions={str(k): "1"}, weights={"2": "1/4", "1": "3/4"},
                        mode=mode, seed=seed, delta_max=k)
    assert EnsembleSpec.loads(spec.dumps()) == spec
    assert EnsembleSpec.loads(spec.dumps()).dumps() == spec.dumps()


def test_unknown_spec_key():
    with pytest.raises(SpecError):
        EnsembleSpec.from_dict({"n": 2, "degree_fractions": {"1": "1"}, "colour": "red"})
