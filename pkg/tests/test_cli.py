import json

import pytest

from dirac_spectra.cli import CSV_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_coulomb(capsys):
    code, out, _ = run(capsys, "spectrum", "--potential", "coulomb", "--v", "1", "--d", "3", "--j2", "1",
                       "--tau", "+1", "--mode", "spin", "--nu", "0", "--m", "1")
    assert code == 0
    assert out.strip() == "E=0.600000"


def test_spectrum_verbose_oracle(capsys):
    code, out, _ = run(capsys, "spectrum", "--potential", "coulomb", "--v", "1", "--method", "oracle", "--verbose")
    assert code == 0
    assert out.splitlines()[0] == "E=0.600000"
    assert "residual=" in out and "bracket=" in out


def test_spectrum_no_spectrum(capsys):
    code, _, err = run(capsys, "spectrum", "--potential", "coulomb", "--v", "1", "--mode", "pseudo")
    assert code == 3
    assert "no discrete spectrum" in err


def test_spectrum_log_at_u1(capsys):
    code, out, _ = run(capsys, "spectrum", "--potential", "log", "--v", "14.28389")
    assert code == 0
    assert abs(float(out.strip().split("=")[1])) < 1e-3


@pytest.mark.parametrize("argv", [
    ["spectrum", "--potential", "cubic"],
    ["spectrum", "--j2", "2"],
    ["spectrum", "--npoints", "2000"],
    ["sweep", "--v-min", "2", "--v-max", "1"],
    ["nosuchcommand"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# coulomb run\npotential = coulomb\nv = 2\n")
    assert run(capsys, "spectrum", "--config", str(cfg))[1].strip() == "E=0.000000"
    assert run(capsys, "spectrum", "--config", str(cfg), "--v", "1")[1].strip() == "E=0.600000"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert run(capsys, "spectrum", "--config", str(bad))[0] == 1


def test_sweep_csv(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    args = ["sweep", "--potential", "coulomb", "--v-min", "-1", "--v-max", "1", "--n-points", "3",
            "--outputs", "exact", "--csv", str(path)]
    assert run(capsys, *args)[0] == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].endswith("exact:no-spectrum")
    assert lines[3] == "1,0.6,,,,,ok"


def test_figure1_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "figure1", "--n-points", "8", "--csv", str(a), "--gnuplot")[0] == 0
    assert run(capsys, "figure1", "--n-points", "8", "--csv", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = [line.split(",") for line in a.read_text().splitlines()[1:]]
    assert len(rows) == 9  # eight grid points plus the u1 endpoint
    for row in rows:
        assert float(row[3]) <= float(row[1])
    assert abs(float(rows[-1][1])) < 1e-8
    assert (tmp_path / "a.csv.gp").exists()


def test_regions(capsys):
    code, out, _ = run(capsys, "regions", "--m", "1")
    assert code == 0
    assert "u1=14.28" in out
    assert "v>0 mu=+1: (-1, u1/v-1)" in out
    assert len([line for line in out.splitlines() if line.startswith("v")]) == 4


def test_regions_massless(capsys):
    out = run(capsys, "regions", "--m", "0", "--use-paper-constants")[1]
    assert "u1=13.318" in out


def test_envelope(capsys):
    code, out, _ = run(capsys, "envelope", "--potential", "log", "--v", "1")
    assert code == 0 and out.startswith("E_L=2.21")
    assert run(capsys, "envelope", "--potential", "log", "--v", "-1")[0] == 1


def test_verify_builtin(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "coulomb")
    assert code == 0
    assert all(line.startswith(("PASS", "SUMMARY")) for line in out.splitlines())


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "coulomb 2/r", "--inject-fault")
    assert code != 0
    assert out.startswith("FAIL")


def test_verify_corpus_file(tmp_path, capsys):
    corpus = [
        {"name": "ordered", "V1": {"potential": "coulomb", "v": 2}, "V2": {"potential": "coulomb", "v": 1},
         "channels": [{"nu": 0}, {"nu": 1, "tau": -1}]},
        {"name": "crossing", "V1": {"potential": "log", "v": 1}, "V2": {"potential": "log", "v": 2},
         "channels": [{"nu": 0}]},
    ]
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(corpus))
    code, out, _ = run(capsys, "verify", "--corpus", str(path))
    assert code == 0
    assert "PASS ordered" in out and "NOT-COMPARABLE crossing" in out
    path.write_text("{not json")
    assert run(capsys, "verify", "--corpus", str(path))[0] == 1
