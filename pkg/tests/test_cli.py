import json
import math
from pathlib import Path

import pytest

from holedtorus.cli import main

DATA = Path(__file__).parent / "data"


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def fn_file(tmp_path):
    return write_json(
        tmp_path / "fn.json", {"chart": "fn", "l": 2.0, "lp": 1.0, "theta": 0.0}
    )


@pytest.fixture
def slit_file(tmp_path):
    return write_json(
        tmp_path / "slit.json", {"chart": "slit", "tau": [0.0, 1.0], "s": 0.5}
    )


def run_to_file(tmp_path, argv, name="out.txt"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out.read_text()


def test_chart_boundary_classification(tmp_path):
    path = write_json(
        tmp_path / "lam.json", {"chart": "lambda", "x": [1.0, 1.0, 2.0]}
    )
    code, text = run_to_file(tmp_path, ["chart", "--input", path])
    assert code == 0
    report = json.loads(text)
    assert report["tool"] == "holedtorus"
    assert report["command"] == "chart"
    assert report["result"]["region"] == "boundary"
    assert report["result"]["once_punctured"] is True
    assert report["result"]["q_plus_4"] == 0.0
    zeta = report["result"]["eigen_split"]["zeta"]
    assert sum(zeta) == pytest.approx(0.0, abs=1e-12)


def test_chart_slit_once_punctured_flag(tmp_path):
    path = write_json(
        tmp_path / "slit0.json", {"chart": "slit", "tau": [0.0, 1.0], "s": 0.0}
    )
    code, text = run_to_file(tmp_path, ["chart", "--input", path])
    assert code == 0
    assert json.loads(text)["result"]["once_punctured"] is True


def test_chart_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    assert main(["chart", "--input", str(path)]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_chart_unknown_chart_exits_2(tmp_path, capsys):
    path = write_json(tmp_path / "bad.json", {"chart": "bogus"})
    assert main(["chart", "--input", str(path)]) == 2
    assert "chart" in capsys.readouterr().err


def test_chart_missing_file_exits_2(tmp_path, capsys):
    assert main(["chart", "--input", str(tmp_path / "nope.json")]) == 2
    assert capsys.readouterr().err


def test_spectrum_single_letter_classes(tmp_path):
    l = 2.0 * math.acosh(1.5)
    path = write_json(
        tmp_path / "fn.json", {"chart": "fn", "l": l, "lp": 0.0, "theta": 0.0}
    )
    code, text = run_to_file(
        tmp_path, ["spectrum", "--input", path, "--max-word-len", "1"]
    )
    assert code == 0
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    assert lines[0] == "word,trace,length"
    rows = {line.split(",")[0]: line.split(",") for line in lines[1:]}
    assert set(rows) == {"u", "v"}
    assert float(rows["u"][1]) == pytest.approx(3.0, abs=1e-12)
    assert float(rows["u"][2]) == pytest.approx(l, abs=1e-12)


def test_spectrum_six_classes_at_length_two(tmp_path, fn_file):
    code, text = run_to_file(
        tmp_path, ["spectrum", "--input", fn_file, "--max-word-len", "2"]
    )
    assert code == 0
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    assert len(lines) == 7  # header plus six classes
    lengths = [float(line.split(",")[2]) for line in lines[1:]]
    assert lengths == sorted(lengths)


def test_spectrum_requires_fn_chart(tmp_path, slit_file, capsys):
    assert main(["spectrum", "--input", slit_file]) == 2
    assert "fn-chart" in capsys.readouterr().err


def test_sigma_reflexive_and_out(tmp_path, fn_file):
    code, text = run_to_file(
        tmp_path, ["sigma", "--input", fn_file, "--y0", fn_file]
    )
    assert code == 0
    report = json.loads(text)
    assert report["result"]["status"] == "in_up_to_N"
    assert report["result"]["witness"] is None

    low = write_json(
        tmp_path / "low.json", {"chart": "fn", "l": 1.9, "lp": 1.0, "theta": 0.0}
    )
    code, text = run_to_file(
        tmp_path, ["sigma", "--input", low, "--y0", fn_file], name="out2.txt"
    )
    assert code == 0
    report = json.loads(text)
    assert report["result"]["status"] == "out"
    assert report["result"]["witness"] == "u"


def test_scan_matches_golden_rows(tmp_path):
    y0 = str(DATA / "y0.json")
    code, text = run_to_file(
        tmp_path,
        [
            "scan",
            "--y0",
            y0,
            "--plane",
            "l-lp",
            "--ranges",
            "1.6:2.4:9,0.6:1.4:9",
            "--max-word-len",
            "6",
        ],
        name="scan.csv",
    )
    assert code == 0
    golden = (DATA / "scan_golden.csv").read_text()

    def data_lines(body):
        return [line for line in body.splitlines() if not line.startswith("# config")]

    got, expected = data_lines(text), data_lines(golden)
    assert len(got) == len(expected)
    for mine, theirs in zip(got, expected):
        if "," not in mine or mine.startswith(("#", "coord1")):
            assert mine == theirs
            continue
        m, t = mine.split(","), theirs.split(",")
        assert m[2:4] == t[2:4]
        for a, b in zip((m[0], m[1], m[4]), (t[0], t[1], t[4])):
            assert float(a) == pytest.approx(float(b), rel=1e-9, abs=1e-12)


def test_scan_repeat_runs_are_byte_identical(tmp_path, fn_file):
    argv = [
        "scan",
        "--y0",
        fn_file,
        "--plane",
        "l-lp",
        "--ranges",
        "1.8:2.2:3,0.8:1.2:3",
        "--max-word-len",
        "4",
    ]
    _, first = run_to_file(tmp_path, argv, name="a.csv")
    _, second = run_to_file(tmp_path, argv, name="b.csv")
    assert first == second


def test_scan_workers_change_only_config_echo(tmp_path, fn_file):
    argv = [
        "scan",
        "--y0",
        fn_file,
        "--plane",
        "l-lp",
        "--ranges",
        "1.8:2.2:3,0.8:1.2:3",
        "--max-word-len",
        "4",
    ]
    _, serial = run_to_file(tmp_path, argv, name="a.csv")
    _, parallel = run_to_file(tmp_path, argv + ["--workers", "2"], name="b.csv")

    def rows(body):
        return [line for line in body.splitlines() if not line.startswith("#")]

    assert rows(serial) == rows(parallel)


def test_scan_bad_ranges_exit_2(tmp_path, fn_file, capsys):
    assert (
        main(["scan", "--y0", fn_file, "--plane", "l-lp", "--ranges", "1:2"]) == 2
    )
    assert "--ranges" in capsys.readouterr().err


def test_critical_fn_unit_lambda_a(tmp_path):
    path = write_json(
        tmp_path / "fnpi.json",
        {"chart": "fn", "l": math.pi, "lp": 1.0, "theta": 0.0},
    )
    code, text = run_to_file(tmp_path, ["critical", "--input", path])
    assert code == 0
    result = json.loads(text)["result"]
    assert result["critical_lengths"]["lambda_a"]["value"] == 1.0
    assert result["critical_lengths"]["lambda_c"]["available"] is False
    assert result["critical_lengths"]["lambda_c"]["reason"]
    quantities = [s["quantity"] for s in result["strips"]]
    assert quantities == ["lambda_a", "lambda_inf"]


def test_critical_torus_serializes_infinite_strip(tmp_path):
    path = write_json(tmp_path / "torus.json", {"chart": "torus", "tau": [0.0, 2.0]})
    code, text = run_to_file(tmp_path, ["critical", "--input", path])
    assert code == 0
    strips = {s["quantity"]: s for s in json.loads(text)["result"]["strips"]}
    assert strips["lambda_a"]["strip_height"] == "inf"
    assert strips["lambda_c"]["strip_height"] == 2.0
    assert strips["lambda_c"]["meeting_tau"] == [0.0, 2.0]


def test_corner_report(tmp_path, fn_file):
    code, text = run_to_file(
        tmp_path, ["corner", "--y0", fn_file, "--eps", "1e-3"]
    )
    assert code == 0
    result = json.loads(text)["result"]
    assert result["independent"] is True
    assert result["active_constraints"] == ["u", "uvUV"]
    probes = {(p["coordinate"], p["delta"] < 0): p for p in result["probes"]}
    assert probes[("l", True)]["witness"] == "u"
    assert probes[("lp", True)]["witness"] == "uvUV"


def test_corner_once_punctured_exit_2(tmp_path, capsys):
    path = write_json(
        tmp_path / "cusp.json", {"chart": "fn", "l": 2.0, "lp": 0.0, "theta": 0.0}
    )
    assert main(["corner", "--y0", str(path)]) == 2
    assert "lp" in capsys.readouterr().err


def test_modulus_exact_class_a(tmp_path, slit_file):
    code, text = run_to_file(
        tmp_path, ["modulus", "--input", slit_file, "--cls", "a", "--grid-n", "64"]
    )
    assert code == 0
    result = json.loads(text)["result"]
    assert result["estimate"] == pytest.approx(1.0, abs=1e-12)
    assert result["converged"] is True
    assert [n for n, _ in result["history"]] == [16, 32, 64]


def test_modulus_matches_golden(tmp_path, slit_file):
    code, text = run_to_file(
        tmp_path,
        ["modulus", "--input", slit_file, "--cls", "b", "--grid-n", "128"],
    )
    assert code == 0
    result = json.loads(text)["result"]
    golden = json.loads((DATA / "modulus_golden.json").read_text())["result"]
    assert result["converged"] == golden["converged"]
    for key in ("estimate", "error_indicator", "extrapolated"):
        assert result[key] == pytest.approx(golden[key], rel=1e-9)


def test_modulus_nonconverged_exits_1(tmp_path, capsys):
    path = write_json(
        tmp_path / "long.json", {"chart": "slit", "tau": [0.0, 1.0], "s": 0.9}
    )
    out = tmp_path / "mod.json"
    code = main(
        [
            "modulus",
            "--input",
            str(path),
            "--cls",
            "b",
            "--grid-n",
            "32",
            "--levels",
            "2",
            "--out",
            str(out),
        ]
    )
    assert code == 1
    assert "converge" in capsys.readouterr().err
    assert json.loads(out.read_text())["result"]["converged"] is False


def test_modulus_requires_slit_chart(tmp_path, fn_file, capsys):
    assert main(["modulus", "--input", fn_file, "--cls", "a"]) == 2
    assert "slit" in capsys.readouterr().err


def test_stdin_descriptor(tmp_path, capsys, monkeypatch):
    import io

    monkeypatch.setattr(
        "sys.stdin", io.StringIO('{"chart": "torus", "tau": [0.0, 2.0]}')
    )
    assert main(["chart", "--input", "-"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["descriptor"]["chart"] == "torus"


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "holedtorus" in capsys.readouterr().out
