import json
import math

import numpy as np
import pytest

from rotframes.cli import CSV_HEADER, main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


class TestOmegaSweep:
    def test_row_count_and_self_check_clean(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "omega", "--kind", "gal,tt", "--omega", "0.5", "--c", "1",
                "--rho-min", "0.1", "--rho-max", "1.5", "--steps", "15",
                "--format", "csv", "--self-check",
            ],
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert ",".join(header) == CSV_HEADER
        assert len(rows) == 30
        assert all(r["status"] == "ok" for r in rows)
        assert all(float(r["rel_err"]) < 1e-6 for r in rows)

    def test_horizon_rows_marked_not_dropped(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "omega", "--kind", "gal", "--omega", "1", "--c", "1",
                "--rho-min", "0.5", "--rho-max", "1.5", "--steps", "3",
            ],
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 3
        statuses = {float(r["rho"]): r["status"] for r in rows}
        assert statuses[0.5] == "ok"
        assert statuses[1.0] == "light_cylinder"
        assert statuses[1.5] == "light_cylinder"
        nan_row = [r for r in rows if r["status"] == "light_cylinder"][0]
        assert nan_row["omega_numeric"] == "nan"

    def test_mtt_matches_tt_in_numeric_columns(self, capsys):
        base = [
            "omega", "--omega", "0.5", "--rho-min", "0.2", "--rho-max", "2.0",
            "--steps", "7",
        ]
        _, out_tt, _ = run(capsys, base + ["--kind", "tt"])
        _, out_mtt, _ = run(capsys, base + ["--kind", "mtt"])
        strip = lambda text: [
            line.split(",", 1)[1] for line in text.strip().split("\n")[1:]
        ]
        assert strip(out_tt) == strip(out_mtt)

    def test_byte_identical_reruns(self, tmp_path):
        argv = [
            "omega", "--kind", "gal,tt,mtt", "--omega", "0.3",
            "--rho-min", "0.1", "--rho-max", "2.5", "--steps", "12",
        ]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(argv + ["--out", str(p1)]) == 0
        assert main(argv + ["--out", str(p2)]) == 0
        b1 = p1.read_bytes()
        assert b1 == p2.read_bytes()
        assert b"\r" not in b1
        assert b1.startswith(CSV_HEADER.encode() + b"\n")

    def test_floats_round_trip_through_csv(self, capsys):
        _, out, _ = run(
            capsys,
            [
                "omega", "--kind", "tt", "--omega", "0.7",
                "--rho-min", "0.3", "--rho-max", "1.7", "--steps", "4",
            ],
        )
        _, rows = parse_csv(out)
        from rotframes import CongruenceSpec, omega_closed_form

        spec = CongruenceSpec("tt", 0.7)
        for r in rows:
            assert float(r["omega_closed"]) == omega_closed_form(float(r["rho"]), spec)

    def test_self_check_trips_on_injected_perturbation(self, capsys, monkeypatch):
        argv = [
            "omega", "--kind", "gal", "--omega", "0.5",
            "--rho-min", "0.5", "--rho-max", "1.5", "--steps", "3",
            "--self-check",
        ]
        monkeypatch.setenv("ROTFRAMES_SELF_CHECK_PERTURB", "1e-5")
        code, _, err = run(capsys, argv)
        assert code == 2
        assert "self-check" in err
        monkeypatch.delenv("ROTFRAMES_SELF_CHECK_PERTURB")
        code, _, _ = run(capsys, argv)
        assert code == 0

    def test_json_schema_and_round_trip(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "omega", "--kind", "gal", "--omega", "1", "--c", "1",
                "--rho-min", "0.5", "--rho-max", "1.5", "--steps", "3",
                "--format", "json",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"params", "rows", "version"}
        assert doc["version"]
        assert doc["params"]["command"] == "omega"
        assert len(doc["rows"]) == 3
        horizon = [r for r in doc["rows"] if r["status"] == "light_cylinder"]
        assert horizon and horizon[0]["omega_numeric"] is None
        ok = [r for r in doc["rows"] if r["status"] == "ok"][0]
        assert isinstance(ok["omega_closed"], float)
        # lossless: dump -> parse -> dump is stable
        assert json.dumps(doc, sort_keys=True) == json.dumps(
            json.loads(json.dumps(doc, sort_keys=True)), sort_keys=True
        )

    def test_usage_errors(self, capsys):
        code, _, _ = run(capsys, ["omega", "--bogus"])
        assert code == 64
        code, _, err = run(
            capsys,
            ["omega", "--kind", "warp", "--omega", "1", "--rho-min", "1",
             "--rho-max", "2", "--steps", "3"],
        )
        assert code == 64 and "warp" in err
        code, _, _ = run(
            capsys,
            ["omega", "--kind", "gal", "--omega", "1", "--rho-min", "2",
             "--rho-max", "1", "--steps", "3"],
        )
        assert code == 64
        code, _, _ = run(
            capsys,
            ["omega", "--kind", "gal", "--omega", "1", "--rho-min", "1",
             "--rho-max", "2", "--steps", "1"],
        )
        assert code == 64
        code, _, _ = run(
            capsys,
            ["omega", "--kind", "gal", "--omega", "-1", "--rho-min", "1",
             "--rho-max", "2", "--steps", "3"],
        )
        assert code == 64


class TestPrecess:
    def test_gal_values(self, capsys):
        code, out, _ = run(
            capsys, ["precess", "--kind", "gal", "--rho", "1", "--omega", "0.5"]
        )
        assert code == 0
        _, rows = parse_csv(out)
        gamma = 1.0 / math.sqrt(0.75)
        assert float(rows[0]["delta_phi_prime"]) == pytest.approx(
            -2.0 * math.pi * gamma, rel=1e-12
        )
        assert float(rows[0]["thomas_net"]) == pytest.approx(
            2.0 * math.pi * (1.0 - gamma), rel=1e-10
        )

    def test_tt_values(self, capsys):
        code, out, _ = run(
            capsys, ["precess", "--kind", "tt", "--rho", "1", "--omega", "1"]
        )
        assert code == 0
        _, rows = parse_csv(out)
        expected = -math.pi * (math.cosh(1.0) + 1.0 / math.sinh(1.0))
        assert float(rows[0]["delta_phi_prime"]) == pytest.approx(expected, rel=1e-12)

    def test_horizon_is_domain_error_exit(self, capsys):
        code, out, err = run(
            capsys, ["precess", "--kind", "gal", "--rho", "2", "--omega", "1"]
        )
        assert code == 3
        assert out == ""
        assert "light cylinder" in err
        assert "Traceback" not in err

    def test_fw_check_columns(self, capsys):
        code, out, _ = run(
            capsys,
            ["precess", "--kind", "gal", "--rho", "1", "--omega", "0.5",
             "--fw-check", "5000"],
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header[-2:] == ["fw_measured", "fw_deviation"]
        fw = float(rows[0]["fw_measured"])
        assert fw == pytest.approx(float(rows[0]["delta_phi_prime"]), abs=1e-6)
        assert abs(float(rows[0]["fw_deviation"])) < 1e-6


class TestCompare:
    def test_three_rows_with_expected_scalars(self, capsys):
        code, out, _ = run(capsys, ["compare", "--rho", "1", "--omega", "0.5"])
        assert code == 0
        _, rows = parse_csv(out)
        assert [r["kind"] for r in rows] == ["gal", "tt", "mtt"]
        assert float(rows[0]["omega_closed"]) == pytest.approx(2.0 / 3.0, rel=1e-12)
        expected_tt = 0.5 * (math.sinh(0.5) * math.cosh(0.5) + 0.5)
        assert float(rows[1]["omega_closed"]) == pytest.approx(expected_tt, rel=1e-12)
        assert rows[1]["omega_closed"] == rows[2]["omega_closed"]

    def test_horizon_marker_keeps_tt_finite(self, capsys):
        code, out, _ = run(capsys, ["compare", "--rho", "1", "--omega", "1"])
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0]["status"] == "light_cylinder"
        assert rows[1]["status"] == "ok"
        assert float(rows[1]["omega_closed"]) == pytest.approx(
            0.5 * (math.sinh(1.0) * math.cosh(1.0) + 1.0), rel=1e-12
        )

    def test_small_omega_scalars_agree(self, capsys):
        code, out, _ = run(capsys, ["compare", "--rho", "1", "--omega", "1e-6"])
        assert code == 0
        _, rows = parse_csv(out)
        values = [float(r["omega_closed"]) for r in rows]
        assert values[0] == pytest.approx(values[1], rel=1e-9)
        assert values[1] == values[2]


class TestTransform:
    def test_tt_forward_values(self, capsys):
        code, out, _ = run(
            capsys,
            ["transform", "--map", "tt", "--direction", "fwd", "--t", "1",
             "--rho", "1", "--omega", "1"],
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t", "rho", "phi", "z"]
        assert float(rows[0]["t"]) == pytest.approx(math.cosh(1.0), rel=1e-15)
        assert float(rows[0]["phi"]) == pytest.approx(-math.sinh(1.0), rel=1e-15)

    def test_gal_round_trip(self, capsys):
        _, out, _ = run(
            capsys,
            ["transform", "--map", "gal", "--t", "2", "--rho", "1.5",
             "--phi", "0.7", "--omega", "0.4"],
        )
        _, rows = parse_csv(out)
        _, out2, _ = run(
            capsys,
            ["transform", "--map", "gal", "--direction", "inv",
             "--t", rows[0]["t"], "--rho", rows[0]["rho"],
             "--phi", rows[0]["phi"], "--omega", "0.4"],
        )
        _, rows2 = parse_csv(out2)
        assert float(rows2[0]["phi"]) == pytest.approx(0.7, abs=1e-14)
        assert float(rows2[0]["t"]) == 2.0

    def test_zero_omega_tt_is_identity(self, capsys):
        _, out, _ = run(
            capsys,
            ["transform", "--map", "tt", "--t", "1.25", "--rho", "2.5",
             "--phi", "-0.3", "--z", "4", "--omega", "0"],
        )
        _, rows = parse_csv(out)
        assert [float(rows[0][k]) for k in ("t", "rho", "phi", "z")] == [
            1.25, 2.5, -0.3, 4.0,
        ]

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys,
            ["transform", "--map", "tt", "--t", "1", "--rho", "1",
             "--omega", "1", "--format", "json"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["rows"][0]["t"] == pytest.approx(math.cosh(1.0), rel=1e-15)


def test_no_command_is_usage_error(capsys):
    assert main([]) == 64


def test_out_file_matches_stdout(tmp_path, capsys):
    argv = ["compare", "--rho", "1", "--omega", "0.5"]
    code, out, _ = run(capsys, argv)
    assert code == 0
    path = tmp_path / "cmp.csv"
    assert main(argv + ["--out", str(path)]) == 0
    assert path.read_text(encoding="utf-8") == out
