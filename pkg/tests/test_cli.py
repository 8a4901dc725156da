import csv
import io
import json
import math
import subprocess
import sys

import pytest

from genmorse import GmpModel, PhysicalParams, reduce
from genmorse.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, RunConfig, main, run
from genmorse import verify as verify_mod

DEEP_WELL = ["--D", "10", "--a", "1", "--re", "2.5"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def read_csv(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    meta = dict(line[2:].split(": ", 1) for line in text.splitlines() if line.startswith("# "))
    rows = list(csv.reader(body))
    return rows[0], [[float(v) for v in r] for r in rows[1:]], meta


class TestSpectrum:
    def test_small_model(self):
        d = call_json("spectrum", "--k", "4", "--b", "2")
        assert d["model"]["n_max"] == 1
        assert len(d["levels"]) == 2
        assert d["levels"][0]["eps"] == pytest.approx(2.398346655611955, rel=1e-15)
        assert d["levels"][0]["E"] is None

    def test_deep_well_has_four_levels(self):
        d = call_json("spectrum", *DEEP_WELL)
        assert len(d["levels"]) == 4
        assert d["model"]["physical"]["D"] == 10.0
        m = reduce(PhysicalParams(10.0, 1.0, 2.5))
        assert [r["E"] for r in d["levels"]] == [r.E_n for r in m.levels()]

    def test_stable_field_names(self):
        d = call_json("spectrum", "--k", "4", "--b", "2")
        assert set(d["model"]) >= {"k", "b", "l", "C", "n_max"}
        assert set(d["levels"][0]) == {"n", "alpha", "beta", "eps", "E"}

    def test_every_numeric_field_has_a_unit(self):
        d = call_json("spectrum", *DEEP_WELL)
        for key in ("k", "b", "l", "C", "alpha", "beta", "eps", "E"):
            assert d["units"][key]

    def test_no_bound_levels(self):
        d = call_json("spectrum", "--k", "0.1", "--b", "0.1")
        assert d["model"]["n_max"] == -1 and d["levels"] == []

    def test_json_round_trip_is_bit_identical(self):
        first = call_json("spectrum", "--k", "4", "--b", "2")
        m = first["model"]
        again = call_json("spectrum", "--k", repr(m["k"]), "--b", repr(m["b"]))
        assert again == first
        d = call_json("spectrum", *DEEP_WELL)
        p = d["model"]["physical"]
        args = ["--D", repr(p["D"]), "--a", repr(p["a"]), "--re", repr(p["r_e"]), "--mu", repr(p["mu"]), "--hbar", repr(p["hbar"])]
        assert call_json("spectrum", *args) == d

    def test_csv(self):
        code, out, _ = call("spectrum", "--k", "4", "--b", "2", "--format", "csv")
        assert code == EXIT_OK
        lines = [line for line in out.splitlines() if not line.startswith("#")]
        assert lines[0] == "n,alpha,beta,eps,E"
        assert "# k: 4.0" in out
        assert float(lines[2].split(",")[3]) == 3.983831790034182
        assert lines[2].endswith(",")


class TestErrors:
    def test_exit_codes(self):
        assert call("spectrum", "--k", "-1", "--b", "2")[0] == EXIT_DOMAIN
        assert call("spectrum", "--k", "4")[0] == EXIT_USAGE
        assert call("spectrum", "--k", "4", "--b", "2", *DEEP_WELL)[0] == EXIT_USAGE
        assert call("nonsense")[0] == EXIT_USAGE
        assert call("spectrum", "--k", "x", "--b", "2")[0] == EXIT_USAGE
        assert call("wavefunction", "--k", "4", "--b", "2", "--n", "2")[0] == EXIT_DOMAIN

    def test_message_goes_to_error_stream(self):
        code, out, err = call("spectrum", "--k", "0", "--b", "2")
        assert code == EXIT_DOMAIN and out == "" and err.startswith("error:")

    def test_missing_direction(self):
        code, _, err = call("satellite", "--k", "4", "--b", "2", "--n", "0")
        assert code == EXIT_USAGE and "--direction" in err

    def test_physical_only_commands(self):
        assert call("fit", "--k", "4", "--b", "2", "--observed", "x.json")[0] == EXIT_USAGE

    def test_verify_failure_maps_to_two(self, monkeypatch):
        bad = [verify_mod.Check("core", "forced", 1.0, 0.0, False, "")]
        monkeypatch.setattr(verify_mod, "run_suite", lambda name: bad)
        assert run(RunConfig("verify"), io.StringIO(), io.StringIO()) == EXIT_VERIFY


class TestConfig:
    def test_file_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"D": 10, "a": 1, "r_e": 2.5}))
        assert call_json("spectrum", "--config", str(cfg)) == call_json("spectrum", *DEEP_WELL)

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"k": 4, "b": 2, "format": "csv"}))
        d = call_json("spectrum", "--config", str(cfg), "--b", "3", "--format", "json")
        assert d["model"]["b"] == 3.0

    def test_bad_file(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        assert call("spectrum", "--config", str(cfg))[0] == EXIT_USAGE
        assert call("spectrum", "--config", str(tmp_path / "missing.json"))[0] == EXIT_USAGE

    def test_out_path(self, tmp_path):
        target = tmp_path / "s.json"
        code, out, _ = call("spectrum", "--k", "4", "--b", "2", "--out", str(target))
        assert code == EXIT_OK and out == ""
        assert json.loads(target.read_text())["model"]["n_max"] == 1


class TestCommands:
    def test_wavefunction(self):
        d = call_json("wavefunction", "--k", "4", "--b", "2", "--n", "1", "--grid-points", "50")
        from genmorse.wavefunction import bound_state

        assert d["columns"] == ["x", "psi_1"]
        assert len(d["rows"]) == 50
        x, psi = d["rows"][10]
        assert psi == float(bound_state(GmpModel(4.0, 2.0), 1).psi(x))

    def test_ladder(self):
        d = call_json("ladder", "--k", "4", "--b", "2")
        assert len(d["steps"]) >= 4
        for p in d["steps"]:
            assert p["residual"] <= 1e-8
        for c in d["casimir"]:
            assert c["G"] == pytest.approx(16.0, abs=1e-8) and c["M"] == pytest.approx(16.0, abs=1e-8)

    def test_satellite(self):
        d = call_json("satellite", *DEEP_WELL, "--n", "0", "--direction", "g-", "--steps", "3")
        kb2 = {s["kb2"] for s in d["chain"]}
        assert max(kb2) == pytest.approx(min(kb2), rel=1e-12)

    def test_ptp(self):
        d = call_json("ptp", "--k", "4", "--b", "2")
        assert d["metadata"]["non_integer"] is True
        l = GmpModel(4.0, 2.0).l
        for r in d["levels"]:
            assert r["eps_bar"] == pytest.approx(-((2 * l - 1) ** 2), rel=1e-12)

    def test_susy(self):
        d = call_json("susy", "--k", "4", "--b", "2")
        assert d["partners"][0]["l"] == pytest.approx(GmpModel(4.0, 2.0).l + 1, rel=1e-12)

    def test_fcf(self):
        d = call_json("fcf", "--k", "4", "--b", "2", "--direction", "g-")
        by = {(o["n_source"], o["n_target"]): o["overlap"] for o in d["overlaps"]}
        assert by[(0, 1)] == pytest.approx(0.3653258924472809, rel=1e-9)

    def test_fit_reads_spectrum_output(self, tmp_path):
        obs = tmp_path / "levels.json"
        _, out, _ = call("spectrum", *DEEP_WELL)
        obs.write_text(out)
        d = call_json("fit", "--D", "12", "--a", "1.2", "--re", "3", "--observed", str(obs))
        assert d["converged"]
        assert d["params"]["D"] == pytest.approx(10.0, rel=1e-4)

    def test_fit_reads_csv(self, tmp_path):
        obs = tmp_path / "levels.csv"
        m = reduce(PhysicalParams(10.0, 1.0, 2.5))
        obs.write_text("n,E\n" + "".join(f"{r.n},{r.E_n!r}\n" for r in m.levels()))
        d = call_json("fit", "--D", "12", "--a", "1.2", "--re", "3", "--observed", str(obs))
        assert d["params"]["r_e"] == pytest.approx(2.5, rel=1e-4)

    def test_verify_single_suite(self):
        code, out, _ = call("verify", "--suite", "core")
        assert code == EXIT_OK
        assert out.strip().splitlines()[-1].endswith("checks passed")
        assert "FAIL" not in out


class TestPlotData:
    def test_potential_vanishes_at_equilibrium(self):
        # 30 points on [0.1, 3.0] r_e put node 9 exactly at r_e
        code, out, _ = call("plotdata", *DEEP_WELL, "--grid-points", "30")
        assert code == EXIT_OK
        cols, rows, meta = read_csv(out)
        assert cols == ["r", "V_GMP", "V_Morse", "V_harmonic"]
        r, v_gmp, v_morse, v_harm = rows[9]
        assert r == pytest.approx(2.5, rel=1e-14)
        assert abs(v_gmp) <= 1e-12 and abs(v_morse) <= 1e-12 and abs(v_harm) <= 1e-12
        assert min(row[1] for row in rows) >= 0.0

    def test_oscillator_quantum_is_first_dunham_term(self):
        _, out, _ = call("plotdata", *DEEP_WELL, "--grid-points", "5")
        meta = read_csv(out)[2]
        from genmorse.core import dunham_coefficients

        want = dunham_coefficients(reduce(PhysicalParams(10.0, 1.0, 2.5)), 1, physical=True)[1]
        assert float(meta["hbar_omega"]) == pytest.approx(want, rel=1e-14)

    def test_gmp_grows_like_inverse_square_near_origin(self):
        m = reduce(PhysicalParams(10.0, 1.0, 2.5))
        x = [1e-3, 1e-4]
        v = [m.potential(t) for t in x]
        assert v[1] / v[0] == pytest.approx(100.0, rel=1e-2)

    def test_satellite_chain(self):
        code, out, _ = call("plotdata", *DEEP_WELL, "--kind", "satellite", "--direction", "g-", "--grid-points", "20")
        assert code == EXIT_OK
        cols, rows, meta = read_csv(out)
        assert [c for c in cols if c.startswith("v_")] == ["v_0", "v_1", "v_2", "v_3"]
        assert float(meta["f"]) == pytest.approx(10.0 * (math.exp(2.5) - 1) ** 2, rel=1e-12)
        assert len(rows) == 20


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "genmorse", "spectrum", "--k", "4", "--b", "2"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["model"]["n_max"] == 1
