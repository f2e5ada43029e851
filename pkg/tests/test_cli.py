from pathlib import Path

import numpy as np
import pytest

from conftest import interior_extrema, match_locations, zero_crossings
from dunklfp.cli import main

GOLDEN = Path(__file__).parent / "golden"


def read_csv_columns(path):
    lines = [l for l in Path(path).read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, data


class TestTableCommand:
    def test_table1_matches_golden(self, tmp_path):
        out = tmp_path / "t1.csv"
        assert main(["table", "1", "--out", str(out)]) == 0
        assert out.read_bytes() == (GOLDEN / "table1.csv").read_bytes()

    def test_table1_row2_content(self, tmp_path):
        out = tmp_path / "t1.csv"
        main(["table", "1", "--out", str(out)])
        lines = out.read_text().splitlines()
        assert lines[2] == "11/2,7/2,x^{-1} J_{7}(2 x),x^{-1} J_{4}(2 x)"

    def test_table2_matches_golden(self, tmp_path):
        out = tmp_path / "t2.csv"
        assert main(["table", "2", "--out", str(out)]) == 0
        assert out.read_bytes() == (GOLDEN / "table2_even.csv").read_bytes()

    def test_table2_odd_variant(self, tmp_path):
        out = tmp_path / "t2o.csv"
        assert main(["table", "2", "--parity", "odd", "--out", str(out)]) == 0
        assert out.read_bytes() == (GOLDEN / "table2_odd.csv").read_bytes()
        assert ",5," in out.read_text().splitlines()[1]

    def test_repeated_runs_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["table", "1", "--out", str(a)])
        main(["table", "1", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_path_exits_2(self, tmp_path):
        missing_dir = tmp_path / "nope" / "t.csv"
        assert main(["table", "1", "--out", str(missing_dir)]) == 2


class TestFigureCommand:
    @pytest.mark.parametrize("which", ["1a", "1b", "2a", "2b"])
    def test_figure_structure(self, which, tmp_path):
        out = tmp_path / f"fig{which}.csv"
        assert main(["figure", which, "--out", str(out)]) == 0
        header, data = read_csv_columns(out)
        assert header == ["x", "curve1", "curve2", "curve3"]
        assert data.shape == (1000, 4)
        assert data[0, 0] > 0 and data[-1, 0] == pytest.approx(10.0)

    def test_figure_2a_records_exact_alpha(self, tmp_path):
        out = tmp_path / "fig2a.csv"
        main(["figure", "2a", "--out", str(out)])
        head = out.read_text().splitlines()[0]
        assert "gamma=13/30" in head and "alpha_e=121/34" in head
        assert "3.55882" in head

    def test_figure_full_line_parity(self, tmp_path):
        out = tmp_path / "fig1a.csv"
        main(["figure", "1a", "--full-line", "--points", "200", "--out", str(out)])
        _, data = read_csv_columns(out)
        assert data.shape == (400, 4)
        # even curves: value at -x equals value at x
        np.testing.assert_allclose(data[:200, 1:][::-1], data[200:, 1:], rtol=1e-12)

    def test_figure_byte_stability(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["figure", "2b", "--out", str(a)])
        main(["figure", "2b", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    @pytest.mark.parametrize("which", ["1a", "1b", "2a", "2b"])
    def test_curve_shape_stable_under_refinement(self, which, tmp_path):
        coarse_path = tmp_path / "c.csv"
        fine_path = tmp_path / "f.csv"
        main(["figure", which, "--points", "1000", "--out", str(coarse_path)])
        main(["figure", which, "--points", "2000", "--out", str(fine_path)])
        _, coarse = read_csv_columns(coarse_path)
        _, fine = read_csv_columns(fine_path)
        h = 10.0 / 1000
        for col in (1, 2, 3):
            window = (coarse[:, 0] > 0.3) & (coarse[:, 0] < 9.7)
            window_f = (fine[:, 0] > 0.3) & (fine[:, 0] < 9.7)
            cz = zero_crossings(coarse[window, 0], coarse[window, col])
            fz = zero_crossings(fine[window_f, 0], fine[window_f, col])
            assert match_locations(cz, fz, 2 * h)
            ce = interior_extrema(coarse[window, 0], coarse[window, col])
            fe = interior_extrema(fine[window_f, 0], fine[window_f, col])
            assert match_locations(ce, fe, 2 * h)


class TestVerifyCommand:
    def test_algebra_suite_passes(self, capsys):
        assert main(["verify", "algebra"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_analytic_suite_passes(self):
        assert main(["verify", "analytic"]) == 0

    def test_injected_defect_fails_and_names_identity(self, capsys):
        code = main(["verify", "algebra", "--inject-defect", "tp-square-sign"])
        assert code == 1
        out = capsys.readouterr().out
        fail_lines = [l for l in out.splitlines() if l.startswith("FAIL")]
        assert fail_lines and "square closed forms" in fail_lines[0]
        assert "square_closed_form[tp]" in fail_lines[0]


OSC_CONFIG = """\
# oscillator relaxation run
problem = oscillator
parity = even
a = 4.3
mu = 0.6
gamma = 0.4333333333333333
n = 1
grid = 1500
xmax = 10
dt = 0.002
steps = 220
scheme = crank_nicolson
"""


class TestEvolveCommand:
    def write_config(self, tmp_path, text):
        path = tmp_path / "run.cfg"
        path.write_text(text)
        return str(path)

    def test_oscillator_mode_decay(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, OSC_CONFIG)
        out = tmp_path / "traj.csv"
        assert main(["evolve", cfg, "--out", str(out)]) == 0
        summary = capsys.readouterr().out
        assert "lambda_measured" in summary
        rel = float(summary.split("rel_err=")[1].split()[0])
        assert rel < 0.01
        lines = out.read_text().splitlines()
        assert lines[0] == "t,x,value"

    def test_stationary_mode(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, OSC_CONFIG.replace("n = 1", "n = 0")
                                .replace("grid = 1500", "grid = 12000")
                                .replace("xmax = 10", "xmax = 8")
                                .replace("dt = 0.002", "dt = 0.0001"))
        out = tmp_path / "traj.csv"
        assert main(["evolve", cfg, "--out", str(out)]) == 0
        summary = capsys.readouterr().out
        measured = abs(float(summary.split("lambda_measured=")[1].split()[0]))
        assert measured < 1e-6

    def test_missing_dt_exits_2_and_names_key(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path,
                                OSC_CONFIG.replace("dt = 0.002\n", ""))
        assert main(["evolve", cfg]) == 2
        assert "'dt'" in capsys.readouterr().err

    def test_unknown_key_exits_2(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, OSC_CONFIG + "wibble = 3\n")
        assert main(["evolve", cfg]) == 2
        assert "wibble" in capsys.readouterr().err

    def test_centrifugal_config_accepted(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, """\
problem = centrifugal
parity = even
a = 2
sigma = 2.5
mu = 0.5
lambda = 4
grid = 1200
xmax = 12
dt = 0.001
steps = 100
scheme = backward_euler
""")
        out = tmp_path / "traj.csv"
        assert main(["evolve", cfg, "--out", str(out)]) == 0
        assert "lambda_measured" in capsys.readouterr().out


class TestSpectrumCommand:
    def test_spectrum_output(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(OSC_CONFIG)
        assert main(["spectrum", str(cfg), "--k", "3", "--grid", "2000",
                     "--xmax", "12"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,lambda_numeric,lambda_analytic,rel_err"
        assert len(lines) == 4
        lam1 = float(lines[2].split(",")[1])
        assert lam1 == pytest.approx(4 * (1 - 13 / 30), rel=5e-3)

    def test_spectrum_rejects_centrifugal(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("""\
problem = centrifugal
parity = even
a = 2
sigma = 2.5
mu = 0.5
lambda = 4
grid = 500
xmax = 8
""")
        assert main(["spectrum", str(cfg)]) == 2
