import math
import pytest
from burgers_series.config.settings import Config
from burgers_series.core import SeriesManager, format_complex
from burgers_series.core.file_manager import FileManager
from burgers_series.exceptions import AccuracyError, BlowUpError


@pytest.fixture
def run(tmp_path):
    def _run(*argv):
        return SeriesManager().run(["--output-dir", str(tmp_path), *argv])
    return _run


def test_format_complex():
    assert format_complex(1 + 0j) == "1+0i"
    assert format_complex(-0.5 - 2j) == "-0.5-2i"


class TestCommands:

    def test_term(self, run, capsys):
        assert run("term", "--m", "1", "--nu", "0.3", "--x", "0", "--t", "0") == 0
        assert capsys.readouterr().out.strip() == "1+0i"

    def test_solve_writes_profiles(self, run, tmp_path):
        assert run("solve", "--nu", "0.3", "--N", "30", "--t", "1", "--nx", "11") == 0
        lines = (tmp_path / "solve.csv").read_text().splitlines()
        assert lines[0] == "x,t,re,im"
        assert len(lines) == 1 + 11

    def test_solve_default_times_as_json(self, run, tmp_path):
        assert run("--format", "json", "solve", "--nx", "5", "--pdf") == 0
        assert (tmp_path / "solve.json").exists()
        assert (tmp_path / "solve.pdf").exists()

    def test_ratio(self, run, tmp_path, capsys):
        assert run("ratio", "--m-max", "200") == 0
        last = capsys.readouterr().out.strip().splitlines()[-1]
        assert last.startswith("r = ")
        assert abs(float(last.split()[2]) - 1.4427) / 1.4427 < 0.01
        assert (tmp_path / "ratio.csv").read_text().splitlines()[0] == "m,r_m"

    def test_residual(self, run, capsys):
        assert run("residual", "--nu", "1", "--N", "30", "--x", "0.5", "--t", "1") == 0
        magnitude = float(capsys.readouterr().out.split("=")[-1])
        assert magnitude < 1e-6

    def test_recurse_with_dump(self, run, tmp_path):
        argv = ["recurse", "--ic", "cos", "--nu", "1", "--N", "3", "--nx", "16", "--nt", "6",
                "--t-max", "0.2", "--dump"]
        assert run(*argv) == 0
        dumped = FileManager.read_binary(tmp_path / "recurse.bin")
        assert dumped.shape == (6, 16)
        assert (tmp_path / "recurse.csv").exists()

    def test_recurse_tabulated_ic(self, run, tmp_path):
        ic = tmp_path / "ic.csv"
        step = 2 * math.pi / 16
        ic.write_text("".join(f"{i * step!r},{math.sin(i * step)!r}\n" for i in range(16)))
        assert run("recurse", "--ic", str(ic), "--nu", "1", "--N", "2", "--nt", "4", "--t-max", "0.1") == 0

    def test_reference_both(self, run, tmp_path):
        assert run("reference", "--nu", "1", "--t", "0.5", "--nx", "16", "--dt", "0.01") == 0
        assert (tmp_path / "reference_cole_hopf.csv").exists()
        assert (tmp_path / "reference_fd.csv").exists()

    def test_sweeps_are_reproducible(self, run, tmp_path):
        argv = ["sweep-nu", "--N", "3", "5", "--nu-min", "0.5", "--nu-max", "1.0", "--nu-step", "0.25",
                "--nx", "5", "--nt", "3"]
        assert run(*argv) == 0
        first = (tmp_path / "sweep_nu.csv").read_bytes()
        assert run("--threads", "2", *argv) == 0
        assert (tmp_path / "sweep_nu.csv").read_bytes() == first
        lines = first.decode().splitlines()
        assert lines[0] == "nu,N,sup_error,flag"
        assert len(lines) == 1 + 3 * 2

    def test_sweep_n(self, run, tmp_path):
        assert run("sweep-n", "--nu", "1.0", "--N-max", "4", "--nx", "5", "--nt", "3") == 0
        lines = (tmp_path / "sweep_n.csv").read_text().splitlines()
        assert lines[0] == "N,nu,sup_error"
        assert [line.split(",")[0] for line in lines[1:]] == ["1", "2", "3", "4"]

    def test_sweep_n_resolution_check(self, run, capsys):
        assert run("sweep-n", "--nu", "1.0", "--N-max", "3", "--nx", "5", "--nt", "7", "--check-resolution") == 0
        last = capsys.readouterr().out.strip().splitlines()[-1]
        assert last.startswith("nu = 1: resolution drift ")
        assert float(last.split()[-1]) >= 0.0


class TestExitCodes:

    def test_validation_error(self, run):
        assert run("term", "--m", "1", "--nu", "-1", "--x", "0", "--t", "0") == 2

    def test_negative_time(self, run):
        assert run("term", "--m", "1", "--nu", "1", "--x", "0", "--t", "-1") == 2

    def test_unknown_command(self, run):
        assert run("integrate") == 2

    def test_missing_config(self, run, tmp_path):
        assert run("--config", str(tmp_path / "absent.ini"), "ratio") == 2

    def test_accuracy_error(self, run, mocker):
        mocker.patch("burgers_series.core.closed_form.residual", side_effect=AccuracyError("missed"))
        assert run("residual", "--x", "0", "--t", "1") == 3

    def test_blow_up(self, run, mocker):
        mocker.patch("burgers_series.core.reference.fd_solve", side_effect=BlowUpError("nan", 0.4))
        assert run("reference", "--method", "fd") == 3


def test_config_file_sets_defaults(run, tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(Config, "DEFAULT_NU", Config.DEFAULT_NU)
    monkeypatch.setattr(Config, "LOG_LEVEL", Config.LOG_LEVEL)
    ini = tmp_path / "custom.ini"
    ini.write_text("[DEFAULT]\nnu = 2.0\nlog_level = ERROR\n")
    assert run("--config", str(ini), "term", "--m", "2", "--x", "0", "--t", "1") == 0
    value = complex(capsys.readouterr().out.strip().replace("i", "j"))
    expected = 1j / 4.0 * (math.exp(-8.0) - math.exp(-4.0))
    assert value == pytest.approx(expected, rel=1e-12)


def test_main_handles_interrupt(mocker, capsys):
    import main
    mocker.patch.object(main.SeriesManager, "run", side_effect=KeyboardInterrupt)
    with pytest.raises(SystemExit) as exc:
        main.main()
    assert exc.value.code == 130
    assert "Interrompido" in capsys.readouterr().out
