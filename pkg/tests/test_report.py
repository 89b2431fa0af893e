import math
import matplotlib.pyplot as plt
import numpy as np
from burgers_series.builder import SeriesReport, curve, draw_curves
from burgers_series.core.pdf_generator import ReportGenerator
from burgers_series.models.grid import GridField
from burgers_series.models.series import ErrorRecord


def test_curve_drops_non_finite():
    assert curve([1, 2, 3], [1.0, math.nan, math.inf]) == ([1.0], [1.0])


def test_plot_without_data(tmp_path):
    figure, ax = plt.subplots()
    assert draw_curves(ax, {"none": ([1.0], [0.0])}, "N", "error", log_y=True) == 0
    assert ax.get_yscale() == "linear"
    pdf = SeriesReport("empty")
    pdf.add_page()
    pdf.add_figure(figure)
    plt.close(figure)
    pdf.output(str(tmp_path / "empty.pdf"))
    assert (tmp_path / "empty.pdf").read_bytes().startswith(b"%PDF")


def test_log_axis_uses_powers_of_ten():
    figure, ax = plt.subplots()
    draw_curves(ax, {"e": ([1, 2, 3], [1e-1, 1e-3, 1e-5])}, "N", "error", log_y=True)
    figure.canvas.draw()
    labels = [tick.get_text() for tick in ax.get_yticklabels() if tick.get_text()]
    plt.close(figure)
    assert ax.get_yscale() == "log"
    assert labels and all("10^" in label for label in labels)


def test_profiles(tmp_path):
    xs = np.linspace(-np.pi, np.pi, 21)
    field = GridField(xs, [0.0, 1.0], np.exp(1j * np.add.outer([0.0, 1.0], xs)))
    assert ReportGenerator.profiles(field, 0.3, 30, tmp_path / "solve.pdf")
    assert (tmp_path / "solve.pdf").stat().st_size > 0
    assert (tmp_path / "solve.svg").read_text().lstrip().startswith("<?xml")


def test_sweeps_with_flagged_cells(tmp_path):
    records = [ErrorRecord(n, nu, 10.0 ** (-n * nu)) for nu in (0.5, 1.0) for n in range(1, 6)]
    assert ReportGenerator.sweep_n(records, tmp_path / "sweep_n.pdf")
    records.append(ErrorRecord(5, 0.2, math.inf, True))
    assert ReportGenerator.sweep_nu(records, tmp_path / "sweep_nu.pdf")
    assert (tmp_path / "sweep_n.svg").exists()
    assert (tmp_path / "sweep_nu.svg").exists()


def test_ratio(tmp_path):
    rows = [(m, 1.4427 + 1.0 / m ** 3) for m in range(1, 30)]
    assert ReportGenerator.ratio(rows, 1.4427, tmp_path / "ratio.pdf")
    assert "<svg" in (tmp_path / "ratio.svg").read_text()


def test_write_failure_is_reported(tmp_path, mocker, capsys):
    mocker.patch.object(SeriesReport, "output", side_effect=OSError("disk full"))
    assert not ReportGenerator.ratio([(1, 2.0), (2, 1.5)], 1.44, tmp_path / "ratio.pdf")
    assert "Erro ao gerar PDF" in capsys.readouterr().out
    assert not plt.get_fignums()
