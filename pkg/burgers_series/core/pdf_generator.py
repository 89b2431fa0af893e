from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Sequence, Tuple
import matplotlib.pyplot as plt
import numpy as np
from burgers_series.builder import SeriesReport, draw_curves
from burgers_series.models.grid import GridField
from burgers_series.models.series import ErrorRecord
from burgers_series.utils.helpers import get_logger

logger = get_logger("pdf_generator")


class ReportGenerator:
    """
    Turns solver results into static figures.

    Each figure is written twice: an SVG next to the requested path and a PDF
    page holding the figure and its table. Every method returns ``True`` when
    both files were written and ``False`` otherwise; a failed figure never
    aborts a run whose CSV is already on disk.
    """

    @staticmethod
    def _save(pdf: SeriesReport, figure: plt.Figure, path: Path) -> bool:
        path = Path(path)
        try:
            figure.savefig(path.with_suffix(".svg"), bbox_inches="tight")
            pdf.output(str(path))
            print(f"✓ Figura gerada: {path.name}")
            return True
        except Exception as e:
            logger.error("could not write %s: %s", path, e)
            print(f"Erro ao gerar PDF: {e}")
            return False
        finally:
            plt.close(figure)

    @staticmethod
    def profiles(field: GridField, nu: float, order: int, path: Path) -> bool:
        """
        Real and imaginary profiles of U_N, one curve per time level.
        """
        figure, axes = plt.subplots(2, 1, figsize=(7, 8), sharex=True)
        for ax, part, name in zip(axes, (np.real, np.imag), ("Re U", "Im U")):
            curves = {f"t = {t:g}": (field.xs, part(row)) for t, row in zip(field.ts, field.values)}
            draw_curves(ax, curves, "x", name)
        pdf = SeriesReport(f"Partial sum U_{order}, nu = {nu:g}")
        pdf.add_page()
        pdf.add_figure(figure)
        return ReportGenerator._save(pdf, figure, path)

    @staticmethod
    def sweep_n(records: Sequence[ErrorRecord], path: Path) -> bool:
        """Error against N, one curve per viscosity, log scale."""
        by_nu: Dict[float, List[ErrorRecord]] = defaultdict(list)
        for record in records:
            by_nu[record.nu].append(record)
        figure, ax = plt.subplots(figsize=(7, 4.5))
        curves = {
            f"nu = {nu:g}": ([r.order for r in rows], [r.sup_error for r in rows])
            for nu, rows in sorted(by_nu.items())
        }
        draw_curves(ax, curves, "N", "sup error", log_y=True)
        pdf = SeriesReport("Absolute error against the number of terms")
        pdf.add_page()
        pdf.add_figure(figure)
        pdf.add_table(["N", "nu", "sup error"], [(r.order, r.nu, r.sup_error) for r in records])
        return ReportGenerator._save(pdf, figure, path)

    @staticmethod
    def sweep_nu(records: Sequence[ErrorRecord], path: Path) -> bool:
        """Error against viscosity, one curve per N, log scale; flagged cells listed."""
        by_order: Dict[int, List[ErrorRecord]] = defaultdict(list)
        for record in records:
            by_order[record.order].append(record)
        figure, ax = plt.subplots(figsize=(7, 4.5))
        curves = {
            f"N = {order}": ([r.nu for r in rows], [r.sup_error for r in rows])
            for order, rows in sorted(by_order.items())
        }
        draw_curves(ax, curves, "nu", "sup error", log_y=True)
        pdf = SeriesReport("Absolute error against the viscosity")
        pdf.add_page()
        pdf.add_figure(figure)
        flagged = [(r.nu, r.order, r.sup_error) for r in records if r.flagged]
        if flagged:
            pdf.add_paragraph("Flagged cells (blow-up or failed reference):")
            pdf.add_table(["nu", "N", "sup error"], flagged)
        return ReportGenerator._save(pdf, figure, path)

    @staticmethod
    def ratio(rows: Sequence[Tuple[int, float]], r: float, path: Path) -> bool:
        """r_m against m with the extrapolated limit as a dashed line."""
        figure, ax = plt.subplots(figsize=(7, 4.5))
        draw_curves(ax, {"r_m": ([m for m, _ in rows], [v for _, v in rows])}, "m", "r_m")
        ax.axhline(r, color="grey", linestyle="--", linewidth=0.8)
        pdf = SeriesReport("Ratio-test sequence r_m")
        pdf.add_page()
        pdf.add_paragraph(f"Richardson limit r = {r:.10f}, threshold r/2 = {r / 2:.10f}")
        pdf.add_figure(figure)
        return ReportGenerator._save(pdf, figure, path)
