import io
import math
from typing import Dict, Optional, Sequence, Tuple
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from fpdf import FPDF  # noqa: E402
from fpdf.enums import XPos, YPos  # noqa: E402

Curve = Tuple[Sequence[float], Sequence[float]]


def curve(xs: Sequence[float], ys: Sequence[float]) -> Curve:
    """Pairs abscissae with ordinates, dropping non-finite points."""
    points = [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
    return [p[0] for p in points], [p[1] for p in points]


def draw_curves(ax: plt.Axes, curves: Dict[str, Curve], x_label: str, y_label: str, log_y: bool = False) -> int:
    """
    Draws labelled curves on ``ax``.

    :param curves: Legend label to ``(xs, ys)``.
    :param log_y: Logarithmic ordinate; non-positive values are dropped.
    :return: Number of curves that had at least one point to draw.
    """
    drawn = 0
    for label, (xs, ys) in curves.items():
        xs, ys = curve(xs, ys)
        if log_y:
            pairs = [(x, y) for x, y in zip(xs, ys) if y > 0]
            xs, ys = [p[0] for p in pairs], [p[1] for p in pairs]
        if not xs:
            continue
        ax.plot(xs, ys, marker="o" if len(xs) < 40 else None, markersize=3, linewidth=1.2, label=label)
        drawn += 1
    if log_y and drawn:
        ax.set_yscale("log")
    if not drawn:
        ax.text(0.5, 0.5, "(no finite data to plot)", ha="center", va="center", transform=ax.transAxes)
    elif len(curves) > 1:
        ax.legend(fontsize=7)
    ax.set_xlabel(x_label)
    ax.set_ylabel(y_label)
    ax.grid(True, which="both", alpha=0.3)
    return drawn


class SeriesReport(FPDF):
    """
    Static report with tables and matplotlib figures of series results.

    Figures are rasterized into the page; the vector version is written by
    the caller next to the PDF. Text must be latin-1, so viscosity is written
    as ``nu``.

    :ivar title: Printed in the header of every page.
    :type title: str
    """

    def __init__(self, title: str):
        super().__init__()
        self.title = title
        self.set_auto_page_break(auto=True, margin=20)
        self.set_margins(20, 20, 20)
        self.set_title(title)

    def header(self) -> None:
        self.set_font("Helvetica", "B", 11)
        self.cell(0, 8, self.title, new_x=XPos.LMARGIN, new_y=YPos.NEXT, align="C")
        self.ln(2)

    def footer(self) -> None:
        self.set_y(-15)
        self.set_font("Helvetica", "", 9)
        self.cell(0, 10, f"{self.page_no()}", align="C")

    def add_paragraph(self, text: str) -> None:
        self.set_font("Helvetica", "", 10)
        self.multi_cell(0, 5, text, new_x=XPos.LMARGIN, new_y=YPos.NEXT)
        self.ln(2)

    def add_table(self, columns: Sequence[str], rows: Sequence[Sequence], widths: Optional[Sequence[float]] = None) -> None:
        """
        Writes a simple grid table; rows are pre-formatted strings or numbers.
        """
        widths = widths or [self.epw / len(columns)] * len(columns)
        self.set_font("Helvetica", "B", 9)
        for width, name in zip(widths, columns):
            self.cell(width, 6, str(name), border=1, align="C")
        self.ln()
        self.set_font("Helvetica", "", 9)
        for row in rows:
            for width, value in zip(widths, row):
                text = f"{value:.6g}" if isinstance(value, float) else str(value)
                self.cell(width, 5, text, border=1, align="R")
            self.ln()
        self.ln(3)

    def add_figure(self, figure: plt.Figure, dpi: int = 150) -> None:
        """Embeds ``figure`` as a PNG spanning the text width."""
        buffer = io.BytesIO()
        figure.savefig(buffer, format="png", dpi=dpi, bbox_inches="tight")
        buffer.seek(0)
        self.image(buffer, w=self.epw)
        self.ln(3)
