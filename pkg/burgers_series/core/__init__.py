import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence
import numpy as np
from burgers_series import constants
from burgers_series.config.settings import Config
from burgers_series.core import analysis, closed_form, greens_engine, reference
from burgers_series.core.file_manager import FileManager
from burgers_series.core.pdf_generator import ReportGenerator
from burgers_series.exceptions import BurgersSeriesError, DomainError
from burgers_series.models.grid import GridField
from burgers_series.models.series import (
    ColeHopfSpec,
    DomainSpec,
    EvalPoint,
    QuadratureSpec,
    SolverConfig,
)
from burgers_series.ui.interface import CommandLine
from burgers_series.utils.helpers import configure_logging, get_logger

logger = get_logger("cli")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ACCURACY = 3


def format_complex(value: complex) -> str:
    """``1+0i`` style rendering with 16 significant digits."""
    return f"{value.real:.16g}{value.imag:+.16g}i"


class SeriesManager:
    """
    Dispatches the sub-commands of the command line.

    Each handler validates its parameters through the domain types before any
    computation starts, writes its artifacts under the output directory and
    prints a one-line confirmation per file.

    :ivar output_dir: Directory receiving every artifact of the run.
    :type output_dir: Path
    :ivar fmt: ``"csv"`` or ``"json"``.
    :type fmt: str
    :ivar workers: Thread cap handed to the sweeps.
    :type workers: int
    """

    def __init__(self):
        self.output_dir = Config.OUTPUT_DIR
        self.fmt = "csv"
        self.workers = Config.THREADS
        self.handlers: Dict[str, Callable[[argparse.Namespace], None]] = {
            "term": self._term,
            "solve": self._solve,
            "recurse": self._recurse,
            "reference": self._reference,
            "residual": self._residual,
            "sweep-n": self._sweep_n,
            "sweep-nu": self._sweep_nu,
            "ratio": self._ratio,
        }

    def _target(self, name: str) -> Path:
        return FileManager.ensure_output_dir(self.output_dir) / name

    def _written(self, path: Path) -> None:
        print(f"✓ Arquivo gerado: {path}")

    @staticmethod
    def _quadrature() -> QuadratureSpec:
        return QuadratureSpec(Config.HERMITE_NODES, Config.TIME_NODES, Config.SUB_TOL)

    @staticmethod
    def _cole_hopf_spec() -> ColeHopfSpec:
        return ColeHopfSpec(Config.TRUNCATION_RADIUS, Config.COLE_HOPF_TOL, Config.MAX_SUBDIVISIONS)

    @staticmethod
    def _domain(args: argparse.Namespace) -> DomainSpec:
        return DomainSpec(args.x_min, args.x_max, args.t_min, args.t_max, args.nx, args.nt)

    def _term(self, args: argparse.Namespace) -> None:
        cfg = SolverConfig(args.nu, max(args.m, 1))
        print(format_complex(closed_form.term(args.m, cfg, EvalPoint(args.x, args.t))))

    def _solve(self, args: argparse.Namespace) -> None:
        cfg = SolverConfig(args.nu, args.N)
        times = sorted(set(args.times or constants.SOLVE_TIMES))
        if times[0] < 0:
            raise DomainError("times must be >= 0")
        xs = np.linspace(constants.DOMAIN_X_MIN, constants.DOMAIN_X_MAX, args.nx)
        field = GridField(xs, times, closed_form.partial_sum_field(cfg, xs, times))
        self._written(FileManager.write_field(self._target("solve"), field, self.fmt))
        if args.pdf:
            ReportGenerator.profiles(field, cfg.nu, cfg.order, self._target("solve.pdf"))

    def _initial_condition(self, name: str, nx: int):
        if name == "exp-iz":
            return (lambda x: np.exp(1j * np.asarray(x))), nx, constants.TWO_PI
        if name == "cos":
            return (lambda x: np.cos(np.asarray(x)) + 0j), nx, constants.TWO_PI
        xs, values = FileManager.read_tabulated_ic(Path(name))
        return greens_engine.sampled_ic(xs, values), len(xs), float((xs[1] - xs[0]) * len(xs))

    def _recurse(self, args: argparse.Namespace) -> None:
        ic, nx, period = self._initial_condition(args.ic, args.nx)
        grid = GridField.template(nx, args.nt, args.t_max, period)
        if not args.nu > 0:
            raise DomainError(f"nu must be positive, got {args.nu}")
        result = greens_engine.recurse(ic, args.nu, grid, args.N, self._quadrature(), args.backend)
        self._written(FileManager.write_field(self._target("recurse"), result.partial_sum, self.fmt))
        if args.dump:
            self._written(FileManager.write_binary(self._target("recurse.bin"), result.partial_sum))

    def _reference(self, args: argparse.Namespace) -> None:
        times = sorted(set(args.times or [1.0]))
        xs = np.arange(args.nx) * (constants.TWO_PI / args.nx)
        if args.method in ("cole-hopf", "both"):
            spec = self._cole_hopf_spec()
            rows = [reference.cole_hopf_row(args.nu, xs, t, spec) for t in times]
            field = GridField(xs, times, np.array(rows), constants.TWO_PI)
            self._written(FileManager.write_field(self._target("reference_cole_hopf"), field, self.fmt))
        if args.method in ("fd", "both"):
            field = reference.fd_solve(np.exp(1j * xs), args.nu, times[-1], args.dt, times)
            self._written(FileManager.write_field(self._target("reference_fd"), field, self.fmt))

    def _residual(self, args: argparse.Namespace) -> None:
        cfg = SolverConfig(args.nu, args.N)
        value = closed_form.residual(cfg, EvalPoint(args.x, args.t), args.h)
        print(f"{format_complex(value)} |A[U_N]| = {abs(value):.3e}")

    def _report_drift(self, nu: float, orders: Sequence[int], dom: DomainSpec) -> None:
        drift = analysis.resolution_drift(nu, orders, dom, self._cole_hopf_spec(), self.workers)
        print(f"nu = {nu:g}: resolution drift {drift:.3e}")

    def _sweep_n(self, args: argparse.Namespace) -> None:
        dom = self._domain(args)
        records = []
        for nu in args.nu:
            records.extend(analysis.sweep_n(nu, args.N_max, dom, self._cole_hopf_spec(), self.workers))
        rows = [{"N": r.order, "nu": r.nu, "sup_error": r.sup_error} for r in records]
        self._written(FileManager.write_records(
            self._target("sweep_n"), constants.SWEEP_N_COLUMNS, rows, self.fmt
        ))
        if args.pdf:
            ReportGenerator.sweep_n(records, self._target("sweep_n.pdf"))
        if args.check_resolution:
            for nu in args.nu:
                self._report_drift(nu, range(1, args.N_max + 1), dom)

    def _sweep_nu(self, args: argparse.Namespace) -> None:
        if not args.nu_step > 0 or args.nu_min > args.nu_max:
            raise DomainError("need nu-min <= nu-max and a positive nu-step")
        count = int(round((args.nu_max - args.nu_min) / args.nu_step)) + 1
        nus = [round(args.nu_min + i * args.nu_step, 12) for i in range(count)]
        dom = self._domain(args)
        records = analysis.sweep_nu(args.N, nus, dom, self._cole_hopf_spec(), self.workers)
        rows = [
            {"nu": r.nu, "N": r.order, "sup_error": r.sup_error, "flag": int(r.flagged)}
            for r in records
        ]
        self._written(FileManager.write_records(
            self._target("sweep_nu"), constants.SWEEP_NU_COLUMNS, rows, self.fmt
        ))
        if args.pdf:
            ReportGenerator.sweep_nu(records, self._target("sweep_nu.pdf"))
        if args.check_resolution:
            for nu in nus:
                self._report_drift(nu, args.N, dom)

    def _ratio(self, args: argparse.Namespace) -> None:
        estimates = analysis.estimate_r(args.m_max)
        limit = analysis.richardson_limit(estimates)
        rows = [{"m": m, "r_m": value} for m, value in estimates]
        self._written(FileManager.write_records(
            self._target("ratio"), constants.RATIO_COLUMNS, rows, self.fmt
        ))
        if args.pdf:
            ReportGenerator.ratio(estimates, limit, self._target("ratio.pdf"))
        print(f"r = {estimates[-1][1]:.10f} (richardson {limit:.10f})")

    def _configure(self, argv: List[str]) -> argparse.Namespace:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            Config.load(Path(known.config))
        args = CommandLine.parse(argv)
        configure_logging(args.log_level or Config.LOG_LEVEL)
        self.output_dir = Path(args.output_dir) if args.output_dir else Config.OUTPUT_DIR
        self.fmt = args.format
        self.workers = args.threads if args.threads is not None else Config.THREADS
        if self.workers < 1:
            raise DomainError("--threads must be >= 1")
        return args

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Parses ``argv`` and runs one command.

        :return: 0 on success, 2 on a usage or validation error, 3 when a
            computation missed its accuracy target or blew up.
        :rtype: int
        """
        argv = list(sys.argv[1:] if argv is None else argv)
        try:
            args = self._configure(argv)
            self.handlers[args.command](args)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        except (DomainError, FileNotFoundError) as e:
            print(f"Erro de validação: {e}", file=sys.stderr)
            return EXIT_USAGE
        except BurgersSeriesError as e:
            logger.error("command failed: %s", e)
            print(f"Erro de precisão: {e}", file=sys.stderr)
            return EXIT_ACCURACY
        return EXIT_OK
