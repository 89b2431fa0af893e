import argparse
from typing import List, Optional
from burgers_series import constants
from burgers_series.config.settings import Config

IC_HELP = (
    "initial condition: 'exp-iz' (exp(ix)), 'cos', or a CSV file with rows "
    "x,re[,im] (optional header, uniformly spaced x covering one period)"
)


class CommandLine:
    """
    Builds the argument parser of ``main.py``.

    Defaults are read from :class:`Config` when the parser is built, so a
    ``--config`` file must be loaded before :meth:`parse` is called a second
    time (see :meth:`SeriesManager.run`).
    """

    @staticmethod
    def _add_domain(parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group("domain")
        group.add_argument("--x-min", type=float, default=constants.DOMAIN_X_MIN)
        group.add_argument("--x-max", type=float, default=constants.DOMAIN_X_MAX)
        group.add_argument("--t-min", type=float, default=constants.DOMAIN_T_MIN)
        group.add_argument("--t-max", type=float, default=constants.DOMAIN_T_MAX)
        group.add_argument("--nx", type=int, default=constants.DOMAIN_NX)
        group.add_argument("--nt", type=int, default=constants.DOMAIN_NT)

    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        """
        Parser with the global options and one sub-parser per command.

        :rtype: argparse.ArgumentParser
        """
        parser = argparse.ArgumentParser(
            prog="burgers-series",
            description="Series solutions of the viscous Burgers equation."
        )
        parser.add_argument("--config", help="INI file with [DEFAULT] overrides")
        parser.add_argument("--output-dir", help=f"output directory (env {constants.OUTPUT_ENV})")
        parser.add_argument("--format", choices=["csv", "json"], default="csv")
        parser.add_argument("--threads", type=int, default=None)
        parser.add_argument("--log-level", default=None)
        commands = parser.add_subparsers(dest="command", required=True)

        term = commands.add_parser("term", help="print the closed-form term f_m(x, t)")
        term.add_argument("--m", type=int, required=True)
        term.add_argument("--nu", type=float, default=Config.DEFAULT_NU)
        term.add_argument("--x", type=float, required=True)
        term.add_argument("--t", type=float, required=True)

        solve = commands.add_parser("solve", help="partial-sum profiles U_N(x, t)")
        solve.add_argument("--nu", type=float, default=Config.DEFAULT_NU)
        solve.add_argument("--N", type=int, default=Config.DEFAULT_ORDER)
        solve.add_argument("--t", type=float, action="append", dest="times")
        solve.add_argument("--nx", type=int, default=constants.SOLVE_NX)
        solve.add_argument("--pdf", action="store_true")

        recurse = commands.add_parser("recurse", help="Green's-function recursion for any periodic IC")
        recurse.add_argument("--ic", default="exp-iz", help=IC_HELP)
        recurse.add_argument("--nu", type=float, default=Config.DEFAULT_NU)
        recurse.add_argument("--N", type=int, default=5)
        recurse.add_argument("--nx", type=int, default=Config.GRID_NX)
        recurse.add_argument("--nt", type=int, default=Config.GRID_NT)
        recurse.add_argument("--t-max", type=float, default=Config.GRID_T_MAX)
        recurse.add_argument("--backend", choices=["spectral", "hermite"], default="spectral")
        recurse.add_argument("--dump", action="store_true", help="also write a binary field dump")

        reference = commands.add_parser("reference", help="Cole-Hopf and/or time-stepping reference")
        reference.add_argument("--method", choices=["cole-hopf", "fd", "both"], default="both")
        reference.add_argument("--nu", type=float, default=Config.DEFAULT_NU)
        reference.add_argument("--t", type=float, action="append", dest="times")
        reference.add_argument("--nx", type=int, default=Config.GRID_NX)
        reference.add_argument("--dt", type=float, default=1e-3)

        residual = commands.add_parser("residual", help="Burgers-operator residual of U_N")
        residual.add_argument("--nu", type=float, default=Config.DEFAULT_NU)
        residual.add_argument("--N", type=int, default=Config.DEFAULT_ORDER)
        residual.add_argument("--x", type=float, required=True)
        residual.add_argument("--t", type=float, required=True)
        residual.add_argument("--h", type=float, default=constants.DEFAULT_FD_STEP)

        sweep_n = commands.add_parser("sweep-n", help="sup-norm error against N")
        sweep_n.add_argument("--nu", type=float, nargs="+", default=[1.0])
        sweep_n.add_argument("--N-max", type=int, default=25)
        sweep_n.add_argument("--pdf", action="store_true")
        sweep_n.add_argument("--check-resolution", action="store_true",
                             help="repeat on a refined grid and report the drift")
        CommandLine._add_domain(sweep_n)

        sweep_nu = commands.add_parser("sweep-nu", help="sup-norm error against nu")
        sweep_nu.add_argument("--N", type=int, nargs="+", default=[10, 20, 30])
        sweep_nu.add_argument("--nu-min", type=float, default=0.2)
        sweep_nu.add_argument("--nu-max", type=float, default=1.0)
        sweep_nu.add_argument("--nu-step", type=float, default=0.05)
        sweep_nu.add_argument("--pdf", action="store_true")
        sweep_nu.add_argument("--check-resolution", action="store_true",
                              help="repeat on a refined grid and report the drift")
        CommandLine._add_domain(sweep_nu)

        ratio = commands.add_parser("ratio", help="ratio-test sequence r_m")
        ratio.add_argument("--m-max", type=int, default=200)
        ratio.add_argument("--pdf", action="store_true")
        return parser

    @staticmethod
    def parse(argv: Optional[List[str]] = None) -> argparse.Namespace:
        return CommandLine.build_parser().parse_args(argv)
