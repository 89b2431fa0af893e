import os
from pathlib import Path
from configparser import ConfigParser
from burgers_series import constants

config = ConfigParser()
config.read("config.ini")


class Config:
    """
    Run-time defaults for solvers, quadratures and output.

    Values come from the ``[DEFAULT]`` section of ``config.ini`` in the working
    directory; anything missing falls back to :mod:`burgers_series.constants`.
    The ``BURGERS_OUTPUT_DIR`` environment variable wins over the INI file for
    the output directory.
    """
    OUTPUT_DIR = Path(os.environ.get(
        constants.OUTPUT_ENV,
        config["DEFAULT"].get("output_dir", constants.DEFAULT_OUTPUT_DIR)
    ))
    DEFAULT_NU = config["DEFAULT"].getfloat("nu", constants.DEFAULT_NU)
    DEFAULT_ORDER = config["DEFAULT"].getint("order", constants.DEFAULT_ORDER)
    GRID_NX = config["DEFAULT"].getint("grid_nx", constants.GRID_NX)
    GRID_NT = config["DEFAULT"].getint("grid_nt", constants.GRID_NT)
    GRID_T_MAX = config["DEFAULT"].getfloat("grid_t_max", constants.GRID_T_MAX)
    HERMITE_NODES = config["DEFAULT"].getint("hermite_nodes", constants.HERMITE_NODES)
    TIME_NODES = config["DEFAULT"].getint("time_nodes", constants.TIME_NODES)
    SUB_TOL = config["DEFAULT"].getfloat("sub_tol", constants.SUB_TOL)
    TRUNCATION_RADIUS = config["DEFAULT"].getfloat("truncation_radius", constants.TRUNCATION_RADIUS)
    COLE_HOPF_TOL = config["DEFAULT"].getfloat("cole_hopf_tol", constants.COLE_HOPF_TOL)
    MAX_SUBDIVISIONS = config["DEFAULT"].getint("max_subdivisions", constants.MAX_SUBDIVISIONS)
    THREADS = config["DEFAULT"].getint("threads", 1)
    LOG_LEVEL = config["DEFAULT"].get("log_level", "WARNING")

    @classmethod
    def load(cls, path: Path) -> None:
        """
        Re-reads the defaults from another INI file.

        :param path: Path to an INI file with a ``[DEFAULT]`` section.
        :type path: Path
        :raises FileNotFoundError: If the file does not exist.
        """
        if not Path(path).exists():
            raise FileNotFoundError(path)
        parser = ConfigParser()
        parser.read(path)
        section = parser["DEFAULT"]
        if constants.OUTPUT_ENV not in os.environ and "output_dir" in section:
            cls.OUTPUT_DIR = Path(section["output_dir"])
        cls.DEFAULT_NU = section.getfloat("nu", cls.DEFAULT_NU)
        cls.DEFAULT_ORDER = section.getint("order", cls.DEFAULT_ORDER)
        cls.GRID_NX = section.getint("grid_nx", cls.GRID_NX)
        cls.GRID_NT = section.getint("grid_nt", cls.GRID_NT)
        cls.GRID_T_MAX = section.getfloat("grid_t_max", cls.GRID_T_MAX)
        cls.HERMITE_NODES = section.getint("hermite_nodes", cls.HERMITE_NODES)
        cls.TIME_NODES = section.getint("time_nodes", cls.TIME_NODES)
        cls.SUB_TOL = section.getfloat("sub_tol", cls.SUB_TOL)
        cls.TRUNCATION_RADIUS = section.getfloat("truncation_radius", cls.TRUNCATION_RADIUS)
        cls.COLE_HOPF_TOL = section.getfloat("cole_hopf_tol", cls.COLE_HOPF_TOL)
        cls.MAX_SUBDIVISIONS = section.getint("max_subdivisions", cls.MAX_SUBDIVISIONS)
        cls.THREADS = section.getint("threads", cls.THREADS)
        cls.LOG_LEVEL = section.get("log_level", cls.LOG_LEVEL)
