import logging
from typing import Union

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
ROOT_LOGGER = "burgers_series"


def get_logger(name: str) -> logging.Logger:
    """
    Returns a child of the package logger.

    :param name: Short component name, e.g. ``"closed_form"``.
    :type name: str
    :return: The logger ``burgers_series.<name>``.
    :rtype: logging.Logger
    """
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def configure_logging(level: Union[int, str] = logging.WARNING) -> logging.Logger:
    """
    Installs a single stream handler on the package logger.

    Calling it again only updates the level, so the command line can call it
    once per run without stacking handlers.

    :param level: Logging level name or number.
    :return: The configured package logger.
    :rtype: logging.Logger
    """
    logger = logging.getLogger(ROOT_LOGGER)
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
