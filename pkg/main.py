import sys
from burgers_series.core import SeriesManager


def main():
    """
    The main entry point of the application.

    Runs one command of :class:`SeriesManager` and exits with its status. A
    manual interruption (Ctrl+C) is reported instead of printing a traceback.

    :raises SystemExit: Always, carrying the command's exit status.
    """
    try:
        sys.exit(SeriesManager().run())
    except KeyboardInterrupt:
        print("Interrompido pelo usuário.")
        sys.exit(130)


if __name__ == "__main__":
    main()
