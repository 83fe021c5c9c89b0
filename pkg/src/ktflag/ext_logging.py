import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def basic_debug(level=logging.DEBUG):
    """
    Sets up basic logging configuration with the specified logging level, writing to stdout.

    Args:
        level (int, optional): The logging level to set. Defaults to logging.DEBUG.
    """
    logging.basicConfig(level=level, stream=sys.stdout, format=LOG_FORMAT, force=True)


def file_debug(file, level=logging.DEBUG):
    """
    Sets up basic logging configuration with the specified logging level and file.

    Args:
        file (str): The path to the file where the log messages will be written.
        level (int, optional): The logging level to set. Defaults to logging.DEBUG.
    """
    logging.basicConfig(level=level, filename=file, format=LOG_FORMAT, force=True)


def setup(verbose: bool = False, log_file: str = None):
    """
    logging for the command line: WARNING by default, DEBUG with verbose
    """
    level = logging.DEBUG if verbose else logging.WARNING
    if log_file:
        file_debug(log_file, level)
    else:
        basic_debug(level)
