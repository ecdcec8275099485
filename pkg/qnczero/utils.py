import logging
import logging.handlers
import math
import os

from qnczero.constants import LOGDIR

handler = None


def build_logger(logger_name, logger_filename=None):
    global handler

    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    # Set the format of root handlers; basicConfig writes to stderr
    if not logging.getLogger().handlers:
        logging.basicConfig(level=logging.WARNING)
    logging.getLogger().handlers[0].setFormatter(formatter)

    logger = logging.getLogger(logger_name)

    # One file handler on the package logger; every qnczero.* logger propagates to it
    if logger_filename is not None:
        filename = os.path.join(LOGDIR, logger_filename)
        if handler is not None and handler.baseFilename == os.path.abspath(filename):
            return logger
        close_log_file()
        os.makedirs(os.path.dirname(os.path.abspath(filename)), exist_ok=True)
        handler = logging.handlers.TimedRotatingFileHandler(
            filename, when='D', utc=True)
        handler.setFormatter(formatter)
        logging.getLogger("qnczero").addHandler(handler)

    return logger


def close_log_file():
    global handler

    if handler is not None:
        logging.getLogger("qnczero").removeHandler(handler)
        handler.close()
        handler = None


def set_log_level(level):
    logging.getLogger("qnczero").setLevel(level)


def split_list(lst, n):
    """Split a list into n (roughly) equal-sized chunks"""
    chunk_size = max(1, math.ceil(len(lst) / n))
    return [lst[i:i+chunk_size] for i in range(0, len(lst), chunk_size)]


def get_chunk(lst, n, k):
    chunks = split_list(lst, n)
    return chunks[k]


def ceil_log2(value):
    """Smallest m with 2**m >= value, for positive integers."""
    if value < 1:
        raise ValueError(f'ceil_log2 needs a positive integer, got {value}')
    return (value - 1).bit_length()


def bit_string(value, width):
    """LSB-first bit string of an integer."""
    return "".join(str((value >> i) & 1) for i in range(width))


def hamming_weight(bits):
    return sum(1 for b in bits if b in (1, "1"))
