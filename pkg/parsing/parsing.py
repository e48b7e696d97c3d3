import math

import numpy as np
from pyparsing import (
    CaselessLiteral, OneOrMore, Optional, ParseException, Suppress, StringEnd, pyparsing_common,
)

_integer = pyparsing_common.integer
_number = pyparsing_common.number

_CODE_SPEC = (
    Optional(Suppress(CaselessLiteral('RM') + '('))
    + _integer('m') + Suppress(',') + _integer('r')
    + Optional(Suppress(')'))
    + StringEnd()
)
_SNR_GRID = _number('start') + Optional(Suppress(':') + _number('stop') + Suppress(':') + _number('step')) + StringEnd()
_LLR_TEXT = OneOrMore(_number) + StringEnd()


def parse_code_spec(text: str) -> tuple:
    """
    Parse a code description such as "7,3" or "RM(7,3)".

    Parameters
    ----------
    text : str
        The code description.

    Returns
    -------
    tuple
        (m, r) with 1 <= r <= m.

    Raises
    ------
    ValueError
        If the text is malformed or does not describe a Reed-Muller code.

    Example
    -------
    >>> parse_code_spec('RM(8,3)')
    (8, 3)
    """
    try:
        parsed = _CODE_SPEC.parse_string(text.strip(), parse_all=True)
    except ParseException as e:
        raise ValueError(f"Invalid code specification '{text}': expected 'm,r'") from e
    m, r = int(parsed['m']), int(parsed['r'])
    if m < 1 or r < 1 or r > m:
        raise ValueError(f"Invalid Reed-Muller parameters m={m}, r={r}: need 1 <= r <= m")
    return m, r


def parse_snr_grid(text: str) -> tuple:
    """
    Parse an Eb/N0 grid "start:stop:step" (inclusive of stop) or a single value.

    Parameters
    ----------
    text : str
        Grid description in dB, e.g. "2.0:3.0:0.25".

    Returns
    -------
    tuple of float
        The grid points in increasing order.

    Raises
    ------
    ValueError
        If the text is malformed, the step is not positive or stop < start.

    Example
    -------
    >>> parse_snr_grid('1:2:0.5')
    (1.0, 1.5, 2.0)
    """
    try:
        parsed = _SNR_GRID.parse_string(text.strip(), parse_all=True)
    except ParseException as e:
        raise ValueError(f"Invalid SNR grid '{text}': expected 'start:stop:step'") from e
    start = float(parsed['start'])
    if 'stop' not in parsed:
        return (start,)
    stop, step = float(parsed['stop']), float(parsed['step'])
    if step <= 0:
        raise ValueError(f"SNR grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"SNR grid stop {stop} lies below start {start}")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(round(start + k * step, 10) for k in range(count))


def parse_llr_text(text: str, length: int = None) -> np.ndarray:
    """
    Parse whitespace-separated real LLR values.

    Parameters
    ----------
    text : str
        File contents.
    length : int, optional
        Required number of values.

    Returns
    -------
    numpy.ndarray
        The LLR vector as float64.

    Raises
    ------
    ValueError
        On a malformed token, a non-finite value or a length mismatch.
    """
    try:
        values = _LLR_TEXT.parse_string(text.strip(), parse_all=True)
    except ParseException as e:
        raise ValueError(f"Invalid LLR text at line {e.lineno}, column {e.col}") from e
    llr = np.array(values.as_list(), dtype=np.float64)
    if not np.all(np.isfinite(llr)):
        raise ValueError("LLR text contains non-finite values")
    if length is not None and llr.size != length:
        raise ValueError(f"Expected {length} LLR values, got {llr.size}")
    return llr


def read_llr_file(path: str, length: int = None) -> np.ndarray:
    """Read an LLR vector from a text file; see parse_llr_text."""
    with open(path, encoding='utf-8') as handle:
        return parse_llr_text(handle.read(), length)
