import re
import threading
from fractions import Fraction
from typing import Optional, Union

from .exceptions import Cancelled, CoefficientError

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_FORBIDDEN = re.compile(r"[,\s\"]")


def sanitize_label(label: str) -> str:
    """Sanitize a basis label so that it can be used inside "a,b" bracket keys."""
    return _FORBIDDEN.sub("_", str(label))


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """Parse an exact rational given as "p/q" or an integer.

    Floats and decimal strings are rejected, since they cannot be exact.

    Args:
        value (str | int | Fraction): The coefficient to parse

    Raises:
        CoefficientError: If the value is not an exact rational

    Returns:
        Fraction: The parsed coefficient in lowest terms
    """
    if isinstance(value, bool):
        raise CoefficientError(f"unparsable coefficient {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise CoefficientError(f"unparsable coefficient {value!r}")
    match = _RATIONAL.match(value)
    if match is None:
        raise CoefficientError(f"unparsable coefficient {value!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise CoefficientError(f"zero denominator in coefficient {value!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    """Serialize a rational exactly, as "p" or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_fraction(value) -> Fraction:
    """Convert an integer, Fraction or sympy rational number to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    # sympy Integer / Rational
    try:
        return Fraction(int(value.p), int(value.q))
    except AttributeError:
        raise TypeError(f"Cannot convert {value!r} to an exact rational")


class CancellationToken:
    """Cooperative cancellation flag shared between a caller and a computation.

    Example:

    ```python
    token = CancellationToken()
    threading.Timer(30, token.cancel).start()
    group = cohomology("leibniz", g, trivial_module(g), 2, cancel=token)
    ```
    """

    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def raise_if_cancelled(self) -> None:
        if self._event.is_set():
            raise Cancelled("computation cancelled")


def check_cancel(token: Optional[CancellationToken]) -> None:
    if token is not None:
        token.raise_if_cancelled()
