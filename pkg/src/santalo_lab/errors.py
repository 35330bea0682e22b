"""Exception types and the overflow sentinel shared across modules."""


class SantaloError(Exception):
    """Base class for library errors."""


class Unbounded(SantaloError, ValueError):
    """A half-plane intersection is not bounded."""


class CenterOutside(SantaloError, ValueError):
    """The polarity center is not an interior point of the body."""


class NoConvergence(SantaloError, RuntimeError):
    """An iterative solver hit its iteration limit."""


class LineMissesBody(SantaloError, ValueError):
    """A line does not meet the interior of a body."""


class AllInfinite(SantaloError, ValueError):
    """A grid potential has no finite node."""


class ZeroAtOrigin(SantaloError, ValueError):
    """An s-concave function vanishes at the origin."""


class NotIntegrable(SantaloError, ArithmeticError):
    """The effective support of an integrand cannot be bounded."""


class EmptyLevel(SantaloError, ValueError):
    """A sublevel set used for truncation has empty interior."""


class UnsupportedDimension(SantaloError, ValueError):
    """The operation is only implemented in other dimensions."""


class InputError(SantaloError, ValueError):
    """Malformed scenario or function spec; carries per-field messages."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class _Overflow(float):
    """``inf`` tagged to mean the integrand does not decay."""

    def __new__(cls):
        return super().__new__(cls, "inf")

    def __repr__(self):
        return "OVERFLOW"

    __str__ = __repr__


OVERFLOW = _Overflow()


def is_overflow(value) -> bool:
    return isinstance(value, _Overflow) or value == float("inf")
