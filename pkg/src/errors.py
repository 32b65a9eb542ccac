"""
Exception hierarchy for the potential lab
势论实验室的异常层次
"""


class PotentialLabError(Exception):
    """Base class for every error raised by the lab"""


class InvalidGeometry(PotentialLabError, ValueError):
    """A ball, sphere or cap violates its invariants"""


class BadRadii(PotentialLabError, ValueError):
    """Radii are out of order or outside the admissible range"""


class BadDirection(PotentialLabError, ValueError):
    """A direction vector is not a unit vector"""


class DomainViolation(PotentialLabError, ValueError):
    """A sphere, ball or probe leaves the domain of the field"""


class NotHarmonic(PotentialLabError, ValueError):
    """A polynomial failed the discrete Laplacian check"""


class NotSubharmonic(PotentialLabError, ValueError):
    """A composite field failed the sub-mean-value spot check"""


class ZeroFunction(PotentialLabError, ValueError):
    """The entire function described by the given data is identically zero"""


class UnboundedField(PotentialLabError, ValueError):
    """A field evaluator produced +inf or NaN"""


class NegativeField(PotentialLabError, ValueError):
    """A field expected to be nonnegative took a negative value"""


class NotIncreasing(PotentialLabError, ValueError):
    """A radius sequence is not strictly increasing"""


class RatioWindowInfeasible(PotentialLabError, ValueError):
    """No subsequence with consecutive ratios inside [q, Q] exists"""


class DivergentIntegral(PotentialLabError, ArithmeticError):
    """Clipped means of a field with -inf values did not stabilize"""


class DegenerateProfile(PotentialLabError, ArithmeticError):
    """A growth profile vanishes on every radius"""


class ConfigParseError(PotentialLabError, ValueError):
    """A run configuration is not a well-formed JSON document"""

    def __init__(self, message: str, line: int = None, column: int = None, path: str = None):
        self.line = line
        self.column = column
        self.path = path
        location = []
        if path:
            location.append(str(path))
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class ConfigValidationError(PotentialLabError, ValueError):
    """A run configuration is well-formed but invalid"""

    def __init__(self, key: str, message: str = None):
        self.key = key
        super().__init__(f"{key}: {message}" if message else key)
