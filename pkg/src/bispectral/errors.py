"""Exception hierarchy shared by every module of the package."""


class BispectralError(Exception):
    """Base class for all errors raised by :mod:`bispectral`."""


class MalformedInput(BispectralError, ValueError):
    """Input data (JSON, rational literals, eigendata) is not well formed."""


class DegreeBound(BispectralError, ValueError):
    """Coefficient ``a_m`` has degree larger than ``m``."""

    def __init__(self, m, degree=None):
        self.m = m
        self.degree = degree
        msg = f"deg(a_{m}) must be <= {m}"
        if degree is not None:
            msg += f", got {degree}"
        super().__init__(msg)


class NonconstantZeroTerm(BispectralError, ValueError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"a_0 must be constant, got degree {degree}")


class EmptyOperator(BispectralError, ValueError):
    def __init__(self):
        super().__init__("operator has no nonzero coefficient a_1..a_N")


class ParseError(BispectralError, ValueError):
    def __init__(self, position, expected, text=None):
        self.position = position
        self.expected = expected
        self.text = text
        msg = f"at position {position}: expected {expected}"
        if text is not None:
            msg += f"\n  {text}\n  {' ' * position}^"
        super().__init__(msg)


class DegenerateSpectrum(BispectralError, ArithmeticError):
    """Two eigenvalues ``lambda_n == lambda_m`` collide."""

    def __init__(self, n, m, value=None):
        self.n = n
        self.m = m
        self.value = value
        super().__init__(f"eigenvalues collide: lambda_{n} == lambda_{m}"
                         + (f" == {value}" if value is not None else ""))

    @property
    def pair(self):
        return (self.n, self.m)


class InsufficientRows(BispectralError, IndexError):
    def __init__(self, needed, available):
        self.needed = needed
        self.available = available
        super().__init__(f"need rows 0..{needed}, only 0..{available} available")


class NoTruncationFound(BispectralError):
    """No order ``N <= N_bound`` realizes the eigendata on the computed window."""

    def __init__(self, N_bound, evidence):
        self.N_bound = N_bound
        self.evidence = evidence
        super().__init__(f"no operator of order <= {N_bound} fits the eigendata; "
                         f"first violations: {evidence[:3]}")


class VerificationFailed(BispectralError):
    def __init__(self, n, detail=""):
        self.n = n
        super().__init__(f"L P_{n} != lambda_{n} P_{n}" + (f" ({detail})" if detail else ""))
