"""Exception types shared across the package."""


class QSeriesError(ArithmeticError):
    pass


class ZeroLeadingTerm(QSeriesError):
    """Raised when inverting a series that is zero to its known precision."""


class InsufficientPrecision(QSeriesError):
    def __init__(self, exponent, prec):
        super().__init__(f"coefficient at q^{exponent} requested but series known only below q^{prec}")
        self.exponent = exponent
        self.prec = prec


class FractionalSignSubstitution(QSeriesError):
    pass


class NonIntegralCoefficient(QSeriesError):
    def __init__(self, exponent, value):
        super().__init__(f"coefficient {value} at q^{exponent} is not an integer")
        self.exponent = exponent
        self.value = value


class DivisionByZeroFactor(QSeriesError):
    """A Pochhammer factor (1 - a q^j) vanished identically."""


class NonConvergentProduct(QSeriesError):
    pass


class NonConvergentSum(QSeriesError):
    pass


class UnknownIdentity(KeyError):
    pass


class SpecializationViolatesSideConditions(ValueError):
    pass
