"""Exception hierarchy shared by all modules."""


class MotzetaError(Exception):
    """Base class for every error raised by this package."""


class NonUnitConstantTerm(MotzetaError, ArithmeticError):
    pass


class NonIntegralCoefficient(MotzetaError, ArithmeticError):
    pass


class NegativeDimension(MotzetaError, ValueError):
    pass


class OddProduct(MotzetaError, ValueError):
    """n*d is odd; the plurigenus isomorphism needs it even (double n)."""


class SizeGuardExceeded(MotzetaError):
    """A brute-force oracle was asked for more work than its guard allows."""


class HorizonTooSmall(MotzetaError, ValueError):
    pass


class MissingRule(MotzetaError, KeyError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no Sym rule declared for {symbol!r}")

    def __str__(self):
        return self.args[0]


class UnassignedSymbol(MotzetaError, KeyError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no count assigned to symbol {symbol!r}")

    def __str__(self):
        return self.args[0]


class InputError(MotzetaError, ValueError):
    """Malformed JSON input; the message names the offending field."""
