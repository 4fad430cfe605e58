from workbench.exceptions import WorkbenchError


class NotDivisible(WorkbenchError):
    """A division by l^r met a coefficient of valuation below r"""


class PrecisionExhausted(WorkbenchError):
    """Absolute precision would drop below 1"""


class BadUnit(WorkbenchError):
    """An exponent or scalar expected to be prime to l is not"""
