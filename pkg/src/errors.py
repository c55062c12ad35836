# Exception hierarchy shared by every module of the lab

from typing import Optional


class SumProductError(ValueError):
    """Base class for all errors raised by the lab."""


# =============================================================================
# ARITHMETIC
# =============================================================================

class NotPrime(SumProductError):
    pass

class ZeroInverse(SumProductError):
    pass

class NotADivisor(SumProductError):
    pass


# =============================================================================
# SETS AND AMBIENTS
# =============================================================================

class ModulusMismatch(SumProductError):
    def __init__(self, left: int, right: int):
        super().__init__(f"moduli differ: {left} != {right}")
        self.left = left
        self.right = right

class AmbientMismatch(SumProductError):
    pass

class EmptyDenominator(SumProductError):
    pass

class TooSmall(SumProductError):
    pass

class ZeroRep(SumProductError):
    pass

class BadShift(SumProductError):
    pass

class BadRatio(SumProductError):
    pass

class DegenerateInput(SumProductError):
    pass

class NotInjectiveOnA(SumProductError):
    pass

class OutsidePhiDomain(SumProductError):
    pass


# =============================================================================
# ENGINE AND HARNESS
# =============================================================================

class BudgetExceeded(SumProductError):
    def __init__(self, estimated: int, budget: int):
        super().__init__(f"enumeration of {estimated} tuples exceeds the budget of {budget}")
        self.estimated = estimated
        self.budget = budget

class UnknownCheck(SumProductError):
    def __init__(self, check_id: str):
        super().__init__(f"unknown check id: {check_id}")
        self.check_id = check_id

class MalformedParams(SumProductError):
    def __init__(self, field: str, reason: Optional[str] = None):
        message = f"malformed field '{field}'"
        if reason:
            message += f": {reason}"
        super().__init__(message)
        self.field = field

class NoAdmissibleInstances(SumProductError):
    pass
