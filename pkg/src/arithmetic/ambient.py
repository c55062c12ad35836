from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..errors import EmptyDenominator
from .modular_field import inverse_mod


class AmbientArithmetic(ABC):
    """
    The field the energy functionals are evaluated in.
    Elements are plain ints for F_p and Fractions for the rationals, so they
    can be used directly as dictionary keys.
    """

    tag: str = ""

    @abstractmethod
    def canonical(self, x: Any) -> Any:
        pass

    @abstractmethod
    def add(self, x: Any, y: Any) -> Any:
        pass

    @abstractmethod
    def sub(self, x: Any, y: Any) -> Any:
        pass

    @abstractmethod
    def mul(self, x: Any, y: Any) -> Any:
        pass

    @abstractmethod
    def div(self, x: Any, y: Any) -> Any:
        pass

    def is_zero(self, x: Any) -> bool:
        return x == 0

    def sort_key(self, x: Any) -> Any:
        return x


@dataclass(frozen=True)
class PrimeField(AmbientArithmetic):
    modulus: int

    @property
    def tag(self) -> str:
        return f"prime_field({self.modulus})"

    def canonical(self, x: Any) -> int:
        return int(x) % self.modulus

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.modulus

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.modulus

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.modulus

    def div(self, x: int, y: int) -> int:
        if y % self.modulus == 0:
            raise EmptyDenominator(f"division by 0 mod {self.modulus}")
        return (x * inverse_mod(y, self.modulus)) % self.modulus


@dataclass(frozen=True)
class ExactRationals(AmbientArithmetic):

    @property
    def tag(self) -> str:
        return "exact_rational"

    def canonical(self, x: Any) -> Fraction:
        return Fraction(x)

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def sub(self, x: Fraction, y: Fraction) -> Fraction:
        return x - y

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def div(self, x: Fraction, y: Fraction) -> Fraction:
        if y == 0:
            raise EmptyDenominator("division by 0")
        return x / y

    def sort_key(self, x: Fraction):
        # canonical (numerator, denominator) order for deterministic serialization
        return (x.numerator, x.denominator)


RATIONALS = ExactRationals()
