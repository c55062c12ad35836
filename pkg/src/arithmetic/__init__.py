from .modular_field import (
    Prime, FieldElement, invert, inverse_mod, primitive_root, divisors,
    is_prime, factorize, multiplicative_order,
)
from .ambient import AmbientArithmetic, PrimeField, ExactRationals, RATIONALS

__all__ = [
    'Prime', 'FieldElement', 'invert', 'inverse_mod', 'primitive_root', 'divisors',
    'is_prime', 'factorize', 'multiplicative_order',
    'AmbientArithmetic', 'PrimeField', 'ExactRationals', 'RATIONALS',
]
