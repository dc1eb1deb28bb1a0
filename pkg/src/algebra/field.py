#!/usr/bin/env python3
"""
Exact coefficient fields: the rationals and prime fields F_p

Wraps a sympy ground domain (QQ or GF(p)) so the rest of the code never
touches floats and never needs to know which field it is working over.
"""
import random
from fractions import Fraction
from typing import List, Optional, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

from src.utils.errors import AlgebraError


Scalar = object  # a sympy domain element (PythonMPQ / ModularInteger)

MAX_PRIME = 2 ** 31


class Field:
    """Exact field K: characteristic 0 means QQ, otherwise F_p"""

    def __init__(self, characteristic: int = 0):
        """
        Args:
            characteristic: 0 for the rationals, a prime p <= 2^31 for F_p
        """
        if characteristic == 0:
            self.K = QQ
        else:
            if characteristic > MAX_PRIME or not isprime(characteristic):
                raise AlgebraError(f"F_p needs a prime p <= 2^31, got {characteristic}")
            self.K = GF(characteristic, symmetric=False)
        self.characteristic = characteristic
        self.zero = self.K.zero
        self.one = self.K.one

    @classmethod
    def rationals(cls) -> 'Field':
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> 'Field':
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> Optional[int]:
        return self.characteristic if self.is_finite else None

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(('Field', self.characteristic))

    def __repr__(self) -> str:
        return f"Field({self.name})"

    def __call__(self, value: Union[int, str, Fraction, Scalar]) -> Scalar:
        """Convert an int, Fraction, "a/b" string or domain element into K"""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        if isinstance(value, int):
            return self.K(value)
        if self.K.of_type(value):
            return value
        return self.K.convert(value)

    def fraction(self, numerator: int, denominator: int) -> Scalar:
        if denominator == 0:
            raise AlgebraError("zero denominator")
        if self.is_finite:
            if denominator % self.characteristic == 0:
                raise AlgebraError(f"{numerator}/{denominator} is not defined in {self.name}")
            return self.K(numerator) / self.K(denominator)
        return self.K(numerator, denominator)

    def parse(self, text: str) -> Scalar:
        """Parse "3", "-2", "3/7" (or "2 mod 5" as produced by format)"""
        text = text.strip()
        if ' mod ' in text:
            value, _, modulus = text.partition(' mod ')
            if int(modulus) != self.characteristic:
                raise AlgebraError(f"scalar {text!r} does not live in {self.name}")
            text = value
        try:
            if '/' in text:
                num, _, den = text.partition('/')
                return self.fraction(int(num), int(den))
            return self.K(int(text))
        except ValueError as e:
            raise AlgebraError(f"not a scalar: {text!r}") from e

    def format(self, x: Scalar) -> str:
        """Exact string form: "3/7" over Q, "2 mod 5" over F_5"""
        if self.is_finite:
            return f"{int(x) % self.characteristic} mod {self.characteristic}"
        return str(self.K.to_sympy(x))

    def plain(self, x: Scalar) -> str:
        """Short form for source text: "3/7" over Q, "2" over F_5"""
        if self.is_finite:
            return str(self.to_int(x))
        return str(self.K.to_sympy(x))

    def to_int(self, x: Scalar) -> int:
        """Canonical representative 0..p-1 of an F_p element"""
        return int(x) % self.characteristic

    def is_zero(self, x: Scalar) -> bool:
        return x == self.zero

    def to_sympy(self, x: Scalar):
        return self.K.to_sympy(x)

    def from_sympy(self, expr) -> Scalar:
        return self.K.from_sympy(expr)

    def elements(self) -> List[Scalar]:
        """All field elements in the order 0, 1, 2, ... (finite fields only)"""
        if not self.is_finite:
            raise AlgebraError("the rationals cannot be enumerated")
        return [self.K(i) for i in range(self.characteristic)]

    def non_special_scalar(self) -> Optional[Scalar]:
        """First scalar outside {0, 1}; None over F_2"""
        if self.characteristic == 2:
            return None
        return self.K(2)

    def random_element(self, rng: random.Random, spread: int = 3) -> Scalar:
        if self.is_finite:
            return self.K(rng.randrange(self.characteristic))
        return self.K(rng.randint(-spread, spread))
