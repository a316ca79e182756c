"""Exact base fields: the rationals and small prime fields.

Elements are sympy ground-domain elements (gmpy2 ``mpq`` for QQ, modular
integers for GF(p)) so that the sparse elimination routines of
``sympy.polys.matrices`` can be used on them directly.
"""
from __future__ import annotations

from fractions import Fraction

from sympy import GF, QQ, isprime

from .errors import ParseError


class Field:
    """Either ``Field()`` for Q or ``Field(p)`` for the prime field F_p."""

    __slots__ = ("char", "domain", "zero", "one")

    def __init__(self, p: int | None = None):
        if p in (None, 0):
            self.char = 0
            self.domain = QQ
        else:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            self.char = int(p)
            self.domain = GF(p, symmetric=False)
        self.zero = self.domain.zero
        self.one = self.domain.one

    @classmethod
    def parse(cls, text: str) -> Field:
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls()
        if text[:1] == "F" and text[1:].isdigit():
            return cls(int(text[1:]))
        raise ParseError(f"unknown field {text!r}; expected Q or F<p>")

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return f"Field({self.name})"

    def __call__(self, x):
        """Convert an int, Fraction, ``"p/q"`` string or domain element."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if self.char == 0:
                return QQ(x.numerator, x.denominator)
            return self.domain(x.numerator) / self.domain(x.denominator)
        if self.char == 0:
            if isinstance(x, int):
                return QQ(x)
            return QQ.convert(x)
        return self.domain(int(x))

    def to_fraction(self, x) -> Fraction:
        if self.char == 0:
            return Fraction(int(x.numerator), int(x.denominator))
        return Fraction(int(x))

    def format(self, x) -> str:
        return fraction_str(self.to_fraction(x))


def fraction_str(q: Fraction | int) -> str:
    """Serialise a rational as ``p/q``; integers keep an explicit ``/1``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


QQ_FIELD = Field()
