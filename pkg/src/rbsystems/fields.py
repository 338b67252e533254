"""Exact coefficient fields: the rationals, rational functions in ``q``, and
prime fields.

Field elements are ordinary Python objects supporting ``+ - * /`` and ``==``:

* ``Rationals`` uses :class:`fractions.Fraction`;
* ``RationalFunctionsInQ`` uses :class:`RationalFunction`, a reduced quotient
  of two ``flint.fmpq_poly`` with a monic denominator;
* ``PrimeField`` uses ``flint.nmod``.

A :class:`Field` object knows how to coerce, parse and print its elements.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly, nmod


class ParseError(ValueError):
    """Malformed coefficient text; ``pos`` is the 0-based character offset."""

    def __init__(self, message, text="", pos=None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)


# --------------------------------------------------------------------------
# Rational functions in q
# --------------------------------------------------------------------------


def _poly_key(p):
    return tuple(str(c) for c in p.coeffs())


class RationalFunction:
    """An element of Q(q), kept as ``numer/denom`` with coprime parts and a
    monic denominator, so equal values have equal representations."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=None):
        numer = _as_poly(numer)
        denom = fmpq_poly([1]) if denom is None else _as_poly(denom)
        if denom.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if numer.is_zero():
            self.numer, self.denom = fmpq_poly([]), fmpq_poly([1])
            return
        if denom.degree() > 0:
            g = numer.gcd(denom)
            if g.degree() > 0:
                numer = numer // g
                denom = denom // g
        lead = denom.coeffs()[-1]
        if lead != 1:
            numer = numer / lead
            denom = denom / lead
        self.numer, self.denom = numer, denom

    @classmethod
    def _raw(cls, numer, denom):
        obj = cls.__new__(cls)
        obj.numer, obj.denom = numer, denom
        return obj

    @classmethod
    def q(cls):
        return cls._raw(fmpq_poly([0, 1]), fmpq_poly([1]))

    def is_polynomial(self):
        return self.denom.degree() == 0

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, fmpq, fmpq_poly)):
            return RationalFunction._raw(_as_poly(other), fmpq_poly([1]))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.denom == other.denom:
            return RationalFunction(self.numer + other.numer, self.denom)
        return RationalFunction(
            self.numer * other.denom + other.numer * self.denom,
            self.denom * other.denom,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.numer, self.denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_polynomial() and other.is_polynomial():
            return RationalFunction._raw(self.numer * other.numer, fmpq_poly([1]))
        return RationalFunction(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def inverse(self):
        if self.numer.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.denom, self.numer)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.numer**n, self.denom**n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        return hash((_poly_key(self.numer), _poly_key(self.denom)))

    def __bool__(self):
        return not self.numer.is_zero()

    def __repr__(self):
        return f"RationalFunction({format_rational_function(self)!r})"

    def __str__(self):
        return format_rational_function(self)


def _as_poly(x):
    if isinstance(x, fmpq_poly):
        return x
    if isinstance(x, Fraction):
        return fmpq_poly([fmpq(x.numerator, x.denominator)])
    return fmpq_poly([x])


def _format_poly(p, var="q"):
    coeffs = p.coeffs()
    if not coeffs:
        return "0"
    pieces = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = Fraction(int(coeffs[deg].p), int(coeffs[deg].q))
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _needs_parens(p):
    coeffs = [c for c in p.coeffs() if c != 0]
    if len(coeffs) > 1:
        return True
    c = p.coeffs()[-1]
    return c.q != 1 and p.degree() > 0


def format_rational_function(x):
    num = _format_poly(x.numer)
    if x.is_polynomial():
        return num
    den = _format_poly(x.denom)
    if _needs_parens(x.numer) or x.numer.degree() == 0 and x.numer.coeffs()[0].q != 1:
        num = f"({num})"
    if len(x.denom.coeffs()) > 1 or x.denom.degree() > 0:
        den = f"({den})"
    return f"{num}/{den}"


# --------------------------------------------------------------------------
# Fields
# --------------------------------------------------------------------------


class Field:
    """Base class for the three supported coefficient fields."""

    kind = ""

    def __call__(self, value):
        """Coerce an int, Fraction, string or native element into the field."""
        if isinstance(value, str):
            return self.parse(value)
        return self._coerce(value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text):
        return _Parser(text, self).parse()

    def format(self, x):
        return str(x)

    def is_finite(self):
        return False

    def to_json(self):
        return {"kind": self.kind}

    def __eq__(self, other):
        return type(self) is type(other) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(tuple(sorted(self.to_json().items())))

    def __repr__(self):
        return f"{type(self).__name__}()"


class Rationals(Field):
    kind = "Rationals"

    def _coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, RationalFunction) and value.is_polynomial() and value.numer.degree() <= 0:
            c = value.numer.coeffs()[0] if value else fmpq(0)
            return Fraction(int(c.p), int(c.q))
        raise TypeError(f"cannot coerce {value!r} into the rationals")

    def format(self, x):
        return str(x)


class RationalFunctionsInQ(Field):
    kind = "RationalFunctionsInQ"

    def _coerce(self, value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, Fraction)):
            return RationalFunction(value)
        raise TypeError(f"cannot coerce {value!r} into Q(q)")

    @property
    def q(self):
        return RationalFunction.q()


class PrimeField(Field):
    kind = "PrimeField"

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"PrimeField modulus must be prime, got {p!r}")
        self.p = p

    def _coerce(self, value):
        if isinstance(value, nmod):
            if value.modulus() != self.p:
                raise TypeError(f"residue mod {value.modulus()} is not in GF({self.p})")
            return value
        if isinstance(value, int):
            return nmod(value, self.p)
        if isinstance(value, Fraction):
            return nmod(value.numerator, self.p) / nmod(value.denominator, self.p)
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    def format(self, x):
        return str(int(x))

    def is_finite(self):
        return True

    def elements(self):
        """All field elements in the order 0, 1, ..., p-1."""
        return [nmod(v, self.p) for v in range(self.p)]

    def vectors(self, length):
        """Every vector of the given length, in lexicographic order."""
        return itertools.product(self.elements(), repeat=length)

    def to_json(self):
        return {"kind": self.kind, "p": self.p}

    def __repr__(self):
        return f"PrimeField({self.p})"


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = Rationals()
QQ_q = RationalFunctionsInQ()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_json(doc):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("field must be an object with a 'kind' entry")
    kind = doc["kind"]
    if kind == "Rationals":
        return QQ
    if kind == "RationalFunctionsInQ":
        return QQ_q
    if kind == "PrimeField":
        if "p" not in doc:
            raise ValueError("PrimeField needs a modulus 'p'")
        return GF(int(doc["p"]))
    raise ValueError(f"unknown field kind {kind!r}")


def parse_scalar(text, field):
    """Parse coefficient text into the canonical element of ``field``."""
    return field.parse(text)


def format_scalar(x, field):
    return field.format(x)


# --------------------------------------------------------------------------
# Coefficient grammar
#
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := ('-'|'+') unary | power
#   power  := atom ('^' ['-'] INT)?
#   atom   := INT | 'q' | '(' expr ')'
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text, field):
        if not isinstance(text, str):
            raise ParseError(f"coefficient must be a string, got {type(text).__name__}")
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, message, pos=None):
        return ParseError(message, self.text, self.pos if pos is None else pos)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        if not self.text.strip():
            raise self.error("empty coefficient")
        value = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise self.error("division by zero", at)
                value = value / rhs
        return value

    def unary(self):
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.unary()
        if c == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            at = self.pos
            n = self.integer()
            if neg:
                if not base:
                    raise self.error("negative power of zero", at)
                return (self.field.one / base) ** n
            return base**n
        return base

    def integer(self):
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def atom(self):
        c = self.peek()
        if c.isdigit():
            return self.field(self.integer())
        if c == "q":
            if not isinstance(self.field, RationalFunctionsInQ):
                raise self.error(f"symbol 'q' is not allowed over {self.field.kind}")
            self.pos += 1
            return self.field.q
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return value
        if not c:
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {c!r}")
