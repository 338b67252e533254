"""Jackson q-calculus on polynomials with coefficients in Q(q).

``q`` is a formal variable, so ``[n]_q`` never vanishes for ``n > 0``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .algebra import Operator, polynomial_model
from .fields import QQ_q, RationalFunction
from .report import Report, check_identity

Q = RationalFunction.q()
ONE = QQ_q.one
ZERO = QQ_q.zero


@lru_cache(maxsize=None)
def q_integer(n):
    """``[n]_q = (1 - q^n) / (1 - q)``."""
    if n >= 0:
        return sum((Q ** k for k in range(n)), ZERO)
    return (ONE - Q ** n) / (ONE - Q)


class QPoly:
    """Sparse polynomial in ``x`` over Q(q)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(d): QQ_q(c) for d, c in dict(coeffs or {}).items() if c}
        if any(d < 0 for d in self.coeffs):
            raise ValueError("degrees must be non-negative")

    @classmethod
    def monomial(cls, n, c=ONE):
        return cls({n: c})

    def __add__(self, other):
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            d[k] = d.get(k, ZERO) + c
        return QPoly(d)

    def __neg__(self):
        return QPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return QPoly({k: c * other for k, c in self.coeffs.items()})
        d = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                d[a + b] = d.get(a + b, ZERO) + ca * cb
        return QPoly(d)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        return max(self.coeffs, default=-1)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            c = QQ_q.format(self.coeffs[d])
            mono = "1" if d == 0 else ("x" if d == 1 else f"x^{d}")
            if d == 0:
                parts.append(c if " " not in c else f"({c})")
            elif c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}" if " " in c or "/" in c else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class QOperator:
    """Linear operator on Q(q)[x] given on monomials by
    ``x^n -> coeff(n) x^(n + shift)`` (zero when the coefficient vanishes)."""

    def __init__(self, kind, coeff, shift=0):
        self.kind = kind
        self._coeff = coeff
        self.shift = shift

    def on_monomial(self, n):
        m = n + self.shift
        if m < 0:
            return QPoly()
        return QPoly.monomial(m, self._coeff(n))

    def __call__(self, p):
        out = QPoly()
        for n, c in p.coeffs.items():
            out = out + self.on_monomial(n) * c
        return out

    def __matmul__(self, other):
        shift = self.shift + other.shift
        return QOperator(
            "composite",
            lambda n: other._coeff(n) * self._coeff(n + other.shift) if n + other.shift >= 0 else ZERO,
            shift,
        )


def J_operator():
    return QOperator("J", lambda n: ONE / q_integer(n + 1), 1)


def sigma_operator(scale=None):
    """``x^n -> q^n x^n``, or ``x^n -> scale(n) x^n``."""
    return QOperator("sigma", scale or (lambda n: Q ** n), 0)


def partial_operator():
    return QOperator("partial", lambda n: q_integer(n) if n > 0 else ZERO, -1)


def identity_operator():
    return QOperator("identity", lambda n: ONE, 0)


J = J_operator()
SIGMA = sigma_operator()
PARTIAL = partial_operator()


def apply(op, p):
    return op(p)


def x(n):
    return QPoly.monomial(n)


def verify_jackson_twisted_rb(N, sigma=None):
    """``J(x^n)J(x^m) == J(J(x^n) x^m + x^n sigma(J(x^m)))`` for ``n, m <= N``,
    plus ``sigma(J(x^n)) == q^(n+1)/[n+1]_q x^(n+1)``."""
    sig = SIGMA if sigma is None else sigma
    pairs = itertools.product(range(N + 1), repeat=2)
    twisted = check_identity(
        "twisted identity", pairs,
        lambda n, m: J(x(n)) * J(x(m)),
        lambda n, m: J(J(x(n)) * x(m) + x(n) * sig(J(x(m)))),
    )
    closed = check_identity(
        "sigma o J closed form", ((n,) for n in range(N + 1)),
        lambda n: sig(J(x(n))),
        lambda n: QPoly.monomial(n + 1, Q ** (n + 1) / q_integer(n + 1)),
    )
    return Report.combine("jackson_twisted_rb", [twisted, closed], N=N)


def star(n, m):
    """``x^n * x^m = J(x^n) x^m + x^n sigma(J(x^m))``."""
    return J(x(n)) * x(m) + x(n) * SIGMA(J(x(m)))


def bullet(n, m):
    """``x^n . x^m = J(x^n) x^m - x^m sigma(J(x^n))``."""
    return J(x(n)) * x(m) - x(m) * SIGMA(J(x(n)))


def star_closed_form(n, m):
    return QPoly.monomial(n + m + 1, q_integer(m + n + 2) / (q_integer(m + 1) * q_integer(n + 1)))


def bullet_closed_form(n, m):
    return QPoly.monomial(n + m + 1, ONE - Q)


def jackson_products(n, m):
    """``(star, bullet)`` of two monomials, computed from the operators."""
    return star(n, m), bullet(n, m)


def check_jackson_products(N):
    pairs = lambda: itertools.product(range(N + 1), repeat=2)
    return Report.combine("jackson_products", [
        check_identity("star closed form", pairs(), star, star_closed_form),
        check_identity("bullet closed form", pairs(), bullet, bullet_closed_form),
    ])


def check_star_associative(bound):
    """``(x^a * x^b) * x^c == x^a * (x^b * x^c)`` for ``a + b + c + 2 <= bound``."""
    cache = {}

    def st(n, m):
        if (n, m) not in cache:
            cache[n, m] = star(n, m)
        return cache[n, m]

    def left(a, b, c):
        p = st(a, b)
        return sum((st(d, c) * k for d, k in p.coeffs.items()), QPoly())

    def right(a, b, c):
        p = st(b, c)
        return sum((st(a, d) * k for d, k in p.coeffs.items()), QPoly())

    triples = itertools.product(range(bound + 1), repeat=3)
    return check_identity(
        "star associative", triples, left, right,
        guard=lambda t: sum(t) + 2 <= bound,
    )


def check_partial_inverse(N):
    """``partial(J(x^n)) == x^n`` for ``n <= N``."""
    return check_identity("partial o J = id", ((n,) for n in range(N + 1)), lambda n: PARTIAL(J(x(n))), x)


def check_sigma_derivation(polys):
    """``partial(pq) == partial(p) sigma(q) + p partial(q)`` on given pairs."""
    return check_identity(
        "sigma-derivation", polys,
        lambda p, r: PARTIAL(p * r),
        lambda p, r: PARTIAL(p) * SIGMA(r) + p * PARTIAL(r),
    )


# --------------------------------------------------------------------------
# Degree-truncated model for the generic checkers
# --------------------------------------------------------------------------


def degree_guard(N):
    """Admit basis tuples whose untruncated results stay within degree ``N``:
    ``sum(degrees) + len(tuple) <= N``."""
    return lambda t: sum(t) + len(t) <= N


def _truncated(A, op, N):
    def f(a):
        p = QPoly({d: c for d, c in enumerate(a.coeffs) if c})
        img = op(p)
        return A.element([img.coeffs.get(d, ZERO) for d in range(N + 1)])

    return Operator.from_function(A, f)


class FiniteModel:
    def __init__(self, N):
        if N < 1:
            raise ValueError("finite model needs N >= 1")
        self.N = N
        self.algebra = A = polynomial_model(N, QQ_q)
        self.J = _truncated(A, J, N)
        self.sigma = _truncated(A, SIGMA, N)
        self.partial = _truncated(A, PARTIAL, N)
        self.guard = degree_guard(N)

    def __iter__(self):
        return iter((self.algebra, self.J, self.sigma, self.partial))


def finite_model(N):
    return FiniteModel(N)
