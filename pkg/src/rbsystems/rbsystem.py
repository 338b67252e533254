"""Rota-Baxter operators and systems and the structures they induce.

All identities here are bilinear or trilinear, so they are checked on basis
pairs or triples; a failing check reports the first offending basis tuple.
Optional ``guard`` callables restrict checks to admissible basis tuples
(used by degree-truncated models); rejected tuples are counted as skipped.
"""

from __future__ import annotations

import itertools

from .algebra import Algebra, AlgebraMorphism, Operator, check_morphism, format_terms, is_nondegenerate
from .report import FAIL, PASS, PreconditionError, Report, check_identity, check_true
from .tensor import Tensor3, multiply, multiply_legs, operator_to_tensor_maps


def _pairs(A):
    return itertools.product(range(A.dim), repeat=2)


def _triples(A):
    return itertools.product(range(A.dim), repeat=3)


def _labels(A):
    return lambda t: [A.basis_names[i] for i in t]


def check_operators_equal(name, X, Y, guard=None):
    """Compare two linear maps column by column."""
    A = X.source
    e = A.basis
    return check_identity(
        name, ((j,) for j in range(A.dim)), lambda j: X(e[j]), lambda j: Y(e[j]),
        labels=_labels(A), guard=guard,
    )


class RBSystem:
    """A triple ``(A, R, S)``.  ``verified`` is set by a successful
    :meth:`check` and cached."""

    def __init__(self, algebra, R, S):
        if R.source is not algebra or S.source is not algebra:
            raise ValueError("R and S must be operators on the given algebra")
        self.algebra = algebra
        self.R = R
        self.S = S
        self._report = None

    def check(self):
        if self._report is None:
            self._report = check_rb_system(self.algebra, self.R, self.S)
        return self._report

    @property
    def verified(self):
        return self.check().passed

    def require(self, what):
        rep = self.check()
        if not rep.passed:
            raise PreconditionError(f"{what} needs a Rota-Baxter system", rep)

    def __repr__(self):
        return f"RBSystem({self.algebra.name}, R={self.R}, S={self.S})"


# --------------------------------------------------------------------------
# Rota-Baxter identities
# --------------------------------------------------------------------------


def check_rb_operator(A, R, lam, guard=None):
    """``R(a)R(b) == R(R(a)b + aR(b) + lam ab)`` on basis pairs."""
    lam = A.field(lam)
    e = A.basis
    Re = [R(x) for x in e]
    return check_identity(
        "rb_operator",
        _pairs(A),
        lambda i, j: Re[i] * Re[j],
        lambda i, j: R(Re[i] * e[j] + e[i] * Re[j] + (e[i] * e[j]).scale(lam)),
        labels=_labels(A),
        guard=guard,
    )


def check_rb_system(A, R, S, guard=None):
    """Both system identities ``R(a)R(b) = R(R(a)b + aS(b))`` and
    ``S(a)S(b) = S(R(a)b + aS(b))`` on basis pairs."""
    e = A.basis
    Re = [R(x) for x in e]
    Se = [S(x) for x in e]
    inner = {}

    def mixed(i, j):
        if (i, j) not in inner:
            inner[i, j] = Re[i] * e[j] + e[i] * Se[j]
        return inner[i, j]

    r_part = check_identity(
        "R identity", _pairs(A),
        lambda i, j: Re[i] * Re[j], lambda i, j: R(mixed(i, j)),
        labels=_labels(A), guard=guard,
    )
    s_part = check_identity(
        "S identity", _pairs(A),
        lambda i, j: Se[i] * Se[j], lambda i, j: S(mixed(i, j)),
        labels=_labels(A), guard=guard,
    )
    return Report.combine("rb_system", [r_part, s_part])


def systems_from_weighted(A, R, lam):
    """The two systems ``(R, R + lam id)`` and ``(R + lam id, R)`` attached to
    a Rota-Baxter operator of weight ``lam``."""
    rep = check_rb_operator(A, R, lam)
    if not rep.passed:
        raise PreconditionError("operator is not Rota-Baxter of the given weight", rep)
    shifted = R + Operator.identity(A).scale(lam)
    return RBSystem(A, R, shifted), RBSystem(A, shifted, R)


def check_left_linear(A, R, guard=None):
    """``R(ab) == a R(b)``."""
    e = A.basis
    return check_identity(
        "R left linear", _pairs(A),
        lambda i, j: R(e[i] * e[j]), lambda i, j: e[i] * R(e[j]),
        labels=_labels(A), guard=guard,
    )


def check_right_linear(A, S, guard=None):
    """``S(ab) == S(a) b``."""
    e = A.basis
    return check_identity(
        "S right linear", _pairs(A),
        lambda i, j: S(e[i] * e[j]), lambda i, j: S(e[i]) * e[j],
        labels=_labels(A), guard=guard,
    )


def check_orthogonality_criterion(A, R, S):
    """Orthogonality test for a left-linear ``R`` and right-linear ``S``.

    On a non-degenerate algebra the system identities reduce to
    ``R o S == S o R == 0``; otherwise to ``a R(S(b)) == 0 == S(R(a)) b``.
    The verdict is compared with :func:`check_rb_system`.  When the linearity
    hypotheses fail, the plain system check is reported instead.
    """
    left = check_left_linear(A, R)
    right = check_right_linear(A, S)
    rb = check_rb_system(A, R, S)
    if not (left.passed and right.passed):
        rep = Report("orthogonality", rb.verdict, sub_reports=[left, right, rb])
        rep.details = {"fallback": "linearity hypotheses fail; plain system check used"}
        return rep
    e = A.basis
    zero = A.zero
    if is_nondegenerate(A):
        RS, SR = R @ S, S @ R
        crit = Report.combine("composites vanish", [
            check_operators_equal("R o S = 0", RS, Operator.zero(A)),
            check_operators_equal("S o R = 0", SR, Operator.zero(A)),
        ])
        form = "nondegenerate"
    else:
        crit = Report.combine("annihilated composites", [
            check_identity("a R(S(b)) = 0", _pairs(A), lambda i, j: e[i] * R(S(e[j])), lambda i, j: zero, labels=_labels(A)),
            check_identity("S(R(a)) b = 0", _pairs(A), lambda i, j: S(R(e[i])) * e[j], lambda i, j: zero, labels=_labels(A)),
        ])
        form = "degenerate"
    agree = check_true("agrees with rb_system", crit.passed == rb.passed, criterion=crit.verdict, rb_system=rb.verdict)
    verdict = PASS if crit.passed and agree.passed else FAIL
    return Report("orthogonality", verdict, sub_reports=[left, right, crit, rb, agree], details={"form": form})


# --------------------------------------------------------------------------
# Bilinear operations, dendriform and pre-Lie structures
# --------------------------------------------------------------------------


class Bilinear:
    """Bilinear operation on ``K^dim`` given by ``table[(i, j)] = ((k, c), ...)``."""

    def __init__(self, field, dim, table, basis_names=None):
        self.field = field
        self.dim = dim
        self.table = {k: tuple((x, field(c)) for x, c in v if c) for k, v in dict(table).items()}
        self.table = {k: v for k, v in self.table.items() if v}
        self.basis_names = tuple(basis_names or (f"e{i + 1}" for i in range(dim)))

    @classmethod
    def from_function(cls, algebra, f):
        """From ``f(x, y) -> AlgElement`` evaluated on basis elements."""
        e = algebra.basis
        table = {}
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                v = f(e[i], e[j])
                table[(i, j)] = [(k, c) for k, c in enumerate(v.coeffs) if c]
        return cls(algebra.field, algebra.dim, table, algebra.basis_names)

    def __call__(self, x, y):
        zero = self.field.zero
        out = [zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.table.get((i, j), ()):
                    out[k] = out[k] + a * b * c
        return tuple(out)

    def basis(self, i):
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def as_algebra(self, name="A"):
        return Algebra(self.field, self.dim, self.table, basis=self.basis_names, name=name)

    def format(self, v):
        return format_terms(zip(v, self.basis_names), self.field)

    def __eq__(self, other):
        if not isinstance(other, Bilinear):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))


def _vadd(*vs):
    return tuple(sum(cs[1:], cs[0]) for cs in zip(*vs))


class _Vec(tuple):
    """Coefficient tuple whose ``str`` uses basis names (for reports)."""

    def __new__(cls, values, op):
        obj = super().__new__(cls, values)
        obj._op = op
        return obj

    def __str__(self):
        return self._op.format(self)


class Dendriform:
    """Two bilinear operations ``prec`` (``<``) and ``succ`` (``>``) on one space."""

    def __init__(self, prec: Bilinear, succ: Bilinear):
        if prec.dim != succ.dim or prec.field != succ.field:
            raise ValueError("operations live on different spaces")
        self.prec = prec
        self.succ = succ
        self.dim = prec.dim
        self.field = prec.field


def check_dendriform(D, guard=None):
    """The three dendriform axioms on all basis triples:

    1. ``(a<b)<c = a<(b<c + b>c)``
    2. ``a>(b<c) = (a>b)<c``
    3. ``a>(b>c) = (a<b + a>b)>c``
    """
    P, S = D.prec, D.succ
    e = [P.basis(i) for i in range(D.dim)]
    names = P.basis_names
    labels = lambda t: [names[i] for i in t]
    tr = lambda: itertools.product(range(D.dim), repeat=3)
    V = lambda v: _Vec(v, P)
    ax1 = check_identity(
        "axiom 1", tr(),
        lambda a, b, c: V(P(P(e[a], e[b]), e[c])),
        lambda a, b, c: V(P(e[a], _vadd(P(e[b], e[c]), S(e[b], e[c])))),
        labels=labels, guard=guard,
    )
    ax2 = check_identity(
        "axiom 2", tr(),
        lambda a, b, c: V(S(e[a], P(e[b], e[c]))),
        lambda a, b, c: V(P(S(e[a], e[b]), e[c])),
        labels=labels, guard=guard,
    )
    ax3 = check_identity(
        "axiom 3", tr(),
        lambda a, b, c: V(S(e[a], S(e[b], e[c]))),
        lambda a, b, c: V(S(_vadd(P(e[a], e[b]), S(e[a], e[b])), e[c])),
        labels=labels, guard=guard,
    )
    return Report.combine("dendriform", [ax1, ax2, ax3])


def dendriform_operations(A, R, S):
    """``a < b = a S(b)`` and ``a > b = R(a) b`` (no precondition)."""
    prec = Bilinear.from_function(A, lambda x, y: x * S(y))
    succ = Bilinear.from_function(A, lambda x, y: R(x) * y)
    return Dendriform(prec, succ)


def dendriform_from_system(sys):
    sys.require("dendriform_from_system")
    return dendriform_operations(sys.algebra, sys.R, sys.S)


def star_operation(A, R, S):
    """``a * b = R(a) b + a S(b)`` as an algebra on the same space."""
    op = Bilinear.from_function(A, lambda x, y: R(x) * y + x * S(y))
    return op.as_algebra(name=f"({A.name}, *)")


def star_product(sys):
    sys.require("star_product")
    return star_operation(sys.algebra, sys.R, sys.S)


def bullet_operation(A, R, S):
    """``a . b = R(a) b - b S(a)``."""
    return Bilinear.from_function(A, lambda x, y: R(x) * y - y * S(x))


def check_pre_lie(op, guard=None):
    """Left pre-Lie identity ``(a.b).c - a.(b.c) = (b.a).c - b.(a.c)``."""
    e = [op.basis(i) for i in range(op.dim)]
    names = op.basis_names
    V = lambda v: _Vec(v, op)

    def assoc(a, b, c):
        x = op(op(e[a], e[b]), e[c])
        y = op(e[a], op(e[b], e[c]))
        return tuple(p - q for p, q in zip(x, y))

    return check_identity(
        "pre_lie", itertools.product(range(op.dim), repeat=3),
        lambda a, b, c: V(assoc(a, b, c)), lambda a, b, c: V(assoc(b, a, c)),
        labels=lambda t: [names[i] for i in t], guard=guard,
    )


def bullet_product(sys):
    """The bullet operation of a verified system and its pre-Lie report."""
    sys.require("bullet_product")
    op = bullet_operation(sys.algebra, sys.R, sys.S)
    return op, check_pre_lie(op)


# --------------------------------------------------------------------------
# Weak pseudotwistors
# --------------------------------------------------------------------------


class Tensor3Map:
    """Linear endomorphism of A(x)A(x)A given by a function on basis triples;
    images are computed on demand and cached."""

    def __init__(self, algebra, basis_image):
        self.algebra = algebra
        self._f = basis_image
        self._cache = {}

    def image(self, i, j, k):
        key = (i, j, k)
        if key not in self._cache:
            self._cache[key] = self._f(i, j, k)
        return self._cache[key]

    def __call__(self, t):
        out = Tensor3.zero(self.algebra)
        for key, c in t.terms():
            out = out + self.image(*key).scale(c)
        return out

    @classmethod
    def identity(cls, A):
        e = A.basis
        return cls(A, lambda i, j, k: Tensor3.pure(e[i], e[j], e[k]))


class Pseudotwistor:
    def __init__(self, algebra, T, companion):
        self.algebra = algebra
        self.T = T
        self.companion = companion


def companion_map(A, R, S):
    """``a(x)b(x)c -> R(a)(x)R(b)(x)c + R(a)(x)b(x)S(c) + a(x)S(b)(x)S(c)``."""
    e = A.basis
    Re = [R(x) for x in e]
    Se = [S(x) for x in e]

    def f(i, j, k):
        return (
            Tensor3.pure(Re[i], Re[j], e[k])
            + Tensor3.pure(Re[i], e[j], Se[k])
            + Tensor3.pure(e[i], Se[j], Se[k])
        )

    return Tensor3Map(A, f)


def pseudotwistor_operations(A, R, S):
    return Pseudotwistor(A, operator_to_tensor_maps(R, S), companion_map(A, R, S))


def pseudotwistor_from_system(sys):
    sys.require("pseudotwistor_from_system")
    return pseudotwistor_operations(sys.algebra, sys.R, sys.S)


def _T_on_leg(T, t, leg_pair):
    """``(id (x) T)`` (leg_pair 23) or ``(T (x) id)`` (leg_pair 12) on a Tensor3."""
    out = Tensor3.zero(t.algebra)
    d = {}
    for (i, j, k), c in t.coeffs.items():
        if leg_pair == "23":
            img = T.images.get((j, k))
            if img is None:
                continue
            for (x, y), v in img.coeffs.items():
                d[(i, x, y)] = d.get((i, x, y), 0 * v) + c * v
        else:
            img = T.images.get((i, j))
            if img is None:
                continue
            for (x, y), v in img.coeffs.items():
                d[(x, y, k)] = d.get((x, y, k), 0 * v) + c * v
    return out + Tensor3(t.algebra, d)


def check_weak_pseudotwistor(A, T, companion, guard=None):
    """Both pentagons of the bow-tie diagram on all basis triples:
    ``T o (id(x)mu) o (id(x)T) == (id(x)mu) o companion`` and
    ``T o (mu(x)id) o (T(x)id) == (mu(x)id) o companion``."""
    e = A.basis
    basis3 = lambda i, j, k: Tensor3.pure(e[i], e[j], e[k])
    left = check_identity(
        "left pentagon", _triples(A),
        lambda i, j, k: T(multiply_legs(_T_on_leg(T, basis3(i, j, k), "23"), 2, 3)),
        lambda i, j, k: multiply_legs(companion.image(i, j, k), 2, 3),
        labels=_labels(A), guard=guard,
    )
    right = check_identity(
        "right pentagon", _triples(A),
        lambda i, j, k: T(multiply_legs(_T_on_leg(T, basis3(i, j, k), "12"), 1, 2)),
        lambda i, j, k: multiply_legs(companion.image(i, j, k), 1, 2),
        labels=_labels(A), guard=guard,
    )
    return Report.combine("weak_pseudotwistor", [left, right])


def check_mu_T_is_star(A, T, star, guard=None):
    """``mu o T`` agrees with the star multiplication on basis pairs."""
    se = star.basis
    return check_identity(
        "mu o T = star", _pairs(A),
        lambda i, j: multiply(T.images[(i, j)]).coeffs,
        lambda i, j: (se[i] * se[j]).coeffs,
        labels=_labels(A), guard=guard,
    )


# --------------------------------------------------------------------------
# Twisted and differential Rota-Baxter operators
# --------------------------------------------------------------------------


def _as_morphism(sigma):
    A = sigma.source
    return AlgebraMorphism(A, sigma.target, sigma.matrix)


def check_twisted_rb(A, sigma, R, guard=None):
    """``R(a)R(b) == R(R(a)b + a sigma(R(b)))``, plus the induced system
    ``(R, sigma o R)``.  Raises :class:`PreconditionError` if ``sigma`` is not
    multiplicative."""
    mult = check_morphism(_as_morphism(sigma), guard=guard)
    if not mult.passed:
        raise PreconditionError("sigma is not multiplicative", mult)
    e = A.basis
    Re = [R(x) for x in e]
    sRe = [sigma(x) for x in Re]
    twisted = check_identity(
        "twisted identity", _pairs(A),
        lambda i, j: Re[i] * Re[j],
        lambda i, j: R(Re[i] * e[j] + e[i] * sRe[j]),
        labels=_labels(A), guard=guard,
    )
    induced = check_rb_system(A, R, sigma @ R, guard=guard)
    induced.name = "induced system (R, sigma o R)"
    return Report.combine("twisted_rb", [mult, twisted, induced])


def check_differential_rb(A, R, partial, lam, guard=None):
    """Differential Rota-Baxter data of weight ``lam``; five sub-checks."""
    lam = A.field(lam)
    e = A.basis
    I = Operator.identity(A)
    pe = [partial(x) for x in e]
    leib = check_identity(
        "weighted Leibniz rule", _pairs(A),
        lambda i, j: partial(e[i] * e[j]),
        lambda i, j: pe[i] * e[j] + e[i] * pe[j] + (pe[i] * pe[j]).scale(lam),
        labels=_labels(A), guard=guard,
    )
    inverse = check_operators_equal("partial o R = id", partial @ R, I, guard=guard)
    sigma = I + partial.scale(lam)
    mult = check_morphism(_as_morphism(sigma), guard=guard)
    mult.name = "sigma multiplicative"
    shifted = check_operators_equal("sigma o R = R + lam id", sigma @ R, R + I.scale(lam), guard=guard)
    try:
        twisted = check_twisted_rb(A, sigma, R, guard=guard)
    except PreconditionError as exc:
        twisted = Report("twisted_rb", FAIL, sub_reports=[exc.report])
    return Report.combine("differential_rb", [leib, inverse, mult, shifted, twisted])


def check_twisted_differential_rb(A, sigma, partial, R, guard=None):
    """``partial`` a sigma-derivation, ``partial o R = id`` and ``R``
    sigma-twisted Rota-Baxter."""
    mult = check_morphism(_as_morphism(sigma), guard=guard)
    if not mult.passed:
        raise PreconditionError("sigma is not multiplicative", mult)
    e = A.basis
    pe = [partial(x) for x in e]
    se = [sigma(x) for x in e]
    deriv = check_identity(
        "sigma-derivation", _pairs(A),
        lambda i, j: partial(e[i] * e[j]),
        lambda i, j: pe[i] * se[j] + e[i] * pe[j],
        labels=_labels(A), guard=guard,
    )
    inverse = check_operators_equal("partial o R = id", partial @ R, Operator.identity(A), guard=guard)
    twisted = check_twisted_rb(A, sigma, R, guard=guard)
    return Report.combine("twisted_differential_rb", [deriv, inverse, twisted])


def check_rb_morphism(f, sysA, sysB):
    """``f o R_A == R_B o f`` and ``f o S_A == S_B o f`` for an algebra map."""
    mult = check_morphism(f)
    if not mult.passed:
        raise PreconditionError("f is not an algebra map", mult)
    return Report.combine("rb_morphism", [
        mult,
        check_true("f R_A = R_B f", (f @ sysA.R).matrix == (sysB.R @ f).matrix),
        check_true("f S_A = S_B f", (f @ sysA.S).matrix == (sysB.S @ f).matrix),
    ])


def system_suite(sys, guard=None, star_guard=None):
    """Every structure induced by a Rota-Baxter system, each verified."""
    A, R, S = sys.algebra, sys.R, sys.S
    rb = check_rb_system(A, R, S, guard=guard)
    dend = check_dendriform(dendriform_operations(A, R, S), guard=star_guard)
    star = star_operation(A, R, S)
    from .algebra import check_associative

    assoc = check_associative(star, guard=star_guard)
    assoc.name = "star associative"
    pre_lie = check_pre_lie(bullet_operation(A, R, S), guard=star_guard)
    tw = pseudotwistor_operations(A, R, S)
    pent = check_weak_pseudotwistor(A, tw.T, tw.companion, guard=star_guard)
    mu_t = check_mu_T_is_star(A, tw.T, star, guard=guard)
    return Report.combine("system suite", [rb, dend, assoc, pre_lie, pent, mu_t])
