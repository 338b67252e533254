"""Elements of A(x)A and A(x)A(x)A, leg embeddings and maps into A(x)A.

Tensors are sparse dictionaries keyed by tuples of basis indices, with no
stored zeros.  Multiplying an :class:`~rbsystems.algebra.AlgElement` into a
tensor uses the outer bimodule structure ``a (x (x) y) b = ax (x) yb``;
multiplying two tensors of the same rank is componentwise.

Leg embeddings need an identity.  For a non-unital algebra they are formed
in the unital extension ``K + A`` and the result lives there; ``lifted``
on a tensor records that this happened.
"""

from __future__ import annotations

from .algebra import AlgElement, format_terms

TENSOR_SIGN = "⊗"


def _acc(d, key, c):
    old = d.get(key)
    new = c if old is None else old + c
    if new:
        d[key] = new
    elif old is not None:
        del d[key]


def _nonzero(coeffs):
    return [(i, c) for i, c in enumerate(coeffs) if c]


class _Tensor:
    rank = 0
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs=None):
        self.algebra = algebra
        F = algebra.field
        d = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != self.rank or not all(0 <= k < algebra.dim for k in key):
                raise ValueError(f"bad tensor index {key}")
            _acc(d, key, F(c))
        self.coeffs = d

    @classmethod
    def _raw(cls, algebra, d):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.coeffs = d
        return obj

    @classmethod
    def from_terms(cls, algebra, terms):
        """From ``[(i, j[, k], c), ...]`` with 0-based indices."""
        d = {}
        F = algebra.field
        for *key, c in terms:
            if len(key) != cls.rank or not all(0 <= k < algebra.dim for k in key):
                raise ValueError(f"bad tensor index {tuple(key)}")
            _acc(d, tuple(key), F(c))
        return cls._raw(algebra, d)

    @classmethod
    def zero(cls, algebra):
        return cls._raw(algebra, {})

    @property
    def lifted(self):
        """True when the tensor lives in the unital extension of the algebra it
        was built from."""
        return getattr(self.algebra, "_is_extension", False)

    def terms(self):
        return sorted(self.coeffs.items())

    def _align(self, other):
        """Bring two tensors/elements to a common algebra, lifting to K + A
        when one side already lives there."""
        A, B = self.algebra, other.algebra
        if A is B:
            return self, other
        if not A.is_unital and A.extension is B:
            return self.lift(), other
        if not B.is_unital and B.extension is A:
            return self, _lift_any(other)
        raise ValueError("tensors belong to different algebras")

    def lift(self):
        A = self.algebra
        if A.is_unital:
            return self
        return type(self)._raw(A.extension, {tuple(k + 1 for k in key): c for key, c in self.coeffs.items()})

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        x, y = self._align(other)
        d = dict(x.coeffs)
        for key, c in y.coeffs.items():
            _acc(d, key, c)
        return type(self)._raw(x.algebra, d)

    def __neg__(self):
        return type(self)._raw(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = self.algebra.field(c)
        if not c:
            return type(self)._raw(self.algebra, {})
        return type(self)._raw(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        try:
            x, y = self._align(other)
        except ValueError:
            return False
        return x.coeffs == y.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        names = self.algebra.basis_names
        labels = ((c, TENSOR_SIGN.join(names[k] for k in key)) for key, c in self.terms())
        return format_terms(labels, self.algebra.field)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __rmul__(self, other):
        if isinstance(other, AlgElement):
            x, a = self._align(other)
            return x._left(a)
        if hasattr(other, "algebra"):
            return NotImplemented
        return self.scale(other)

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            x, a = self._align(other)
            return x._right(a)
        if type(other) is type(self):
            x, y = self._align(other)
            return x._componentwise(y)
        if hasattr(other, "algebra"):
            return NotImplemented
        return self.scale(other)

    def _left(self, a):
        """``a`` times the first leg."""
        A = self.algebra
        table = A.table
        nza = _nonzero(a.coeffs)
        d = {}
        for key, c in self.coeffs.items():
            i = key[0]
            for x, ax in nza:
                for k, s in table.get((x, i), ()):
                    _acc(d, (k,) + key[1:], ax * s * c)
        return type(self)._raw(A, d)

    def _right(self, b):
        """Last leg times ``b``."""
        A = self.algebra
        table = A.table
        nzb = _nonzero(b.coeffs)
        d = {}
        for key, c in self.coeffs.items():
            j = key[-1]
            for y, by in nzb:
                for k, s in table.get((j, y), ()):
                    _acc(d, key[:-1] + (k,), by * s * c)
        return type(self)._raw(A, d)

    def _componentwise(self, other):
        A = self.algebra
        table = A.table
        d = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                legs = [table.get(pair) for pair in zip(k1, k2)]
                if not all(legs):
                    continue
                cc = c1 * c2
                _expand(d, legs, (), cc)
        return type(self)._raw(A, d)


def _expand(d, legs, prefix, coeff):
    if not legs:
        _acc(d, prefix, coeff)
        return
    for k, s in legs[0]:
        _expand(d, legs[1:], prefix + (k,), coeff * s)


def _lift_any(x):
    if isinstance(x, AlgElement):
        return x.algebra.lift(x)
    return x.lift()


class Tensor2(_Tensor):
    """Element ``sum c_ij e_i (x) e_j`` of A(x)A."""

    rank = 2
    __slots__ = ()

    @classmethod
    def pure(cls, a, b):
        """``a (x) b`` for two elements of the same algebra."""
        if a.algebra is not b.algebra:
            raise ValueError("factors belong to different algebras")
        d = {}
        for i, x in _nonzero(a.coeffs):
            for j, y in _nonzero(b.coeffs):
                _acc(d, (i, j), x * y)
        return cls._raw(a.algebra, d)

    def flip(self):
        return Tensor2._raw(self.algebra, {(j, i): c for (i, j), c in self.coeffs.items()})


class Tensor3(_Tensor):
    """Element ``sum c_ijk e_i (x) e_j (x) e_k`` of A(x)A(x)A."""

    rank = 3
    __slots__ = ()

    @classmethod
    def pure(cls, a, b, c):
        d = {}
        for i, x in _nonzero(a.coeffs):
            for j, y in _nonzero(b.coeffs):
                for k, z in _nonzero(c.coeffs):
                    _acc(d, (i, j, k), x * y * z)
        return cls._raw(a.algebra, d)


def tensor(*elements):
    """Pure tensor of two or three algebra elements."""
    if len(elements) == 2:
        return Tensor2.pure(*elements)
    if len(elements) == 3:
        return Tensor3.pure(*elements)
    raise ValueError("only tensor powers 2 and 3 are supported")


# --------------------------------------------------------------------------
# Leg notation
# --------------------------------------------------------------------------


def leg_embed(t, placement):
    """Place ``t`` in legs ``12``, ``13`` or ``23`` with the identity in the
    remaining leg.  Non-unital algebras are first lifted to ``K + A``."""
    placement = str(placement)
    if placement not in ("12", "13", "23"):
        raise ValueError(f"placement must be 12, 13 or 23, not {placement!r}")
    t = t.lift()
    L = t.algebra
    unit = _nonzero(L.unit)
    d = {}
    for (i, j), c in t.coeffs.items():
        for u, cu in unit:
            key = {"12": (i, j, u), "13": (i, u, j), "23": (u, i, j)}[placement]
            _acc(d, key, c * cu)
    return Tensor3._raw(L, d)


def legs(t):
    """``(t12, t13, t23)``."""
    return leg_embed(t, "12"), leg_embed(t, "13"), leg_embed(t, "23")


def tensor3_mul(x, y):
    return x * y


def bimodule_act(a, t, b):
    """``a t b`` for the outer bimodule structure of A(x)A."""
    return a * t * b


def left_act(a, t):
    return a * t


def right_act(t, b):
    return t * b


def sandwich(t, a):
    """``sum c_ij e_i a e_j``."""
    A = t.algebra
    if a.algebra is not A:
        raise ValueError("element and tensor belong to different algebras")
    e = A.basis
    out = A.zero
    for (i, j), c in t.terms():
        out = out + (e[i] * a * e[j]).scale(c)
    return out


# --------------------------------------------------------------------------
# Linear maps into A(x)A
# --------------------------------------------------------------------------


class TensorMap:
    """Linear map A -> A(x)A given by the images of the basis."""

    def __init__(self, algebra, images):
        images = list(images)
        if len(images) != algebra.dim:
            raise ValueError(f"need {algebra.dim} images, got {len(images)}")
        for t in images:
            if t.algebra is not algebra:
                raise ValueError("image lives over a different algebra")
        self.algebra = algebra
        self.images = tuple(images)

    @classmethod
    def from_function(cls, algebra, f):
        return cls(algebra, [f(b) for b in algebra.basis])

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, [Tensor2.zero(algebra)] * algebra.dim)

    def __call__(self, a):
        if a.algebra is not self.algebra:
            raise ValueError("argument is not in the map's algebra")
        d = {}
        for j, c in _nonzero(a.coeffs):
            for key, v in self.images[j].coeffs.items():
                _acc(d, key, c * v)
        return Tensor2._raw(self.algebra, d)

    def __add__(self, other):
        return TensorMap(self.algebra, [x + y for x, y in zip(self.images, other.images)])

    def __sub__(self, other):
        return TensorMap(self.algebra, [x - y for x, y in zip(self.images, other.images)])

    def __neg__(self):
        return TensorMap(self.algebra, [-x for x in self.images])

    def scale(self, c):
        return TensorMap(self.algebra, [x.scale(c) for x in self.images])

    def __eq__(self, other):
        if not isinstance(other, TensorMap):
            return NotImplemented
        return self.algebra is other.algebra and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __bool__(self):
        return any(self.images)

    def __str__(self):
        names = self.algebra.basis_names
        return "; ".join(f"{names[j]} -> {t}" for j, t in enumerate(self.images))

    def __repr__(self):
        return f"TensorMap({self})"


def apply_to_leg(m, t, leg):
    """``(m (x) id)(t)`` for ``leg == 1`` or ``(id (x) m)(t)`` for ``leg == 2``."""
    if leg not in (1, 2):
        raise ValueError("leg must be 1 or 2")
    A = m.algebra
    if t.algebra is not A:
        raise ValueError("map and tensor belong to different algebras")
    d = {}
    for (i, j), c in t.coeffs.items():
        src = j if leg == 2 else i
        for (k, l), v in m.images[src].coeffs.items():
            key = (i, k, l) if leg == 2 else (k, l, j)
            _acc(d, key, c * v)
    return Tensor3._raw(A, d)


def apply_operator_to_leg(op, t, leg):
    """Apply a linear operator on A to one leg of a Tensor2 or Tensor3."""
    A = op.source
    d = {}
    for key, c in t.coeffs.items():
        src = key[leg - 1]
        for i in range(A.dim):
            v = op.matrix[i][src]
            if v:
                new = key[: leg - 1] + (i,) + key[leg:]
                _acc(d, new, c * v)
    return type(t)._raw(A, d)


def multiply_legs(t, first, second):
    """Contract two adjacent legs of a Tensor3 by the algebra product:
    ``first, second = 1, 2`` gives ``(mu (x) id)`` and ``2, 3`` gives
    ``(id (x) mu)``."""
    A = t.algebra
    table = A.table
    d = {}
    for (i, j, k), c in t.coeffs.items():
        if (first, second) == (1, 2):
            for x, s in table.get((i, j), ()):
                _acc(d, (x, k), c * s)
        elif (first, second) == (2, 3):
            for x, s in table.get((j, k), ()):
                _acc(d, (i, x), c * s)
        else:
            raise ValueError("only adjacent legs (1,2) or (2,3) can be multiplied")
    return Tensor2._raw(A, d)


def multiply(t):
    """The product map A(x)A -> A."""
    A = t.algebra
    out = [A.field.zero] * A.dim
    for (i, j), c in t.coeffs.items():
        for k, s in A.table.get((i, j), ()):
            out[k] = out[k] + c * s
    return AlgElement(A, tuple(out), _checked=True)


class Tensor2Map:
    """Linear endomorphism of A(x)A, stored by the images of ``e_i (x) e_j``."""

    def __init__(self, algebra, images):
        self.algebra = algebra
        self.images = dict(images)

    def __call__(self, t):
        d = {}
        for key, c in t.coeffs.items():
            img = self.images.get(key)
            if img is None:
                continue
            for k2, v in img.coeffs.items():
                _acc(d, k2, c * v)
        return Tensor2._raw(self.algebra, d)

    def matrix(self):
        """Dense ``dim^2 x dim^2`` matrix; ``e_i (x) e_j`` has index ``i*dim + j``."""
        n = self.algebra.dim
        F = self.algebra.field
        rows = [[F.zero] * (n * n) for _ in range(n * n)]
        for (i, j), img in self.images.items():
            for (k, l), v in img.coeffs.items():
                rows[k * n + l][i * n + j] = v
        return rows


def operator_to_tensor_maps(R, S):
    """``T(a (x) b) = R(a) (x) b + a (x) S(b)`` as an endomorphism of A(x)A."""
    A = R.source
    if S.source is not A:
        raise ValueError("R and S act on different algebras")
    e = A.basis
    Re = [R(x) for x in e]
    Se = [S(x) for x in e]
    images = {}
    for i in range(A.dim):
        for j in range(A.dim):
            images[(i, j)] = Tensor2.pure(Re[i], e[j]) + Tensor2.pure(e[i], Se[j])
    return Tensor2Map(A, images)
