"""Finite-dimensional associative algebras given by structure constants.

Basis indices are 0-based internally; reports and files use 1-based indices.
An :class:`Algebra` is immutable once built.  Elements are
:class:`AlgElement` values supporting ``+``, ``-``, ``*`` (algebra product or
scalar multiple) and ``==``.  Linear maps use the column convention: column
``j`` of the matrix holds the coordinates of the image of ``e_j``.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .fields import QQ, Field
from .linalg import nullspace
from .report import FAIL, PASS, Report, check_identity


def format_terms(terms, field):
    """Render ``[(coefficient, label), ...]`` as ``2*e1 - e2``; zero as ``0``."""
    out = []
    for c, label in terms:
        if not c:
            continue
        text = field.format(c)
        sign = "+"
        if text.startswith("-") and " " not in text:
            sign, text = "-", text[1:]
        if text == "1":
            body = label
        else:
            if " " in text:
                text = f"({text})"
            body = f"{text}*{label}"
        out.append((sign, body))
    if not out:
        return "0"
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


class Algebra:
    """Associative algebra with structure constants ``e_i e_j = sum_k c_ij^k e_k``.

    ``mul`` maps ``(i, j)`` to a mapping ``k -> c`` (or an iterable of
    ``(k, c)`` pairs).  ``unit`` is an optional coefficient vector.
    Associativity is not assumed; use :func:`check_associative`.
    """

    def __init__(self, field: Field, dim: int, mul, basis=None, unit=None, name=None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.field = field
        self.dim = dim
        self.basis_names = tuple(basis) if basis is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise ValueError("number of basis names differs from the dimension")
        if len(set(self.basis_names)) != dim:
            raise ValueError("basis names must be distinct")
        table = {}
        for (i, j), terms in dict(mul).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"product index ({i + 1}, {j + 1}) out of range")
            items = terms.items() if isinstance(terms, dict) else terms
            acc = {}
            for k, c in items:
                if not 0 <= k < dim:
                    raise ValueError(f"result index {k + 1} out of range")
                acc[k] = acc.get(k, field.zero) + field(c)
            nz = tuple(sorted((k, c) for k, c in acc.items() if c))
            if nz:
                table[(i, j)] = nz
        self.table = table
        self.unit = None if unit is None else tuple(field(c) for c in unit)
        if self.unit is not None and len(self.unit) != dim:
            raise ValueError("unit vector has the wrong length")
        self.name = name or "A"
        self.blocks = None

    # ---- construction helpers -------------------------------------------

    @classmethod
    def from_entries(cls, field, dim, entries, **kw):
        """Build from ``[(i, j, k, c), ...]`` with 0-based indices."""
        mul = {}
        for i, j, k, c in entries:
            mul.setdefault((i, j), []).append((k, c))
        return cls(field, dim, mul, **kw)

    def entries(self):
        """Sorted nonzero structure constants as ``(i, j, k, c)``."""
        return [(i, j, k, c) for (i, j), terms in sorted(self.table.items()) for k, c in terms]

    # ---- elements ---------------------------------------------------------

    @cached_property
    def basis(self):
        return tuple(self.e(i) for i in range(self.dim))

    def e(self, i):
        z, o = self.field.zero, self.field.one
        return AlgElement(self, tuple(o if k == i else z for k in range(self.dim)), _checked=True)

    def __getitem__(self, name):
        return self.e(self.index(name))

    def index(self, name):
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"no basis element named {name!r}") from None

    def element(self, coeffs):
        return AlgElement(self, coeffs)

    @property
    def zero(self):
        return AlgElement(self, (self.field.zero,) * self.dim, _checked=True)

    @property
    def is_unital(self):
        return self.unit is not None

    @property
    def one(self):
        if self.unit is None:
            raise ValueError(f"algebra {self.name} has no unit")
        return AlgElement(self, self.unit, _checked=True)

    def product(self, x, y):
        """Product of two coefficient tuples."""
        zero = self.field.zero
        out = [zero] * self.dim
        nzy = [(j, b) for j, b in enumerate(y) if b]
        table = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in nzy:
                terms = table.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def basis_product(self, i, j):
        zero = self.field.zero
        out = [zero] * self.dim
        for k, c in self.table.get((i, j), ()):
            out[k] = c
        return tuple(out)

    def left_mult_matrix(self, a):
        """Matrix of ``x -> a x``."""
        cols = [self.product(a.coeffs, b.coeffs) for b in self.basis]
        return [list(r) for r in zip(*cols)] if cols else []

    def right_mult_matrix(self, a):
        """Matrix of ``x -> x a``."""
        cols = [self.product(b.coeffs, a.coeffs) for b in self.basis]
        return [list(r) for r in zip(*cols)] if cols else []

    # ---- unital extension -----------------------------------------------

    @cached_property
    def extension(self):
        return unital_extension(self)

    def leg_algebra(self):
        """Algebra hosting leg notation: ``self`` if unital, else K + self."""
        return self if self.is_unital else self.extension

    def lift(self, a):
        """Image of an element of ``self`` in :meth:`leg_algebra`."""
        if self.is_unital:
            return a
        return AlgElement(self.extension, (self.field.zero,) + tuple(a.coeffs), _checked=True)

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim}, field={self.field!r})"


class AlgElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs, _checked=False):
        self.algebra = algebra
        if _checked:
            self.coeffs = coeffs
        else:
            coeffs = tuple(algebra.field(c) for c in coeffs)
            if len(coeffs) != algebra.dim:
                raise ValueError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
            self.coeffs = coeffs

    def _same(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        self._same(other)
        return AlgElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), _checked=True)

    def __sub__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        self._same(other)
        return AlgElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), _checked=True)

    def __neg__(self):
        return AlgElement(self.algebra, tuple(-a for a in self.coeffs), _checked=True)

    def scale(self, c):
        c = self.algebra.field(c)
        return AlgElement(self.algebra, tuple(c * a for a in self.coeffs), _checked=True)

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._same(other)
            return AlgElement(self.algebra, self.algebra.product(self.coeffs, other.coeffs), _checked=True)
        if hasattr(other, "algebra"):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        if hasattr(other, "algebra"):
            return NotImplemented
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __str__(self):
        A = self.algebra
        return format_terms(zip(self.coeffs, A.basis_names), A.field)

    def __repr__(self):
        return f"AlgElement({self})"


class LinearMap:
    """Linear map ``source -> target``; ``matrix[i][j]`` is the coefficient of
    ``e_i`` in the image of ``e_j``."""

    def __init__(self, source, target, matrix):
        if source.field != target.field:
            raise ValueError("source and target must share a field")
        F = target.field
        rows = tuple(tuple(F(c) for c in row) for row in matrix)
        if len(rows) != target.dim or any(len(r) != source.dim for r in rows):
            raise ValueError(
                f"matrix must be {target.dim} x {source.dim} for a map "
                f"{source.name} -> {target.name}"
            )
        self.source = source
        self.target = target
        self.matrix = rows

    @classmethod
    def from_function(cls, source, target, f):
        cols = [f(b).coeffs for b in source.basis]
        rows = [[cols[j][i] for j in range(source.dim)] for i in range(target.dim)]
        return cls._make(source, target, rows)

    @classmethod
    def _make(cls, source, target, rows):
        return cls(source, target, rows)

    def column(self, j):
        return tuple(row[j] for row in self.matrix)

    def __call__(self, a):
        if a.algebra is not self.source:
            raise ValueError("argument is not in the source algebra")
        zero = self.target.field.zero
        out = [zero] * self.target.dim
        for j, c in enumerate(a.coeffs):
            if c:
                for i in range(self.target.dim):
                    m = self.matrix[i][j]
                    if m:
                        out[i] = out[i] + m * c
        return AlgElement(self.target, tuple(out), _checked=True)

    def image(self, j):
        return AlgElement(self.target, self.column(j), _checked=True)

    def __matmul__(self, other):
        """Composition ``self o other``."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        return self._make(other.source, self.target, _compose(self.matrix, other.matrix, self.target.field))

    def _binop(self, other, op):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("maps have different domains")
        rows = [[op(a, b) for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)]
        return self._make(self.source, self.target, rows)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return self._make(self.source, self.target, [[-a for a in r] for r in self.matrix])

    def scale(self, c):
        c = self.target.field(c)
        return self._make(self.source, self.target, [[c * a for a in r] for r in self.matrix])

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __bool__(self):
        return any(any(r) for r in self.matrix)

    def __str__(self):
        F = self.target.field
        return "[" + "; ".join(" ".join(F.format(c) for c in r) for r in self.matrix) + "]"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def _compose(a, b, field):
    n, m = len(a), len(b[0]) if b else 0
    inner = len(b)
    zero = field.zero
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = zero
            for k in range(inner):
                x = ai[k]
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


class Operator(LinearMap):
    """Linear endomorphism of a single algebra."""

    def __init__(self, algebra, matrix):
        super().__init__(algebra, algebra, matrix)

    @property
    def algebra(self):
        return self.source

    @classmethod
    def _make(cls, source, target, rows):
        if source is target:
            return Operator(source, rows)
        return LinearMap(source, target, rows)

    @classmethod
    def from_function(cls, algebra, f):
        return LinearMap.from_function.__func__(Operator, algebra, algebra, f)

    @classmethod
    def identity(cls, algebra):
        F = algebra.field
        return cls(algebra, [[F.one if i == j else F.zero for j in range(algebra.dim)] for i in range(algebra.dim)])

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, [[algebra.field.zero] * algebra.dim for _ in range(algebra.dim)])

    @classmethod
    def left_mult(cls, a):
        """``x -> a x``."""
        return cls.from_function(a.algebra, lambda x: a * x)

    @classmethod
    def right_mult(cls, a):
        """``x -> x a``."""
        return cls.from_function(a.algebra, lambda x: x * a)


class AlgebraMorphism(LinearMap):
    """Linear map intended to be multiplicative; see :func:`check_morphism`."""

    @classmethod
    def _make(cls, source, target, rows):
        return AlgebraMorphism(source, target, rows)

    @classmethod
    def identity(cls, algebra):
        return cls.from_function(algebra, algebra, lambda a: a)


# --------------------------------------------------------------------------
# Checks
# --------------------------------------------------------------------------


def _labels(A):
    return lambda t: [A.basis_names[i] for i in t]


def check_associative(A, guard=None):
    """``(e_i e_j) e_k == e_i (e_j e_k)`` on all basis triples."""
    e = A.basis
    prod = {}
    for i in range(A.dim):
        for j in range(A.dim):
            prod[i, j] = e[i] * e[j]
    return check_identity(
        "associative",
        itertools.product(range(A.dim), repeat=3),
        lambda i, j, k: prod[i, j] * e[k],
        lambda i, j, k: e[i] * prod[j, k],
        labels=_labels(A),
        guard=guard,
    )


def check_unit(A):
    """Unit law ``1 e_i = e_i 1 = e_i``; passes vacuously without a unit."""
    if not A.is_unital:
        return Report("unit", PASS, details={"unital": False})
    one, e = A.one, A.basis
    left = check_identity("left unit", ((i,) for i in range(A.dim)), lambda i: one * e[i], lambda i: e[i])
    right = check_identity("right unit", ((i,) for i in range(A.dim)), lambda i: e[i] * one, lambda i: e[i])
    return Report.combine("unit", [left, right])


def annihilators(A):
    """Bases of ``{b : bA = 0}`` and ``{b : Ab = 0}``, by exact nullspace."""
    F = A.field
    left_rows, right_rows = [], []
    for a in A.basis:
        left_rows.extend(A.right_mult_matrix(a))   # b -> b a
        right_rows.extend(A.left_mult_matrix(a))   # b -> a b
    left = [A.element(v) for v in nullspace(left_rows, A.dim, F)]
    right = [A.element(v) for v in nullspace(right_rows, A.dim, F)]
    return left, right


def is_nondegenerate(A):
    left, right = annihilators(A)
    return not left and not right


def check_nondegenerate(A):
    left, right = annihilators(A)
    ok = not left and not right
    rep = Report("nondegenerate", PASS if ok else FAIL, checked=1)
    rep.details = {"left_annihilator": [str(b) for b in left], "right_annihilator": [str(b) for b in right]}
    if not ok:
        rep.counterexample = {"annihilator": str((left or right)[0])}
    return rep


def unital_extension(A):
    """``K + A`` with the adjoined identity as basis element 0."""
    n = A.dim
    mul = {(0, 0): [(0, 1)]}
    for i in range(n):
        mul[(0, i + 1)] = [(i + 1, 1)]
        mul[(i + 1, 0)] = [(i + 1, 1)]
    for (i, j), terms in A.table.items():
        mul[(i + 1, j + 1)] = [(k + 1, c) for k, c in terms]
    unit_name = "1" if "1" not in A.basis_names else "I"
    F = A.field
    ext = Algebra(
        F, n + 1, mul,
        basis=(unit_name,) + A.basis_names,
        unit=(F.one,) + (F.zero,) * n,
        name=f"K+{A.name}",
    )
    ext._is_extension = True
    ext.base = A
    return ext


def embedding(A):
    """The algebra map ``A -> K + A``."""
    return AlgebraMorphism.from_function(A, A.extension, A.lift)


def check_morphism(f, guard=None):
    """``f(e_i e_j) == f(e_i) f(e_j)`` on all basis pairs."""
    A = f.source
    e = A.basis
    fe = [f(b) for b in e]
    return check_identity(
        "morphism",
        itertools.product(range(A.dim), repeat=2),
        lambda i, j: f(e[i] * e[j]),
        lambda i, j: fe[i] * fe[j],
        labels=_labels(A),
        guard=guard,
    )


# --------------------------------------------------------------------------
# Builtin algebras
# --------------------------------------------------------------------------


def _monomial_algebra(field, names, prod, unit_index=None, name=None):
    """Algebra whose basis products are single basis elements or zero.

    ``prod(i, j)`` returns an index or ``None``.
    """
    n = len(names)
    mul = {}
    for i in range(n):
        for j in range(n):
            k = prod(i, j)
            if k is not None:
                mul[(i, j)] = [(k, 1)]
    unit = None
    if unit_index is not None:
        unit = [1 if k == unit_index else 0 for k in range(n)]
    return Algebra(field, n, mul, basis=names, unit=unit, name=name)


def block_matrix_algebra(sizes, field=QQ):
    """Block-diagonal matrices ``M_{n1} + M_{n2} + ...`` with matrix-unit basis.

    Basis elements ``e_ij`` use global row/column indices, so the second
    block of ``M_2 + M_2`` is spanned by ``e33, e34, e43, e44``.
    """
    sizes = tuple(sizes)
    if not sizes or any(not isinstance(s, int) or s <= 0 for s in sizes):
        raise ValueError("block sizes must be positive integers")
    total = sum(sizes)
    units = []
    start = 0
    for s in sizes:
        for i in range(start, start + s):
            for j in range(start, start + s):
                units.append((i, j))
        start += s
    sep = "" if total < 10 else ","
    names = [f"e{i + 1}{sep}{j + 1}" for i, j in units]
    where = {u: k for k, u in enumerate(units)}

    def prod(a, b):
        (i, j), (k, l) = units[a], units[b]
        return where[(i, l)] if j == k else None

    A = _monomial_algebra(field, names, prod, name="M" + "+M".join(str(s) for s in sizes))
    A.unit = tuple(field.one if i == j else field.zero for i, j in units)
    A.blocks = sizes
    A.matrix_units = tuple(units)
    return A


def matrix_algebra(n, field=QQ):
    """``M_n(K)`` with basis ``e11, e12, ..., enn`` (row-major)."""
    if not isinstance(n, int) or n <= 0:
        raise ValueError("matrix size must be a positive integer")
    return block_matrix_algebra((n,), field)


def direct_sum(A, B):
    """``A + B`` with componentwise product; block matrices stay block matrices."""
    if A.field != B.field:
        raise ValueError("direct summands must share a field")
    if A.blocks and B.blocks:
        return block_matrix_algebra(A.blocks + B.blocks, A.field)
    n = A.dim
    names = list(A.basis_names) + list(B.basis_names)
    if len(set(names)) != len(names):
        names = [f"{x}_1" for x in A.basis_names] + [f"{x}_2" for x in B.basis_names]
    mul = dict(A.table)
    for (i, j), terms in B.table.items():
        mul[(i + n, j + n)] = [(k + n, c) for k, c in terms]
    unit = A.unit + B.unit if A.is_unital and B.is_unital else None
    return Algebra(A.field, n + B.dim, mul, basis=names, unit=unit, name=f"{A.name}+{B.name}")


def truncated_poly(n, field=QQ, var="z"):
    """``K[z]/<z^n>`` with basis ``1, z, ..., z^(n-1)``."""
    if not isinstance(n, int) or n <= 0:
        raise ValueError("truncation degree must be a positive integer")
    names = ["1"] + [var if d == 1 else f"{var}^{d}" for d in range(1, n)]
    return _monomial_algebra(field, names, lambda i, j: i + j if i + j < n else None, 0, f"K[{var}]/<{var}^{n}>")


def dual_numbers(field=QQ):
    return truncated_poly(2, field)


def polynomial_model(N, field=QQ, var="x"):
    """Polynomials of degree <= N with products above degree N dropped."""
    A = truncated_poly(N + 1, field, var)
    A.name = f"K[{var}]_<={N}"
    return A


def crossed_lines(N=6, field=QQ):
    """``K[x,y]/<xy, x^(N+1), y^(N+1)>``; basis ``1, x..x^N, y..y^N``."""
    if not isinstance(N, int) or N <= 0:
        raise ValueError("truncation N must be a positive integer")
    mons = [(0, 0)] + [(d, 0) for d in range(1, N + 1)] + [(0, d) for d in range(1, N + 1)]
    names = ["1"] + [f"x^{d}" if d > 1 else "x" for d in range(1, N + 1)] + [f"y^{d}" if d > 1 else "y" for d in range(1, N + 1)]
    where = {m: k for k, m in enumerate(mons)}

    def prod(i, j):
        a, b = mons[i], mons[j]
        m = (a[0] + b[0], a[1] + b[1])
        if m[0] and m[1]:
            return None
        return where.get(m)

    return _monomial_algebra(field, names, prod, 0, f"crossed_lines({N})")


def counital_example(N=6, field=QQ):
    """``K[a,e]/<e^2 - e, ae, a^(N+1)>``; basis ``1, e, a, ..., a^N``."""
    if not isinstance(N, int) or N <= 0:
        raise ValueError("truncation N must be a positive integer")
    names = ["1", "e"] + ["a" if d == 1 else f"a^{d}" for d in range(1, N + 1)]

    def prod(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        if i == 1 and j == 1:
            return 1
        if i == 1 or j == 1:
            return None
        d = (i - 1) + (j - 1)
        return d + 1 if d <= N else None

    return _monomial_algebra(field, names, prod, 0, f"counital_example({N})")


def nilpotent_example(field=QQ):
    """``K[g,h]/<g^2, gh, h^3>``; basis ``1, g, h, h^2``."""
    names = ["1", "g", "h", "h^2"]
    degs = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (0, 2)}
    where = {v: k for k, v in degs.items()}

    def prod(i, j):
        a, b = degs[i], degs[j]
        m = (a[0] + b[0], a[1] + b[1])
        if m[0] and m[1] or m[0] > 1:
            return None
        return where.get(m)

    return _monomial_algebra(field, names, prod, 0, "K[g,h]/<g^2,gh,h^3>")


def zero_product_algebra(n, field=QQ):
    """``n``-dimensional algebra with all products zero."""
    return Algebra(field, n, {}, name=f"zero({n})")


def builtin_algebra(spec, field=QQ):
    """Build a named algebra from a short text spec, e.g. ``"matrix_algebra(2)"``,
    ``"direct_sum(matrix_algebra(2),matrix_algebra(2))"``, ``"dual_numbers"``."""
    spec = spec.replace(" ", "")
    if spec.startswith("direct_sum(") and spec.endswith(")"):
        inner = spec[len("direct_sum("):-1]
        depth = 0
        for pos, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return direct_sum(builtin_algebra(inner[:pos], field), builtin_algebra(inner[pos + 1:], field))
        raise ValueError(f"direct_sum needs two arguments: {spec!r}")
    name, _, arg = spec.partition("(")
    args = [int(a) for a in arg.rstrip(")").split(",") if a] if arg else []
    makers = {
        "matrix_algebra": matrix_algebra,
        "truncated_poly": truncated_poly,
        "dual_numbers": dual_numbers,
        "crossed_lines": crossed_lines,
        "counital_example": counital_example,
        "nilpotent_example": nilpotent_example,
        "polynomial_model": polynomial_model,
    }
    if name not in makers:
        raise ValueError(f"unknown builtin algebra {name!r}")
    return makers[name](*args, field=field)
