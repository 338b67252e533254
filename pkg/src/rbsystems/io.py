"""JSON file formats.

Indices in files are 1-based; coefficients are strings in the coefficient
grammar (integers, ``a/b``, polynomials and rational functions in ``q``).

=============  ==========================================================
algebra        ``field``, ``dim``, ``basis``, ``mul`` ([i, j, k, c]), ``unit``
operator       ``matrix`` (row i, column j: coefficient of e_i in f(e_j))
element        ``coeffs``
tensor2        ``terms`` ([i, j, c])
tensor map     ``images`` (one term list per basis vector)
functional     ``functional`` (one coefficient per basis vector)
module         ``dim``, ``basis``, ``action`` (matrix per algebra basis
               vector), ``coaction`` ([k, a, c] terms per module vector)
=============  ==========================================================
"""

from __future__ import annotations

import json

from .algebra import Algebra, AlgebraMorphism, Operator
from .fields import ParseError, field_from_json, format_scalar, parse_scalar
from .tensor import Tensor2, TensorMap


class FormatError(ValueError):
    """Ill-formed input document; the message locates the problem."""


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    return loads(text, str(path))


class _Ctx:
    """Tracks the JSON path for error messages."""

    def __init__(self, source):
        self.source = source

    def fail(self, path, message):
        raise FormatError(f"{self.source}: at {path}: {message}")

    def get(self, doc, key, path="$"):
        if not isinstance(doc, dict):
            self.fail(path, "expected an object")
        if key not in doc:
            self.fail(path, f"missing field {key!r}")
        return doc[key]

    def scalar(self, value, field, path):
        if isinstance(value, int) and not isinstance(value, bool):
            value = str(value)
        if not isinstance(value, str):
            self.fail(path, "coefficient must be a string or integer")
        try:
            return parse_scalar(value, field)
        except ParseError as exc:
            self.fail(path, str(exc))

    def index(self, value, bound, path):
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= bound:
            self.fail(path, f"index must be an integer in 1..{bound}")
        return value - 1

    def listof(self, value, path, length=None):
        if not isinstance(value, list):
            self.fail(path, "expected a list")
        if length is not None and len(value) != length:
            self.fail(path, f"expected {length} entries, got {len(value)}")
        return value


# --------------------------------------------------------------------------
# Algebras
# --------------------------------------------------------------------------


def algebra_to_json(A):
    F = A.field
    doc = {
        "field": F.to_json(),
        "dim": A.dim,
        "basis": list(A.basis_names),
        "mul": [[i + 1, j + 1, k + 1, format_scalar(c, F)] for i, j, k, c in A.entries()],
    }
    if A.is_unital:
        doc["unit"] = [format_scalar(c, F) for c in A.unit]
    if A.name:
        doc["name"] = A.name
    return doc


def algebra_from_json(doc, source="<algebra>"):
    ctx = _Ctx(source)
    try:
        F = field_from_json(ctx.get(doc, "field"))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, FormatError):
            raise
        ctx.fail("$.field", str(exc))
    n = ctx.get(doc, "dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        ctx.fail("$.dim", "dimension must be a non-negative integer")
    basis = doc.get("basis")
    if basis is not None:
        ctx.listof(basis, "$.basis", n)
        if not all(isinstance(b, str) for b in basis) or len(set(basis)) != n:
            ctx.fail("$.basis", "basis names must be distinct strings")
    mul = {}
    for pos, entry in enumerate(ctx.listof(ctx.get(doc, "mul"), "$.mul")):
        path = f"$.mul[{pos}]"
        ctx.listof(entry, path, 4)
        i, j, k = (ctx.index(entry[t], n, f"{path}[{t}]") for t in range(3))
        mul.setdefault((i, j), []).append((k, ctx.scalar(entry[3], F, f"{path}[3]")))
    unit = doc.get("unit")
    if unit is not None:
        unit = [ctx.scalar(c, F, f"$.unit[{t}]") for t, c in enumerate(ctx.listof(unit, "$.unit", n))]
    try:
        return Algebra(F, n, mul, basis=basis, unit=unit, name=doc.get("name"))
    except ValueError as exc:
        ctx.fail("$", str(exc))


# --------------------------------------------------------------------------
# Linear data over a given algebra
# --------------------------------------------------------------------------


def _matrix_to_json(rows, F):
    return [[format_scalar(c, F) for c in row] for row in rows]


def operator_to_json(R):
    return {"matrix": _matrix_to_json(R.matrix, R.source.field)}


def _matrix_from_json(doc, nrows, ncols, F, ctx):
    rows = ctx.listof(ctx.get(doc, "matrix"), "$.matrix", nrows)
    return [
        [ctx.scalar(c, F, f"$.matrix[{i}][{j}]") for j, c in enumerate(ctx.listof(row, f"$.matrix[{i}]", ncols))]
        for i, row in enumerate(rows)
    ]


def operator_from_json(doc, A, source="<operator>"):
    ctx = _Ctx(source)
    return Operator(A, _matrix_from_json(doc, A.dim, A.dim, A.field, ctx))


def morphism_to_json(f):
    return {"matrix": _matrix_to_json(f.matrix, f.source.field)}


def morphism_from_json(doc, A, B, source="<morphism>"):
    ctx = _Ctx(source)
    return AlgebraMorphism(A, B, _matrix_from_json(doc, B.dim, A.dim, A.field, ctx))


def element_to_json(a):
    return {"coeffs": [format_scalar(c, a.algebra.field) for c in a.coeffs]}


def element_from_json(doc, A, source="<element>"):
    ctx = _Ctx(source)
    coeffs = ctx.listof(ctx.get(doc, "coeffs"), "$.coeffs", A.dim)
    return A.element([ctx.scalar(c, A.field, f"$.coeffs[{t}]") for t, c in enumerate(coeffs)])


def _terms_to_json(t):
    F = t.algebra.field
    return [[i + 1, j + 1, format_scalar(c, F)] for (i, j), c in t.terms()]


def _terms_from_json(terms, A, ctx, path):
    out = []
    for pos, entry in enumerate(ctx.listof(terms, path)):
        p = f"{path}[{pos}]"
        ctx.listof(entry, p, 3)
        i = ctx.index(entry[0], A.dim, f"{p}[0]")
        j = ctx.index(entry[1], A.dim, f"{p}[1]")
        out.append((i, j, ctx.scalar(entry[2], A.field, f"{p}[2]")))
    return Tensor2.from_terms(A, out)


def tensor2_to_json(t):
    return {"terms": _terms_to_json(t)}


def tensor2_from_json(doc, A, source="<tensor>"):
    ctx = _Ctx(source)
    return _terms_from_json(ctx.get(doc, "terms"), A, ctx, "$.terms")


def tensor_map_to_json(m):
    return {"images": [_terms_to_json(t) for t in m.images]}


def tensor_map_from_json(doc, A, source="<tensor map>"):
    ctx = _Ctx(source)
    images = ctx.listof(ctx.get(doc, "images"), "$.images", A.dim)
    return TensorMap(A, [_terms_from_json(t, A, ctx, f"$.images[{j}]") for j, t in enumerate(images)])


def functional_to_json(eps, F):
    return {"functional": [format_scalar(F(c), F) for c in eps]}


def functional_from_json(doc, A, source="<functional>"):
    ctx = _Ctx(source)
    vals = ctx.listof(ctx.get(doc, "functional"), "$.functional", A.dim)
    return [ctx.scalar(c, A.field, f"$.functional[{t}]") for t, c in enumerate(vals)]


def vectors_to_json(vectors, F):
    return {"basis": [[format_scalar(c, F) for c in v] for v in vectors]}


def bilinear_to_json(op):
    F = op.field
    return {
        "dim": op.dim,
        "basis": list(op.basis_names),
        "mul": [[i + 1, j + 1, k + 1, format_scalar(c, F)] for (i, j), terms in sorted(op.table.items()) for k, c in terms],
    }


def module_to_json(M):
    F = M.algebra.field
    return {
        "dim": M.dim,
        "basis": list(M.basis_names),
        "action": [_matrix_to_json(mat, F) for mat in M.action],
        "coaction": [
            [[k + 1, a + 1, format_scalar(c, F)] for (k, a), c in sorted(img.items())] for img in M.coaction
        ],
    }


def module_from_json(doc, bialgebra, source="<module>"):
    from .covariant import CovariantModule

    ctx = _Ctx(source)
    A = bialgebra.algebra
    F = A.field
    m = ctx.get(doc, "dim")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        ctx.fail("$.dim", "dimension must be a non-negative integer")
    action = []
    for i, mat in enumerate(ctx.listof(ctx.get(doc, "action"), "$.action", A.dim)):
        rows = ctx.listof(mat, f"$.action[{i}]", m)
        action.append([
            [ctx.scalar(c, F, f"$.action[{i}][{k}][{l}]") for l, c in enumerate(ctx.listof(row, f"$.action[{i}][{k}]", m))]
            for k, row in enumerate(rows)
        ])
    coaction = []
    for l, terms in enumerate(ctx.listof(ctx.get(doc, "coaction"), "$.coaction", m)):
        img = {}
        for pos, entry in enumerate(ctx.listof(terms, f"$.coaction[{l}]")):
            p = f"$.coaction[{l}][{pos}]"
            ctx.listof(entry, p, 3)
            key = (ctx.index(entry[0], m, f"{p}[0]"), ctx.index(entry[1], A.dim, f"{p}[1]"))
            img[key] = img.get(key, F.zero) + ctx.scalar(entry[2], F, f"{p}[2]")
        coaction.append(img)
    return CovariantModule(bialgebra, m, action, coaction, doc.get("basis"))


def tensor2_map_to_json(T):
    """Endomorphism of A(x)A as ``pairs``: ``[i, j, terms of T(e_i (x) e_j)]``."""
    return {
        "pairs": [[i + 1, j + 1, _terms_to_json(img)] for (i, j), img in sorted(T.images.items()) if img.coeffs]
    }
