"""Exhaustive enumeration over prime fields.

Candidates are numbered ``0 .. p^k - 1`` and decoded to coefficient vectors
with the most significant digit first, so solution lists come out in
lexicographic order.  Workers receive JSON documents (field elements do not
pickle) and return indices, which are merged in sorted order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

from . import io
from .algebra import Algebra, Operator
from .fields import GF
from .report import PASS, PreconditionError, Report

DEFAULT_CAP = 2 ** 24
TARGETS = ("idempotents", "yb_pairs", "rb_pairs", "weighted_rb", "dual_units", "counit_functionals")


class CapExceeded(ValueError):
    def __init__(self, count, cap):
        super().__init__(f"{count} candidates exceed the cap of {cap}")
        self.count = count
        self.cap = cap


def free_parameters(target, n):
    return {
        "idempotents": n,
        "yb_pairs": 2 * n * n,
        "rb_pairs": 2 * n * n,
        "weighted_rb": n * n + 1,
        "dual_units": n * n,
        "counit_functionals": n,
    }[target]


def decode(index, p, k):
    digits = [0] * k
    for pos in range(k - 1, -1, -1):
        index, digits[pos] = divmod(index, p)
    return digits


def _tensor(A, vec):
    from .tensor import Tensor2

    n = A.dim
    return Tensor2.from_terms(A, [(t // n, t % n, c) for t, c in enumerate(vec) if c])


def _operator(A, vec):
    n = A.dim
    return Operator(A, [list(vec[i * n:(i + 1) * n]) for i in range(n)])


class _Target:
    """Decoding, testing and serialising candidates for one search target."""

    def __init__(self, target, A, data):
        self.target = target
        self.A = A
        self.data = data
        self.n = A.dim
        self.k = free_parameters(target, A.dim)
        F = A.field
        self.F = F
        if target == "dual_units":
            if "delta1" not in data:
                raise PreconditionError("dual_units search needs delta1")
            self.delta1 = io.tensor_map_from_json(data["delta1"], A)
        if target == "counit_functionals":
            missing = [key for key in ("delta1", "delta2", "Delta") if key not in data]
            if missing:
                raise PreconditionError(f"counit search needs {', '.join(missing)}")
            self.delta1, self.delta2, self.Delta = (io.tensor_map_from_json(data[key], A) for key in ("delta1", "delta2", "Delta"))

    def candidate(self, index):
        vec = [self.F(d) for d in decode(index, self.F.p, self.k)]
        A, n = self.A, self.n
        t = self.target
        if t == "idempotents" or t == "counit_functionals":
            return A.element(vec) if t == "idempotents" else vec
        if t == "yb_pairs":
            return _tensor(A, vec[: n * n]), _tensor(A, vec[n * n:])
        if t == "rb_pairs":
            return _operator(A, vec[: n * n]), _operator(A, vec[n * n:])
        if t == "weighted_rb":
            return _operator(A, vec[: n * n]), vec[n * n]
        if t == "dual_units":
            return _tensor(A, vec)
        raise ValueError(t)

    def test(self, c):
        from .covariant import check_counital, check_unital_data
        from .rbsystem import check_rb_operator, check_rb_system
        from .tensor import TensorMap
        from .ybpair import yb_residuals

        A = self.A
        t = self.target
        if t == "idempotents":
            return c * c == c
        if t == "yb_pairs":
            res_r, res_s = yb_residuals(*c)
            return not res_r and not res_s
        if t == "rb_pairs":
            return check_rb_system(A, *c).passed
        if t == "weighted_rb":
            return check_rb_operator(A, *c).passed
        if t == "dual_units":
            u = c
            d1 = self.delta1
            d2 = TensorMap.from_function(A, lambda a: d1(a) - (a * u - u * a))
            return check_unital_data(A, d1, d2, u)[0].passed
        if t == "counit_functionals":
            return check_counital(A, self.delta1, self.delta2, self.Delta, c).passed
        raise ValueError(t)

    def to_json(self, c):
        t = self.target
        F = self.F
        if t == "idempotents":
            return io.element_to_json(c)
        if t == "yb_pairs":
            return {"r": io.tensor2_to_json(c[0]), "s": io.tensor2_to_json(c[1])}
        if t == "rb_pairs":
            return {"R": io.operator_to_json(c[0]), "S": io.operator_to_json(c[1])}
        if t == "weighted_rb":
            return {"R": io.operator_to_json(c[0]), "lambda": F.format(c[1])}
        if t == "dual_units":
            return {"u": io.tensor2_to_json(c)}
        return io.functional_to_json(c, F)


def _scan(payload):
    target, algebra_doc, data, start, stop = payload
    A = io.algebra_from_json(algebra_doc)
    T = _Target(target, A, data)
    return [i for i in range(start, stop) if T.test(T.candidate(i))]


class SearchResult:
    def __init__(self, target, count, indices, solutions, report):
        self.target = target
        self.count = count
        self.indices = indices
        self.solutions = solutions
        self.report = report


def run_search(target, A, data=None, cap=DEFAULT_CAP, workers=1):
    """Enumerate every candidate for ``target`` on ``A`` (over a prime field)
    and keep those passing the relevant checker."""
    if target not in TARGETS:
        raise PreconditionError(f"unknown search target {target!r}")
    F = A.field
    if not F.is_finite():
        raise PreconditionError("search needs an algebra over a prime field")
    data = data or {}
    k = free_parameters(target, A.dim)
    count = F.p ** k
    if count > cap:
        raise CapExceeded(count, cap)
    doc = io.algebra_to_json(A)
    if workers <= 1 or count < 64:
        indices = _scan((target, doc, data, 0, count))
    else:
        chunks = max(workers * 4, 1)
        step = -(-count // chunks)
        payloads = [(target, doc, data, s, min(s + step, count)) for s in range(0, count, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            indices = sorted(i for part in pool.map(_scan, payloads) for i in part)
    T = _Target(target, A, data)
    solutions = [T.to_json(T.candidate(i)) for i in indices]
    rep = Report(f"search {target}", PASS, checked=count, details={"solutions": len(indices), "candidates": count})
    return SearchResult(target, count, indices, solutions, rep)


# --------------------------------------------------------------------------
# Small algebras over prime fields
# --------------------------------------------------------------------------


def _mat_inverse(g, p):
    n = len(g)
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(g)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] % p), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], -1, p)
        m[c] = [x * inv % p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _general_linear(p, n):
    for entries in itertools.product(range(p), repeat=n * n):
        g = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        ginv = _mat_inverse(g, p)
        if ginv is not None:
            yield g, ginv


def _is_associative(c, n, p):
    """``c[i][j][k]`` = coefficient of e_k in e_i e_j."""
    for i, j, l in itertools.product(range(n), repeat=3):
        for k in range(n):
            left = sum(c[i][j][m] * c[m][l][k] for m in range(n)) % p
            right = sum(c[j][l][m] * c[i][m][k] for m in range(n)) % p
            if left != right:
                return False
    return True


def _transform(c, g, ginv, n, p):
    """Structure constants in the basis ``f_i = sum_k g[k][i] e_k``."""
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        prod = [0] * n
        for a, b in itertools.product(range(n), repeat=2):
            w = g[a][i] * g[b][j] % p
            if w:
                for k in range(n):
                    prod[k] += w * c[a][b][k]
        for k in range(n):
            out[i][j][k] = sum(ginv[k][m] * prod[m] for m in range(n)) % p
    return out


def _flat(c):
    return tuple(x for plane in c for row in plane for x in row)


def associative_structures(p, n):
    """Canonical representatives of the ``n``-dimensional associative algebras
    over ``F_p`` up to isomorphism, as flat structure-constant tuples."""
    group = list(_general_linear(p, n))
    seen = set()
    reps = []
    for flat in itertools.product(range(p), repeat=n ** 3):
        if flat in seen:
            continue
        c = [[list(flat[(i * n + j) * n:(i * n + j + 1) * n]) for j in range(n)] for i in range(n)]
        orbit = {_flat(_transform(c, g, gi, n, p)) for g, gi in group}
        seen |= orbit
        if _is_associative(c, n, p):
            reps.append(min(orbit))
    return sorted(reps)


def algebra_from_structure(flat, p, n, name=None):
    F = GF(p)
    mul = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        c = flat[(i * n + j) * n + k]
        if c:
            mul.setdefault((i, j), []).append((k, c))
    A = Algebra(F, n, mul, name=name or f"F{p}-alg{n}:{''.join(map(str, flat))}")
    for vec in F.vectors(n):
        u = A.element(vec)
        if all(u * b == b and b * u == b for b in A.basis):
            A.unit = tuple(vec)
            break
    return A


def small_algebras(p, max_dim):
    """All associative algebras of dimension ``1 .. max_dim`` over ``F_p`` up
    to isomorphism."""
    return [algebra_from_structure(s, p, n) for n in range(1, max_dim + 1) for s in associative_structures(p, n)]
