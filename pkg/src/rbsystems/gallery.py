"""Worked examples, each rebuilt from scratch and run through every
applicable checker."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import qcalc
from .algebra import (
    Operator,
    counital_example,
    crossed_lines,
    dual_numbers,
    matrix_algebra,
    nilpotent_example,
    polynomial_model,
    truncated_poly,
)
from .covariant import (
    adjunction_maps,
    check_constant_bilinear,
    check_counital,
    check_covariant_bialgebra,
    check_covariant_module,
    check_inner_condition,
    check_inner_uniqueness,
    check_unital_bialgebra,
    check_unital_data,
    coinvariants,
    column_module,
    constant_subalgebra,
    inner_structure,
    regular_module,
    regular_quasitriangular_module,
    universal_derivation,
)
from .fields import GF, QQ
from .rbsystem import (
    RBSystem,
    check_differential_rb,
    check_operators_equal,
    check_orthogonality_criterion,
    check_rb_morphism,
    check_rb_operator,
    check_rb_system,
    check_twisted_differential_rb,
    check_twisted_rb,
    system_suite,
    systems_from_weighted,
)
from .report import Report, check_true
from .tensor import Tensor2, TensorMap
from .ybpair import (
    IdempotentFamily,
    block_projection,
    check_fs,
    check_idempotent_data,
    check_pair_orthogonality,
    check_quasi_coproduct,
    check_separated,
    check_split,
    check_unital_quasi,
    idempotent_pair,
    matrix_unit_pair,
    nilpotent_pair,
    pushforward_pair,
    rb_from_pair,
)

# --------------------------------------------------------------------------
# Rota-Baxter systems on commutative quotients
# --------------------------------------------------------------------------


def _power_operator(A, k):
    """``a -> a z^k`` on ``K[z]/<z^n>``."""
    zk = A.one
    for _ in range(k):
        zk = zk * A.e(1) if A.dim > 1 else A.zero
    return Operator.right_mult(zk)


def truncated_partitions(max_n=6):
    """All ``(p, q)`` with ``p + q = n``, ``p, q >= 0``, ``1 <= n <= max_n``."""
    return [(n, p, n - p) for n in range(1, max_n + 1) for p in range(n + 1)]


def truncated_poly_entry():
    subs = []
    for n, p, q in truncated_partitions(6):
        A = truncated_poly(n)
        R, S = _power_operator(A, p), _power_operator(A, q)
        zero = Operator.zero(A)
        subs.append(Report.combine(f"n={n} R=z^{p} S=z^{q}", [
            check_rb_system(A, R, S),
            check_operators_equal("R o S = 0", R @ S, zero),
            check_operators_equal("S o R = 0", S @ R, zero),
            check_orthogonality_criterion(A, R, S),
        ]))
    partitions = Report.combine("partitions", subs, count=len(subs))
    A = truncated_poly(4)
    suite = system_suite(RBSystem(A, _power_operator(A, 1), _power_operator(A, 3)))
    suite.name = "system suite n=4 (1,3)"
    A = truncated_poly(3)
    bad = check_orthogonality_criterion(A, _power_operator(A, 1), _power_operator(A, 1))
    non_partition = check_true("n=3 (1,1) is not a system", not bad.passed, criterion=bad.verdict)
    return Report.combine("truncated-poly", [partitions, suite, non_partition])


def crossed_lines_entry(N=6):
    A = crossed_lines(N)
    x, y = A.e(1), A.e(N + 1)
    R, S = Operator.right_mult(x), Operator.left_mult(y)
    zero = Operator.zero(A)
    return Report.combine("crossed-lines", [
        check_rb_system(A, R, S),
        check_operators_equal("R o S = 0", R @ S, zero),
        check_operators_equal("S o R = 0", S @ R, zero),
        check_orthogonality_criterion(A, R, S),
        system_suite(RBSystem(A, R, S)),
    ], N=N)


def weighted_entry():
    subs = []
    for n, lam, c in ((2, 2, -2), (2, 1, 0), (2, 3, -3)):
        A = matrix_algebra(n)
        R = Operator.identity(A).scale(A.field(c))
        op = check_rb_operator(A, R, lam)
        systems = [sys.check() for sys in systems_from_weighted(A, R, lam)]
        subs.append(Report.combine(f"M{n} R={c} id lambda={lam}", [op, *systems]))
    A = truncated_poly(3)
    R = Operator.left_mult(A.one.scale(Fraction(-1)))
    subs.append(Report.combine("K[z]/<z^3> R=-id lambda=1", [
        check_rb_operator(A, R, 1),
        *[sys.check() for sys in systems_from_weighted(A, R, 1)],
    ]))
    return Report.combine("weighted", subs)


# --------------------------------------------------------------------------
# Yang-Baxter pairs
# --------------------------------------------------------------------------


def _matrix_closed_form(A, k, l, m):
    """``R(a) = a_kk (e_11 + ... + e_mm)`` and ``S(a) = a_ll (e_{m+1,m+1} + ...)``."""
    units = A.matrix_units
    where = {u: i for i, u in enumerate(units)}
    F = A.field

    def proj(idx, block):
        def f(a):
            c = a.coeffs[where[(idx, idx)]]
            vec = [F.zero] * A.dim
            for i in block:
                vec[where[(i, i)]] = c
            return A.element(vec)
        return Operator.from_function(A, f)

    size = sum(A.blocks)
    return proj(k - 1, range(m)), proj(l - 1, range(m, size))


def _pair_checks(P, name):
    A = P.algebra
    sys = rb_from_pair(P)
    inner = inner_structure(A, P.r, P.s)
    bialg = inner.bialgebra()
    subs = [
        P.check(),
        check_quasi_coproduct(A, P.r, P.s),
        check_inner_condition(A, P.r, P.s),
        check_covariant_bialgebra(A, *inner),
        system_suite(sys),
    ]
    if A.is_unital:
        C = constant_subalgebra(A, inner.delta_r, inner.delta_s)
        subs.append(check_true("constant subalgebra is closed", C.closed, **C.flags()))
        subs.append(check_constant_bilinear(A, *inner))
        subs.append(check_covariant_module(regular_quasitriangular_module(bialg)))
    return Report.combine(name, subs), sys, bialg


def matrix_units_entry():
    m, n, k, l = 2, 2, 1, 3
    P = matrix_unit_pair(m, n, k, l)
    A = P.algebra
    report, sys, bialg = _pair_checks(P, "pair")
    R0, S0 = _matrix_closed_form(A, k, l, m)
    closed = Report.combine("closed form", [
        check_operators_equal("R(a) = a11 (e11 + e22)", sys.R, R0),
        check_operators_equal("S(a) = a33 (e33 + e44)", sys.S, S0),
    ])
    r, s = P.r, P.s
    zero = Tensor2.zero(A)
    fs = Report.combine("FS and orthogonality", [
        check_fs(A, r), check_fs(A, s), check_pair_orthogonality(A, r, s),
        check_split(A, r, s),
        check_separated(A, sys.R, sys.S),
    ])
    one_sided = Report.combine("one-sided pairs", [
        check_true("(r, 0) is a pair", _pair_ok(A, r, zero)),
        check_true("(0, r) is a pair", _pair_ok(A, zero, r)),
        check_true("(s, 0) is a pair", _pair_ok(A, s, zero)),
        check_true("(0, s) is a pair", _pair_ok(A, zero, s)),
    ])
    modules = Report.combine("modules", [
        check_covariant_module(regular_quasitriangular_module(bialg)),
        check_covariant_module(column_module(bialg)),
        check_covariant_module(regular_module(bialg)),
    ])
    f = block_projection(A, 0)
    Q = pushforward_pair(f, P)
    push = Report.combine("pushforward to first block", [
        Q.check(),
        check_rb_morphism(f, sys, rb_from_pair(Q)),
    ])
    adj = adjunction_maps(2, regular_module(bialg)).report
    uniq = check_inner_uniqueness(A, r, s)
    others = []
    for mm, nn, kk, ll in ((1, 1, 1, 2), (2, 3, 2, 5), (3, 1, 1, 4)):
        Pk = matrix_unit_pair(mm, nn, kk, ll)
        rep, _, _ = _pair_checks(Pk, f"m={mm} n={nn} k={kk} l={ll}")
        others.append(rep)
    return Report.combine("matrix-units", [report, closed, fs, one_sided, modules, push, adj, uniq, *others])


def _pair_ok(A, r, s):
    from .ybpair import check_yb_pair

    return check_yb_pair(A, r, s).passed


def nilpotent_entry():
    A = nilpotent_example()
    g, h = A.e(1), A.e(2)
    subs = []
    for label, gg, hh in (("g, h", g, h), ("g, h^2", g, A.e(3)), ("g, g", g, g)):
        P = nilpotent_pair(A, gg, hh)
        report, sys, _ = _pair_checks(P, f"pair {label}")
        R0 = Operator.from_function(A, lambda a, gg=gg, hh=hh: gg * a * hh)
        S0 = Operator.from_function(A, lambda a, gg=gg, hh=hh: hh * a * gg)
        subs.append(Report.combine(label, [
            report,
            check_operators_equal("R(a) = g a h", sys.R, R0),
            check_operators_equal("S(a) = h a g", sys.S, S0),
        ]))
    return Report.combine("nilpotent", subs)


# --------------------------------------------------------------------------
# Idempotent families
# --------------------------------------------------------------------------


def _diag(A, entries):
    units = A.matrix_units
    return A.element([A.field(entries[i]) if i == j else A.field.zero for i, j in units])


def _idempotent_checks(A, e, kappa, label):
    F = IdempotentFamily(A, e, kappa)
    data = idempotent_pair(F)
    P, R, S, Delta = data
    one = A.one
    k = F.kappa
    formula = TensorMap.from_function(
        A,
        lambda a: (Tensor2.pure(a, e) - Tensor2.pure(one, e * a)).scale(k)
        + (Tensor2.pure(a * e, one) - Tensor2.pure(e, a)).scale(1 - k)
        + Tensor2.pure(one, a),
    )
    inner = inner_structure(A, P.r, P.s)
    subs = [
        check_idempotent_data(F, data),
        check_true("Delta_e closed form", all(x == y for x, y in zip(Delta.images, formula.images))),
        check_unital_bialgebra(A, inner.delta_r, inner.delta_s, Delta),
        system_suite(RBSystem(A, R, S)),
    ]
    return Report.combine(label, subs), data, inner


def _displayed(A, kappa):
    """The two displayed operators for ``e = diag(1, 0)`` on ``M_2``."""
    k = Fraction(kappa)
    F = A.field
    # basis e11, e12, e21, e22 ~ a, b, c, d
    R = Operator.from_function(A, lambda x: A.element([x.coeffs[0], F(1 - k) * x.coeffs[1], F(k) * x.coeffs[2], F.zero]))
    S = Operator.from_function(A, lambda x: A.element([F.zero, F(-k) * x.coeffs[1], F(k - 1) * x.coeffs[2], -x.coeffs[3]]))
    return R, S


def idempotent_m2_entry():
    A = matrix_algebra(2)
    subs = []
    e = _diag(A, [1, 0])
    for kappa in (0, 1):
        rep, data, inner = _idempotent_checks(A, e, kappa, f"e = diag(1,0), kappa = {kappa}")
        R0, S0 = _displayed(A, kappa)
        bialg = inner.bialgebra()
        M = regular_quasitriangular_module(bialg)
        co = coinvariants(M)
        subs.append(Report.combine(f"kappa = {kappa}", [
            rep,
            check_operators_equal("R_e displayed", data.R, R0),
            check_operators_equal("S_e displayed", data.S, S0),
            check_true("coinvariants of m -> m r_e", co.dim == (2 if kappa == 0 else 0), dim=co.dim),
            adjunction_maps(2, M).report,
            check_covariant_module(M),
            check_covariant_module(regular_module(bialg)),
            check_covariant_module(column_module(bialg)),
        ]))
    subs.append(_trivial_idempotents(A))
    return Report.combine("idempotent-m2", subs)


def _trivial_idempotents(A):
    """``e = 0`` gives ``Delta(a) = 1 (x) a`` and ``(0, -delta_U)``; ``e = 1``
    gives ``Delta(a) = a (x) 1`` and ``(delta_U, 0)``."""
    one = A.one
    dU = universal_derivation(A)
    neg = TensorMap.from_function(A, lambda a: -dU(a))
    zero_map = TensorMap.from_function(A, lambda a: Tensor2.zero(A))
    subs = []
    for kappa in (0, 1):
        _, d0, i0 = _idempotent_checks(A, A.zero, kappa, "e = 0")
        _, d1, i1 = _idempotent_checks(A, one, kappa, "e = 1")
        subs.append(Report.combine(f"kappa = {kappa}", [
            check_true("Delta_0(a) = 1 x a", all(d0.Delta(a) == Tensor2.pure(one, a) for a in A.basis)),
            check_true("Delta_1(a) = a x 1", all(d1.Delta(a) == Tensor2.pure(a, one) for a in A.basis)),
            check_true("e = 0 derivations are (0, -delta_U)", i0.delta_r.images == zero_map.images and i0.delta_s.images == neg.images),
            check_true("e = 1 derivations are (delta_U, 0)", i1.delta_r.images == dU.images and i1.delta_s.images == zero_map.images),
        ]))
    D0 = TensorMap.from_function(A, lambda a: Tensor2.pure(one, a))
    D1 = TensorMap.from_function(A, lambda a: Tensor2.pure(a, one))
    subs.append(check_unital_bialgebra(A, zero_map, neg, D0))
    subs[-1].name = "(0, -delta_U, Delta_0)"
    subs.append(check_unital_bialgebra(A, dU, zero_map, D1))
    subs[-1].name = "(delta_U, 0, Delta_1)"
    return Report.combine("e = 0 and e = 1", subs)


def idempotent_m3_entry():
    A = matrix_algebra(3)
    subs = []
    for diag in ((1, 0, 0), (1, 1, 0), (0, 1, 0)):
        for kappa in (0, 1):
            rep, _, _ = _idempotent_checks(A, _diag(A, diag), kappa, f"e = diag{diag}, kappa = {kappa}")
            subs.append(rep)
    subs.append(_trivial_idempotents(A))
    return Report.combine("idempotent-m3", subs)


# --------------------------------------------------------------------------
# Unital data on dual numbers and the counital example
# --------------------------------------------------------------------------


def dual_delta1(A):
    """``1 -> 0``, ``z -> z (x) z``."""
    return TensorMap(A, [Tensor2.zero(A), Tensor2.from_terms(A, [(1, 1, 1)])])


def dual_units(A, b_values):
    z = A.e(1)
    one = A.one
    return [("1 x z", Tensor2.pure(one, z))] + [(f"{b} z x z", Tensor2.pure(z, z).scale(A.field(b))) for b in b_values]


def dual_case(A, u):
    d1 = dual_delta1(A)
    d2 = TensorMap.from_function(A, lambda a: d1(a) - (a * u - u * a))
    rep, Delta = check_unital_data(A, d1, d2, u)
    return rep, d1, d2, Delta


def dual_numbers_entry():
    from .search import run_search
    from . import io

    A = dual_numbers()
    z = A.e(1)
    one = A.one
    subs = []
    for label, u in dual_units(A, (0, 1, -1, Fraction(1, 2), 3)):
        rep, d1, d2, Delta = dual_case(A, u)
        C = constant_subalgebra(A, d1, d2)
        left_only = label == "1 x z"
        flags = check_true(
            "left-connected, not right-connected" if left_only else "connected",
            (C.left_connected and not C.right_connected) if left_only else C.connected,
            **C.flags(),
        )
        forms = check_true("Delta(1) = u, Delta(z) = z x z", Delta(one) == u and Delta(z) == Tensor2.pure(z, z))
        subs.append(Report.combine(f"u = {label}", [rep, flags, forms, check_constant_bilinear(A, d1, d2, Delta)]))
    _, d1, d2, _ = dual_case(A, Tensor2.pure(one, one))
    bad, _ = check_unital_data(A, d1, d2, Tensor2.pure(one, one))
    subs.append(check_true("u = 1 x 1 is rejected", not bad.passed))

    # exhaustive classification over F_5
    A5 = dual_numbers(GF(5))
    res = run_search("dual_units", A5, {"delta1": io.tensor_map_to_json(dual_delta1(A5))})
    expected = [Tensor2.pure(A5.one, A5.e(1))] + [Tensor2.pure(A5.e(1), A5.e(1)).scale(A5.field(b)) for b in range(5)]
    found = [io.tensor2_from_json(s["u"], A5) for s in res.solutions]
    subs.append(check_true(
        "F5 classification", len(found) == 6 and all(any(f == x for x in expected) for f in found),
        candidates=res.count, solutions=len(found),
    ))
    # no multiplicative counit in the left-connected case
    _, d1, d2, Delta = dual_case(A5, Tensor2.pure(A5.one, A5.e(1)))
    data = {k: io.tensor_map_to_json(v) for k, v in (("delta1", d1), ("delta2", d2), ("Delta", Delta))}
    counits = run_search("counit_functionals", A5, data)
    subs.append(check_true("no counit for u = 1 x z over F5", not counits.solutions, candidates=counits.count))
    # adjunction for a connected case
    rep, d1, d2, Delta = dual_case(A, Tensor2.pure(z, z))
    from .covariant import CovariantBialgebra

    bialg = CovariantBialgebra(A, d1, d2, Delta)
    adj = adjunction_maps(2, regular_module(bialg)).report
    subs.append(adj)
    subs.append(check_true("eta invertible for b = 1", any(s.name == "eta invertible" and s.passed for s in adj.sub_reports)))
    return Report.combine("dual-numbers", subs)


def counital_entry(N=6):
    A = counital_example(N)
    e = A.e(1)
    one = A.one
    rep, data, inner = _idempotent_checks(A, e, 1, "kappa = 1")
    Delta = data.Delta
    formula = Report.combine("coproduct formula", [
        check_true("Delta(e) = e x e", Delta(e) == Tensor2.pure(e, e)),
        check_true(
            "Delta(a^n) = a^n x e + 1 x a^n",
            all(Delta(A.e(k)) == Tensor2.pure(A.e(k), e) + Tensor2.pure(one, A.e(k)) for k in range(2, A.dim)),
        ),
    ])
    eps = [1, 1] + [0] * N
    counit = check_counital(A, inner.delta_r, inner.delta_s, Delta, eps)
    zero_eps = check_counital(A, inner.delta_r, inner.delta_s, Delta, [0] * A.dim)
    bialg = inner.bialgebra()
    return Report.combine("counital", [
        rep,
        formula,
        check_unital_quasi(A, data.pair.r),
        counit,
        check_true("eps = 0 is rejected", not zero_eps.passed),
        check_covariant_module(regular_module(bialg)),
        check_covariant_module(regular_quasitriangular_module(bialg)),
    ], N=N)


# --------------------------------------------------------------------------
# q-calculus and the classical weight-zero pair
# --------------------------------------------------------------------------


def _sample_polys():
    x = qcalc.x
    q = qcalc.Q
    polys = [x(0), x(1) + x(3), x(2) * q - x(5), x(7) + x(4) * (q * q) + x(0), x(15), x(6) - x(9) * q]
    return [(p, r) for p in polys for r in polys if p.degree + r.degree <= 30]


def jackson_entry(N=20, model_N=8):
    M = qcalc.finite_model(model_N)
    A, J, sigma, partial = M
    g = M.guard
    sys = RBSystem(A, J, sigma @ J)
    perturbed = qcalc.verify_jackson_twisted_rb(3, qcalc.sigma_operator(lambda n: qcalc.Q ** (n + 1)))
    return Report.combine("jackson", [
        qcalc.verify_jackson_twisted_rb(N),
        qcalc.check_jackson_products(N),
        qcalc.check_star_associative(N),
        qcalc.check_partial_inverse(N),
        qcalc.check_sigma_derivation(_sample_polys()),
        check_twisted_rb(A, sigma, J, guard=g),
        check_twisted_differential_rb(A, sigma, partial, J, guard=g),
        system_suite(sys, guard=g, star_guard=g),
        check_true("perturbed sigma is rejected", not perturbed.passed),
    ], N=N, model_N=model_N)


def classical_diff_entry(N=10):
    A = polynomial_model(N, QQ)
    F = A.field

    def integrate(a):
        return A.element([F.zero] + [a.coeffs[d] / (d + 1) for d in range(N)])

    def derive(a):
        return A.element([a.coeffs[d + 1] * (d + 1) for d in range(N)] + [F.zero])

    R = Operator.from_function(A, integrate)
    D = Operator.from_function(A, derive)
    I = Operator.identity(A)
    g = qcalc.degree_guard(N)
    return Report.combine("classical-diff", [
        check_differential_rb(A, R, D, 0, guard=g),
        check_twisted_differential_rb(A, I, D, R, guard=g),
        check_rb_operator(A, R, 0, guard=g),
        system_suite(RBSystem(A, R, R), guard=g, star_guard=g),
    ], N=N)


ENTRIES = {
    "truncated-poly": truncated_poly_entry,
    "crossed-lines": crossed_lines_entry,
    "weighted": weighted_entry,
    "matrix-units": matrix_units_entry,
    "nilpotent": nilpotent_entry,
    "idempotent-m2": idempotent_m2_entry,
    "idempotent-m3": idempotent_m3_entry,
    "dual-numbers": dual_numbers_entry,
    "counital": counital_entry,
    "jackson": jackson_entry,
    "classical-diff": classical_diff_entry,
}


def _run_one(name):
    return ENTRIES[name]().to_dict()


def run_gallery(names=None, workers=1):
    """Run the named entries (all by default); entries run in parallel when
    ``workers > 1`` and are reported in the fixed listing order."""
    names = list(ENTRIES) if names is None else list(names)
    unknown = [n for n in names if n not in ENTRIES]
    if unknown:
        raise KeyError(f"unknown gallery entry {unknown[0]!r}")
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            docs = list(pool.map(_run_one, names))
    else:
        docs = [_run_one(n) for n in names]
    subs = [Report.from_dict(d) for d in docs]
    return Report.combine("gallery", subs)
