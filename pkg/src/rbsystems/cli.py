"""Command-line interface.

Every command prints one JSON report on standard output and exits with 0
(pass), 1 (fail) or 2 (bad input or violated precondition).  Derived objects
are written only under ``--out``; without it they are embedded in the report.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io, qcalc
from .algebra import annihilators, builtin_algebra, check_associative, check_morphism
from .covariant import (
    CovariantBialgebra,
    check_coassociative,
    check_counital,
    check_covariant_bialgebra,
    check_covariant_derivation,
    check_covariant_module,
    check_derivation,
    check_inner_condition,
    check_unital_bialgebra,
    check_unital_data,
    coinvariants,
    inner_structure,
)
from .fields import GF, QQ, QQ_q, parse_scalar, ParseError
from .gallery import ENTRIES, run_gallery
from .rbsystem import (
    RBSystem,
    bullet_operation,
    check_differential_rb,
    check_dendriform,
    check_mu_T_is_star,
    check_orthogonality_criterion,
    check_pre_lie,
    check_rb_operator,
    check_rb_system,
    check_twisted_differential_rb,
    check_twisted_rb,
    check_weak_pseudotwistor,
    dendriform_operations,
    pseudotwistor_operations,
    star_operation,
    systems_from_weighted,
)
from .report import FAIL, PASS, PreconditionError, Report, check_true, error_report
from .search import DEFAULT_CAP, TARGETS, CapExceeded, run_search
from .ybpair import (
    IdempotentFamily,
    YBPair,
    check_fs,
    check_idempotent_data,
    check_pair_orthogonality,
    check_quasi_coproduct,
    check_split,
    check_unital_quasi,
    check_yb_pair,
    idempotent_pair,
    pushforward_pair,
    rb_operators_from_pair,
)
from .rbsystem import check_rb_morphism

CHECKS = (
    "associative", "nondegenerate", "morphism", "rb-operator", "rb-system", "orthogonality",
    "dendriform", "pre-lie", "pseudotwistor", "twisted-rb", "diff-rb", "twisted-diff-rb",
    "yb-pair", "fs", "split", "pair-orthogonality", "unital-quasi", "quasi-coproduct",
    "derivation", "covariant-derivation", "coassociative", "covariant-bialgebra",
    "unital-data", "unital-bialgebra", "counital", "inner", "covariant-module",
    "coinvariants", "jackson",
)
DERIVES = (
    "rb-from-pair", "dendriform", "star", "bullet", "pseudotwistor", "inner",
    "idempotent-family", "pushforward", "weighted-systems", "coinvariants",
)
FIELDS = {"QQ": QQ, "QQ(q)": QQ_q}


class InputError(Exception):
    """Missing or unusable command-line input."""


# --------------------------------------------------------------------------
# Loading inputs
# --------------------------------------------------------------------------


def _field(text):
    if text in FIELDS:
        return FIELDS[text]
    if text.startswith("GF(") and text.endswith(")"):
        return GF(int(text[3:-1]))
    raise InputError(f"unknown field {text!r} (use QQ, QQ(q) or GF(p))")


class Inputs:
    """Lazy access to the files named on the command line."""

    def __init__(self, args):
        self.args = args
        self._algebra = None

    def need(self, flag):
        value = getattr(self.args, flag.replace("-", "_"), None)
        if value is None:
            raise InputError(f"--{flag} is required for this command")
        return value

    def has(self, flag):
        return getattr(self.args, flag.replace("-", "_"), None) is not None

    def algebra_from(self, spec):
        if spec.startswith("builtin:"):
            try:
                return builtin_algebra(spec[len("builtin:"):], _field(self.args.field))
            except (ValueError, TypeError) as exc:
                raise InputError(f"{spec}: {exc}") from None
        return io.algebra_from_json(io.read_json(spec), spec)

    @property
    def algebra(self):
        if self._algebra is None:
            self._algebra = self.algebra_from(self.need("algebra"))
        return self._algebra

    def _load(self, flag, loader):
        path = self.need(flag)
        return loader(io.read_json(path), self.algebra, path)

    def operator(self, flag):
        return self._load(flag, io.operator_from_json)

    def tensor(self, flag):
        return self._load(flag, io.tensor2_from_json)

    def tensor_map(self, flag):
        return self._load(flag, io.tensor_map_from_json)

    def element(self, flag):
        return self._load(flag, io.element_from_json)

    def functional(self, flag):
        return self._load(flag, io.functional_from_json)

    def scalar(self, flag, default=None):
        text = getattr(self.args, flag.replace("-", "_"), None)
        if text is None:
            if default is None:
                raise InputError(f"--{flag} is required for this command")
            text = default
        try:
            return parse_scalar(str(text), self.algebra.field)
        except ParseError as exc:
            raise InputError(f"--{flag}: {exc}") from None

    def target(self):
        return self.algebra_from(self.need("target"))

    def morphism(self, B):
        path = self.need("morphism")
        return io.morphism_from_json(io.read_json(path), self.algebra, B, path)

    def bialgebra(self):
        A = self.algebra
        r = self.tensor("r") if self.has("r") else None
        s = self.tensor("s") if self.has("s") else None
        if all(self.has(f) for f in ("delta1", "delta2", "Delta")):
            return CovariantBialgebra(A, self.tensor_map("delta1"), self.tensor_map("delta2"), self.tensor_map("Delta"), r, s)
        if r is not None and s is not None:
            return inner_structure(A, r, s).bialgebra()
        raise InputError("a bialgebra needs --delta1 --delta2 --Delta or --r --s")

    def module(self, bialg):
        path = self.need("module")
        return io.module_from_json(io.read_json(path), bialg, path)


# --------------------------------------------------------------------------
# check
# --------------------------------------------------------------------------


def _nondegenerate(A):
    left, right = annihilators(A)
    F = A.field
    return Report.combine("nondegenerate", [
        check_true("left annihilator is zero", not left),
        check_true("right annihilator is zero", not right),
    ], left_annihilator=io.vectors_to_json([v.coeffs for v in left], F)["basis"],
        right_annihilator=io.vectors_to_json([v.coeffs for v in right], F)["basis"])


def _pseudotwistor(A, R, S):
    tw = pseudotwistor_operations(A, R, S)
    return Report.combine("pseudotwistor", [
        check_weak_pseudotwistor(A, tw.T, tw.companion),
        check_mu_T_is_star(A, tw.T, star_operation(A, R, S)),
    ])


def _jackson(inp):
    N = inp.args.max_deg if inp.args.max_deg is not None else 20
    return Report.combine("jackson", [
        qcalc.verify_jackson_twisted_rb(N),
        qcalc.check_jackson_products(N),
        qcalc.check_star_associative(N),
        qcalc.check_partial_inverse(N),
    ], N=N)


def _coinvariants_report(inp):
    M = inp.module(inp.bialgebra())
    co = coinvariants(M)
    rep = Report.combine("coinvariants", [co.report] if co.report else [], dim=co.dim,
                         basis=io.vectors_to_json(co.basis, M.algebra.field)["basis"])
    return rep, co


def run_check(sub, inp):
    A = lambda: inp.algebra
    op = inp.operator
    t = inp.tensor
    tm = inp.tensor_map
    if sub == "associative":
        return check_associative(A())
    if sub == "nondegenerate":
        return _nondegenerate(A())
    if sub == "morphism":
        B = inp.target()
        return check_morphism(inp.morphism(B))
    if sub == "rb-operator":
        return check_rb_operator(A(), op("R"), inp.scalar("lambda", "0"))
    if sub == "rb-system":
        return check_rb_system(A(), op("R"), op("S"))
    if sub == "orthogonality":
        return check_orthogonality_criterion(A(), op("R"), op("S"))
    if sub == "dendriform":
        return check_dendriform(dendriform_operations(A(), op("R"), op("S")))
    if sub == "pre-lie":
        return check_pre_lie(bullet_operation(A(), op("R"), op("S")))
    if sub == "pseudotwistor":
        return _pseudotwistor(A(), op("R"), op("S"))
    if sub == "twisted-rb":
        return check_twisted_rb(A(), op("sigma"), op("R"))
    if sub == "diff-rb":
        return check_differential_rb(A(), op("R"), op("partial"), inp.scalar("lambda", "0"))
    if sub == "twisted-diff-rb":
        return check_twisted_differential_rb(A(), op("sigma"), op("partial"), op("R"))
    if sub == "yb-pair":
        return check_yb_pair(A(), t("r"), t("s"))
    if sub == "fs":
        return check_fs(A(), t("r"))
    if sub == "split":
        return check_split(A(), t("r"), t("s"))
    if sub == "pair-orthogonality":
        return check_pair_orthogonality(A(), t("r"), t("s"))
    if sub == "unital-quasi":
        return check_unital_quasi(A(), t("r"))
    if sub == "quasi-coproduct":
        return check_quasi_coproduct(A(), t("r"), t("s"), tm("Delta") if inp.has("Delta") else None)
    if sub == "derivation":
        return check_derivation(A(), tm("delta1"))
    if sub == "covariant-derivation":
        return check_covariant_derivation(A(), tm("Delta"), tm("delta1"), tm("delta2"))
    if sub == "coassociative":
        return check_coassociative(A(), tm("Delta"))
    if sub == "covariant-bialgebra":
        return check_covariant_bialgebra(A(), tm("delta1"), tm("delta2"), tm("Delta"))
    if sub == "unital-data":
        return check_unital_data(A(), tm("delta1"), tm("delta2"), t("u"))[0]
    if sub == "unital-bialgebra":
        return check_unital_bialgebra(A(), tm("delta1"), tm("delta2"), tm("Delta"))
    if sub == "counital":
        return check_counital(A(), tm("delta1"), tm("delta2"), tm("Delta"), inp.functional("eps"))
    if sub == "inner":
        return check_inner_condition(A(), t("r"), t("s"))
    if sub == "covariant-module":
        return check_covariant_module(inp.module(inp.bialgebra()))
    if sub == "coinvariants":
        return _coinvariants_report(inp)[0]
    if sub == "jackson":
        return _jackson(inp)
    raise InputError(f"unknown check {sub!r}")


# --------------------------------------------------------------------------
# derive
# --------------------------------------------------------------------------


def run_derive(sub, inp):
    """Returns ``(report, {filename: document})``."""
    op = inp.operator
    t = inp.tensor
    if sub == "rb-from-pair":
        A = inp.algebra
        P = YBPair(A, t("r"), t("s"))
        P.require("rb-from-pair")
        R, S = rb_operators_from_pair(A, P.r, P.s)
        rep = Report.combine("rb-from-pair", [P.check(), check_rb_system(A, R, S)])
        return rep, {"R.json": io.operator_to_json(R), "S.json": io.operator_to_json(S)}
    if sub in ("dendriform", "star", "bullet", "pseudotwistor"):
        A = inp.algebra
        sysm = RBSystem(A, op("R"), op("S"))
        sysm.require(f"derive {sub}")
        R, S = sysm.R, sysm.S
        if sub == "dendriform":
            D = dendriform_operations(A, R, S)
            rep = Report.combine("dendriform", [sysm.check(), check_dendriform(D)])
            return rep, {"prec.json": io.bilinear_to_json(D.prec), "succ.json": io.bilinear_to_json(D.succ)}
        if sub == "star":
            star = star_operation(A, R, S)
            assoc = check_associative(star)
            return Report.combine("star", [sysm.check(), assoc]), {"star.json": io.algebra_to_json(star)}
        if sub == "bullet":
            b = bullet_operation(A, R, S)
            return Report.combine("bullet", [sysm.check(), check_pre_lie(b)]), {"bullet.json": io.bilinear_to_json(b)}
        tw = pseudotwistor_operations(A, R, S)
        rep = Report.combine("pseudotwistor", [sysm.check(), _pseudotwistor(A, R, S)])
        return rep, {"T.json": io.tensor2_map_to_json(tw.T)}
    if sub == "inner":
        A = inp.algebra
        inner = inner_structure(A, t("r"), t("s"))
        rep = Report.combine("inner", [check_yb_pair(A, inner.r, inner.s), check_covariant_bialgebra(A, *inner)])
        return rep, {
            "delta1.json": io.tensor_map_to_json(inner.delta_r),
            "delta2.json": io.tensor_map_to_json(inner.delta_s),
            "Delta.json": io.tensor_map_to_json(inner.Delta),
        }
    if sub == "idempotent-family":
        A = inp.algebra
        F = IdempotentFamily(A, inp.element("e"), inp.scalar("kappa"))
        data = idempotent_pair(F)
        return check_idempotent_data(F, data), {
            "r.json": io.tensor2_to_json(data.pair.r),
            "s.json": io.tensor2_to_json(data.pair.s),
            "R.json": io.operator_to_json(data.R),
            "S.json": io.operator_to_json(data.S),
            "Delta.json": io.tensor_map_to_json(data.Delta),
        }
    if sub == "pushforward":
        A = inp.algebra
        B = inp.target()
        f = inp.morphism(B)
        P = YBPair(A, t("r"), t("s"))
        Q = pushforward_pair(f, P)
        sysA = RBSystem(A, *rb_operators_from_pair(A, P.r, P.s))
        sysB = RBSystem(B, *rb_operators_from_pair(B, Q.r, Q.s))
        rep = Report.combine("pushforward", [Q.check(), check_rb_morphism(f, sysA, sysB)])
        return rep, {"r.json": io.tensor2_to_json(Q.r), "s.json": io.tensor2_to_json(Q.s)}
    if sub == "weighted-systems":
        A = inp.algebra
        lam = inp.scalar("lambda")
        R = op("R")
        base = check_rb_operator(A, R, lam)
        if not base.passed:
            raise PreconditionError("R is not a Rota-Baxter operator of the given weight", base)
        (s1, s2) = systems_from_weighted(A, R, lam)
        rep = Report.combine("weighted-systems", [base, s1.check(), s2.check()])
        return rep, {
            "R1.json": io.operator_to_json(s1.R), "S1.json": io.operator_to_json(s1.S),
            "R2.json": io.operator_to_json(s2.R), "S2.json": io.operator_to_json(s2.S),
        }
    if sub == "coinvariants":
        rep, co = _coinvariants_report(inp)
        return rep, {"coinvariants.json": io.vectors_to_json(co.basis, inp.algebra.field)}
    raise InputError(f"unknown derivation {sub!r}")


# --------------------------------------------------------------------------
# search and gallery
# --------------------------------------------------------------------------


def run_search_command(target, inp):
    A = inp.algebra
    data = {}
    for flag in ("delta1", "delta2", "Delta"):
        if inp.has(flag):
            data[flag] = io.tensor_map_to_json(inp.tensor_map(flag))
    res = run_search(target, A, data, cap=inp.args.cap, workers=inp.args.workers)
    return res.report, {"solutions.json": {"target": target, "solutions": res.solutions}}


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------


def _common(p):
    files = p.add_argument_group("inputs")
    for flag in ("algebra", "R", "S", "r", "s", "delta1", "delta2", "Delta", "eps", "sigma",
                 "partial", "e", "u", "module", "morphism", "target"):
        files.add_argument(f"--{flag}", metavar="FILE")
    files.add_argument("--lambda", dest="lambda_", metavar="C", help="weight")
    files.add_argument("--kappa", metavar="C")
    files.add_argument("--max-deg", type=int, metavar="N")
    files.add_argument("--field", default="QQ", help="field for builtin: algebras (QQ, QQ(q), GF(p))")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="DIR")


def build_parser():
    parser = argparse.ArgumentParser(prog="rbsystems", description="Exact checks for Rota-Baxter systems and related structures.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="run a checker")
    p.add_argument("what", choices=CHECKS)
    _common(p)
    p = sub.add_parser("derive", help="build derived objects")
    p.add_argument("what", choices=DERIVES)
    _common(p)
    p = sub.add_parser("search", help="exhaustive search over a prime field")
    p.add_argument("what", choices=TARGETS)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _common(p)
    p = sub.add_parser("gallery", help="worked examples")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="DIR")
    return parser


def _write_outputs(out, docs):
    os.makedirs(out, exist_ok=True)
    for name, doc in docs.items():
        with open(os.path.join(out, name), "w", encoding="utf-8") as fh:
            fh.write(io.dumps(doc))


def _emit(command, report, docs=None, out=None, stream=None):
    doc = {"command": command, **report.to_dict()}
    if docs:
        if out:
            _write_outputs(out, docs)
            doc["outputs"] = sorted(docs)
        else:
            doc["derived"] = docs
    (stream or sys.stdout).write(io.dumps(doc))
    return {PASS: 0, FAIL: 1}.get(report.verdict, 2)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "lambda_", None) is not None:
        args.__dict__["lambda"] = args.lambda_
    command = f"{args.command} {getattr(args, 'what', None) or args.action}"
    try:
        if args.command == "gallery":
            if args.action == "list":
                sys.stdout.write(io.dumps({"command": "gallery list", "entries": list(ENTRIES)}))
                return 0
            if not args.name:
                raise InputError("gallery run needs an entry name or 'all'")
            command = f"gallery run {args.name}"
            names = None if args.name == "all" else [args.name]
            if names and names[0] not in ENTRIES:
                raise InputError(f"unknown gallery entry {args.name!r}")
            report = run_gallery(names, workers=args.workers)
            if args.out:
                _write_outputs(args.out, {"report.json": {"command": command, **report.to_dict()}})
            return _emit(command, report)
        inp = Inputs(args)
        docs = None
        if args.command == "check":
            report = run_check(args.what, inp)
        elif args.command == "derive":
            report, docs = run_derive(args.what, inp)
        else:
            report, docs = run_search_command(args.what, inp)
        return _emit(command, report, docs, args.out)
    except PreconditionError as exc:
        rep = error_report(command, str(exc))
        if exc.report is not None:
            rep.sub_reports.append(exc.report)
        sys.stderr.write(f"error: {exc}\n")
        return _emit(command, rep)
    except (io.FormatError, InputError, CapExceeded, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _emit(command, error_report(command, str(exc)))


if __name__ == "__main__":
    sys.exit(main())
