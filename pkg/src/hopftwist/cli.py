"""Command-line front end: ``hopftwist <command> [options]``.

Exit codes: 0 when every asserted identity holds, 1 when a mathematical
violation is found (the first one is named), 2 for bad input or options.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Callable

from . import linalg as la
from .acceptance import report_json, run_acceptance
from .algebra import TensorElem, from_json as tensor_from_json
from .crossedprod import (CrossedProduct, ExtensionAlgebra, TwistedActionData,
                          crossed_product_checks, extension_checks, heisenberg_action,
                          verify_action, wedge_with_center)
from .errors import ConfigurationError, HopfTwistError, InternalNoSolution, NoSolution
from .geom import casimir_identity_holds, geometric_add, support, three_vector
from .lie import (LieAlgebraData, builtin, center, heisenberg, invariant_skew2,
                  is_invariant_2tensor, is_skew, validate_lie)
from .rmatrix import (classical_limit, cybe_tensor, drinfeld_element, verify_triangular)
from .samples import random_uea_element
from .scalars import as_rational, format_rational
from .twist import (TwistedEndo, apply_gauge, associator, associator_alternation, compose,
                    gauge_twist, group_law_cocycle, normalize_invariant_twist, separate, verify_twist)
from .uea import UEA


class InputError(Exception):
    """Unreadable or ill-formed command-line input (exit code 2)."""


class Report:
    """Ordered checks plus payload; serialises deterministically."""

    def __init__(self, command: str):
        self.command = command
        self.checks: dict[str, bool] = {}
        self.data: dict = {}
        self.failure = ""

    def check(self, name: str, ok: bool, failure: str | None = None) -> bool:
        self.checks[name] = bool(ok)
        if not ok and not self.failure:
            self.failure = failure or f"{name} violation"
        return bool(ok)

    @property
    def ok(self) -> bool:
        return not self.failure and all(self.checks.values())

    def to_json(self) -> dict:
        return {"command": self.command, "status": "ok" if self.ok else "violation",
                "failure": self.failure or None, "checks": self.checks, "result": self.data}

    def to_text(self) -> str:
        lines = [f"{self.command}: {'ok' if self.ok else self.failure}"]
        for k, v in self.data.items():
            lines.append(f"  {k}: {_text(v)}")
        for k, v in self.checks.items():
            lines.append(f"  [{'x' if v else ' '}] {k}")
        return "\n".join(lines)


def _text(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False, sort_keys=True)
    return str(v)


def _mat(m) -> list:
    return [[format_rational(x) for x in r] for r in m]


# -- input ------------------------------------------------------------------------------

def _read_json(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} {path!r} is not valid JSON: {exc}") from exc


def load_algebra(spec: str, validate: bool = True) -> LieAlgebraData:
    """A JSON file path, or a built-in name such as ``heisenberg:1``."""
    if os.path.exists(spec):
        data = _read_json(spec, "algebra")
        if not validate:
            return _raw_algebra(data)
        try:
            return LieAlgebraData.from_json(data, name=os.path.basename(spec))
        except ConfigurationError as exc:
            raise InputError(str(exc)) from exc
    try:
        return builtin(spec)
    except ConfigurationError as exc:
        raise InputError(f"{exc} (and no such file)") from exc


def _raw_algebra(data) -> LieAlgebraData:
    """Parse without validating, for validate-lie; keeps brackets as given."""
    try:
        dim = int(data["dim"])
        names = data.get("basis") or None
        br: dict = {}
        for i, j, terms in data.get("brackets", []):
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError(f"bracket index out of range: {(i, j)}")
            vec = br.setdefault((i, j), {})
            for k, c in terms:
                if not 0 <= k < dim:
                    raise InputError(f"bracket target out of range: {k}")
                vec[k] = vec.get(k, 0) + as_rational(c)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed Lie algebra JSON: {exc}") from exc
    full = {}
    for (i, j), vec in br.items():
        full[(i, j)] = dict(vec)
        if (j, i) not in br:
            full[(j, i)] = {k: -v for k, v in vec.items()}
    return LieAlgebraData(dim, names, full)


def load_tensor(U: UEA, path: str | None, arity: int, flag: str) -> TensorElem:
    if path is None:
        raise InputError(f"{flag} is required")
    data = _read_json(path, flag)
    try:
        t = tensor_from_json(U, data)
    except (ConfigurationError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{flag}: malformed tensor: {exc}") from exc
    if t.arity != arity:
        raise InputError(f"{flag}: expected a tensor of arity {arity}, got {t.arity}")
    return t


def load_bivector(U: UEA, path: str | None, flag: str) -> la.Matrix:
    """An n×n skew matrix, or a 2-tensor JSON lying in Λ²g."""
    if path is None:
        raise InputError(f"{flag} is required")
    data = _read_json(path, flag)
    n = U.n
    try:
        if isinstance(data, dict):
            t = tensor_from_json(U, data)
            if t.arity != 2 or not U.is_lie_tensor(t):
                raise InputError(f"{flag}: tensor does not lie in g⊗g")
            m = U.to_bivector(t)
        else:
            m = [[as_rational(x) for x in row] for row in data]
    except (ConfigurationError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{flag}: malformed bivector: {exc}") from exc
    if len(m) != n or any(len(r) != n for r in m):
        raise InputError(f"{flag}: expected a {n}×{n} matrix")
    if not is_skew(m):
        raise InputError(f"{flag}: matrix is not skew-symmetric")
    return m


def load_endo(U: UEA, path: str | None) -> TwistedEndo:
    """{"matrix": n×n} or {"images": [UEAElem, ...]}, with optional "F"."""
    if path is None:
        raise InputError("--endo is required")
    data = _read_json(path, "--endo")
    try:
        F = tensor_from_json(U, data["F"]) if "F" in data else U.unit(2)
        if "matrix" in data:
            p = [[as_rational(x) for x in r] for r in data["matrix"]]
            if len(p) != U.n or any(len(r) != U.n for r in p):
                raise InputError(f"--endo: expected a {U.n}×{U.n} matrix")
            return TwistedEndo.from_matrix(U, p, F)
        images = [tensor_from_json(U, im) for im in data["images"]]
        return TwistedEndo(U, images, F)
    except InputError:
        raise
    except (HopfTwistError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"--endo: malformed endomorphism: {exc}") from exc


def _invariant(U: UEA, m, flag: str):
    if not is_invariant_2tensor(U.lie, m):
        raise InputError(f"{flag} is not g-invariant")
    return m


# -- commands ---------------------------------------------------------------------------

def cmd_validate_lie(args, rep: Report):
    g = load_algebra(args.algebra, validate=False)
    r = validate_lie(g)
    rep.data["dim"] = g.dim
    rep.check("lie_algebra", r.ok, str(r))


def _uea(args) -> UEA:
    return UEA(load_algebra(args.algebra), args.h_order)


def cmd_verify_twist(args, rep: Report):
    U = _uea(args)
    F = load_tensor(U, args.twist, 2, "--twist")
    r = verify_twist(F)
    for k, v in r.checks.items():
        rep.check(k, v)
    rep.failure = "" if r.ok else str(r)
    if r.ok:
        rep.data["invariant"] = r.invariant


def cmd_normalize_twist(args, rep: Report):
    U = _uea(args)
    F = load_tensor(U, args.twist, 2, "--twist")
    r = verify_twist(F)
    if not rep.check("twist", r.ok, str(r)):
        return
    rep.data["invariant"] = r.invariant
    try:
        nf = normalize_invariant_twist(F, require_invariant=False, certify=False)
    except InternalNoSolution:
        raise
    except NoSolution as exc:
        rep.check("invariant_representative", False,
                  f"twist is not gauge equivalent to an invariant twist ({exc})")
        return
    rep.data["X"] = {f"h^{i + 1}": _mat(m) for i, m in enumerate(nf.X)}
    rep.data["gauge"] = str(nf.gauge)
    rep.check("gauge_certificate", gauge_twist(nf.gauge, F) == nf.product(U))


def cmd_separate(args, rep: Report):
    U = _uea(args)
    t = load_endo(U, args.endo)
    checks = t.check()
    for k, v in checks.items():
        rep.check(k, v)
    if not rep.ok:
        return
    sep = separate(t, certify=False)
    rep.data["automorphism"] = _mat(sep.matrix)
    rep.data["invariant_twist"] = str(sep.F_inv)
    rep.data["gauge"] = str(sep.gauge)
    rep.check("reconstruction",
              apply_gauge(sep.gauge, t) == compose(TwistedEndo.from_twist(sep.F_inv), sep.auto))


def cmd_group_law(args, rep: Report):
    U = _uea(args)
    X = _invariant(U, load_bivector(U, args.x, "--x"), "--x")
    Y = _invariant(U, load_bivector(U, args.y, "--y"), "--y")
    gl = group_law_cocycle(U, X, Y)
    rep.data["a"] = str(gl.a)
    rep.data["commutator"] = str(gl.commutator)
    for k, v in gl.checks.items():
        rep.check(k, v)


def cmd_associator(args, rep: Report):
    U = _uea(args)
    X, Y, Z = (_invariant(U, load_bivector(U, p, f), f)
               for p, f in ((args.x, "--x"), (args.y, "--y"), (args.z, "--z")))
    rep.data["associator"] = str(associator(U, X, Y, Z))
    alt = associator_alternation(U, X, Y, Z)
    rep.data["alternation"] = str(alt)
    rep.check("alternation_vanishes", not alt, "associator alternation is nonzero")


def cmd_cybe_check(args, rep: Report):
    g = load_algebra(args.algebra)
    r = load_bivector(UEA(g, 1), args.x, "--x")
    t = cybe_tensor(g, r)
    nz = [[i, j, k, format_rational(t[i][j][k])] for i in range(g.dim)
          for j in range(g.dim) for k in range(g.dim) if t[i][j][k]]
    rep.data["nonzero_components"] = nz
    rep.check("cybe", not nz, "classical Yang-Baxter violation"
              + (f" at component {tuple(nz[0][:3])}" if nz else ""))


def cmd_classical_limit(args, rep: Report):
    U = _uea(args)
    F = load_tensor(U, args.twist, 2, "--twist")
    r = verify_twist(F)
    if not rep.check("twist", r.ok, str(r)):
        return
    cl = classical_limit(F, verify=False)
    rep.data["r"] = _mat(cl.r)
    for k, v in cl.checks.items():
        rep.check(k, v)


def cmd_support(args, rep: Report):
    U = UEA(load_algebra(args.algebra), 1)
    X = _invariant(U, load_bivector(U, args.x, "--x"), "--x")
    sd = support(X)
    rep.data.update(sd.to_json())
    rep.data["dim"] = sd.space.dim
    rep.check("casimir_identity", casimir_identity_holds(sd))


def cmd_add_supports(args, rep: Report):
    U = UEA(load_algebra(args.algebra), 1)
    X1 = _invariant(U, load_bivector(U, args.x, "--x"), "--x")
    X2 = _invariant(U, load_bivector(U, args.y, "--y"), "--y")
    s = geometric_add(support(X1), support(X2))
    rep.data["sum"] = s.result.to_json()
    rep.data["perp_dim"] = s.perp_dim
    rep.data["kernel_dim"] = s.kernel_dim
    direct = support([[a + b for a, b in zip(r, q)] for r, q in zip(X1, X2)])
    rep.check("agrees_with_direct_sum", s.agrees_with_direct and s.result == direct)


def cmd_three_vector(args, rep: Report):
    U = _uea(args)
    X1 = _invariant(U, load_bivector(U, args.x, "--x"), "--x")
    X2 = _invariant(U, load_bivector(U, args.y, "--y"), "--y")
    tv = three_vector(U, X1, X2)
    rep.data["b_basis"] = _mat([list(v) for v in tv.bspace.basis])
    rep.data["c"] = [[[format_rational(x) for x in row] for row in m] for m in tv.c]
    rep.data["a"] = str(tv.a)
    for k, v in tv.checks.items():
        rep.check(k, v)


def cmd_triangular(args, rep: Report):
    U = _uea(args)
    R = load_tensor(U, args.rmatrix, 2, "--rmatrix")
    r = verify_triangular(R)
    for k, v in r.checks.items():
        rep.check(k, v)
    rep.failure = "" if r.ok else str(r)


def cmd_drinfeld(args, rep: Report):
    U = _uea(args)
    R = load_tensor(U, args.rmatrix, 2, "--rmatrix")
    d = drinfeld_element(R)
    rep.data["u"] = str(d.u)
    for k, v in d.checks.items():
        rep.check(k, v)


def _action_for(U: UEA) -> TwistedActionData:
    """x∧c over the non-central basis vectors when the last one is central, else (Λ²g)^g."""
    g = U.lie
    n = g.dim
    z = center(g)
    if z.contains(g.unit_vector(n - 1)):
        gens = [wedge_with_center(n, g.unit_vector(i), n - 1) for i in range(n - 1)]
        if all(is_invariant_2tensor(g, m) for m in gens):
            return heisenberg_action(U)
    gens = invariant_skew2(g)
    if not gens:
        raise InputError("the algebra has no invariant skew 2-tensors to act with")
    return TwistedActionData(U, gens)


def cmd_crossed_product(args, rep: Report):
    U = _uea(args)
    d = _action_for(U)
    rng = random.Random(args.seed)
    k = d.rank
    samples = [tuple(rng.randint(-1, 1) for _ in range(k)) for _ in range(3)]
    ar = verify_action(d, samples)
    for name, v in ar.checks.items():
        rep.check(f"action_{name}", v)
    if not ar.ok:
        rep.failure = str(ar)
        return
    cp = CrossedProduct(d)

    def sample():
        n = tuple(rng.randint(-1, 1) for _ in range(k))
        return cp.embed(random_uea_element(rng, U, max_degree=2, terms=2, min_degree=0), n)

    counts: dict[str, int] = {}
    for _ in range(args.samples):
        for name, ok in crossed_product_checks(cp, sample(), sample(), sample()).items():
            counts[name] = counts.get(name, 0) + bool(ok)
    rep.data["samples"] = args.samples
    rep.data["passed"] = counts
    for name, c in counts.items():
        rep.check(name, c == args.samples)


def cmd_heisenberg_demo(args, rep: Report):
    if args.m < 1:
        raise InputError("--m must be at least 1")
    g, form = heisenberg(args.m)
    U = UEA(g, args.h_order)
    d = heisenberg_action(U)
    E = ExtensionAlgebra(d)
    names = g.basis_names
    c = E.from_uea(U.gen(g.dim - 1))
    c3 = c * c * c
    brackets = {}
    display_holds = True
    for i in range(d.rank):
        for j in range(i + 1, d.rank):
            li, lj = E.l(i), E.l(j)
            br = li * lj - lj * li
            if br:
                brackets[f"[l_{names[i]},l_{names[j]}]"] = _bracket_text(br, c3)
            # target formula [l_v, l_u] = b(u, v)/3 c³, taken literally
            if br != c3.scale(form.value(g.unit_vector(j), g.unit_vector(i)) / 3):
                display_holds = False
    rep.data["brackets"] = brackets
    rep.data["coproducts"] = {f"Δ(l_{names[i]})": str(E.delta_l(i)) for i in range(d.rank)}
    rep.data["literal_display_[l_v,l_u]=b(u,v)/3c^3"] = display_holds
    for k, v in extension_checks(E).items():
        rep.check(k, v)


def _bracket_text(br: TensorElem, c3: TensorElem) -> str:
    """Write a multiple of c³ as (q)c³."""
    (key, v), = c3.terms.items()
    if set(br.terms) == {key} and not any(br.terms[key][1:]):
        return f"({format_rational(br.terms[key][0] / v[0])})c³"
    return str(br)


def cmd_selftest(args, rep: Report):
    only = _parse_only(args.only)
    echo = (lambda r: print(r.line(), flush=True)) if args.output == "text" else None
    results = run_acceptance(args.seed, only, on_result=echo)
    rep.data["report"] = json.loads(report_json(results))
    for r in results:
        rep.check(f"criterion_{r.number}", r.ok)
    rep.failure = "" if rep.ok else \
        "criteria failed: " + ", ".join(str(r.number) for r in results if not r.ok)


def _parse_only(values) -> list[int] | None:
    if not values:
        return None
    out = []
    for v in values:
        for part in str(v).split(","):
            if part.strip():
                try:
                    n = int(part)
                except ValueError as exc:
                    raise InputError(f"--only: not an integer: {part!r}") from exc
                if not 1 <= n <= 12:
                    raise InputError(f"--only: no criterion {n}")
                out.append(n)
    return out


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate-lie": (cmd_validate_lie, "check antisymmetry and Jacobi"),
    "verify-twist": (cmd_verify_twist, "check the twist equations, report invariance"),
    "normalize-twist": (cmd_normalize_twist, "gauge a twist to ∏ exp(X_i h^i) with invariant X_i"),
    "separate": (cmd_separate, "split a twisted automorphism into automorphism and invariant twist"),
    "group-law": (cmd_group_law, "central a(X,Y) with ∂a = [X,Y] and the gauge certificate"),
    "associator": (cmd_associator, "associator of three invariant bivectors and its alternation"),
    "cybe-check": (cmd_cybe_check, "classical Yang-Baxter equation for r in Λ²g"),
    "classical-limit": (cmd_classical_limit, "r = Alt(F_1) and its checks"),
    "support": (cmd_support, "support subspace and form of an invariant bivector"),
    "add-supports": (cmd_add_supports, "geometric sum of two supports"),
    "three-vector": (cmd_three_vector, "3-vector c and the central element a"),
    "triangular": (cmd_triangular, "check the triangular R-matrix axioms"),
    "drinfeld": (cmd_drinfeld, "Drinfeld element u = μ(I⊗S)(R)"),
    "crossed-product": (cmd_crossed_product, "bialgebra axioms of U(g)*A on random samples"),
    "heisenberg-demo": (cmd_heisenberg_demo, "relations of U(g)[A,a] for the Heisenberg algebra"),
    "selftest": (cmd_selftest, "run the acceptance suite"),
}


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="heisenberg:1",
                        help="JSON file or built-in name (abelian:N, heisenberg:M, sl2, "
                             "affine2, meta-abelian:D); default heisenberg:1")
    common.add_argument("--h-order", type=_positive, default=4, help="truncation order N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=("text", "json"), default="text")
    for flag in ("--twist", "--endo", "--rmatrix", "--x", "--y", "--z"):
        common.add_argument(flag, metavar="PATH")
    p = argparse.ArgumentParser(prog="hopftwist",
                                description="Exact computations with twists of U(g)[[h]].")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if name == "heisenberg-demo":
            sp.add_argument("--m", type=int, default=1, help="Heisenberg(m) has dimension 2m+1")
        if name == "crossed-product":
            sp.add_argument("--samples", type=_positive, default=10)
        if name == "selftest":
            sp.add_argument("--only", nargs="*", help="criterion numbers, e.g. --only 1 2 9")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    rep = Report(args.command)
    fn = COMMANDS[args.command][0]
    try:
        fn(args, rep)
    except (InputError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HopfTwistError as exc:
        rep.failure = rep.failure or f"{type(exc).__name__}: {exc}"
    if args.output == "json":
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True, ensure_ascii=False))
    elif args.command != "selftest":
        print(rep.to_text())
    else:
        print(f"selftest: {'ok' if rep.ok else rep.failure}")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
