"""Command line front end.

Every command is a thin composition of library calls: file loading, the
selector expression language, and the verification suites.  No mathematics
lives in this layer.

Exit codes: 0 success / all PASS, 1 FAIL verdicts present, 2 invariant
violation, 3 parse error, 4 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import (
    Algebra,
    Ideal,
    MultSet,
    check_algebra,
    is_gorenstein,
    maximal_ideal,
)
from .duality import dual_module, injective_hull
from .exactlin import BudgetExceeded, Subspace
from .fileio import (
    FileFormatError,
    InvariantError,
    document_kind,
    load_document,
    parse_algebra,
    parse_ideal,
    parse_module,
    parse_multset,
    parse_submodule,
    resolve_relative,
    serialize_module,
)
from .modrep import ModuleRep, Submodule, all_submodules, quotient, regular_module
from .mutations import mutation_suite
from .proplab import THEOREMS, generate_battery, run_suite
from .residual import ResidualOp, test_ideal
from .selectors import smile
from .sexpr import SelectorSyntaxError, compile_selector

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVARIANT = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class Workspace:
    """Named artifacts loaded from --bind flags, plus per-algebra defaults."""

    def __init__(self):
        self.objects: dict[str, object] = {}

    def bind(self, name: str, path: str):
        if name in self.objects:
            raise CliError(f"duplicate binding {name!r}", EXIT_PARSE)
        self.objects[name] = self._load(path)

    def _load(self, path: str):
        doc = load_document(path)
        kind = document_kind(doc)
        if kind == "algebra":
            return parse_algebra(doc, path)
        algebra = self.algebra_for(doc, path)
        if kind == "module":
            return parse_module(doc, algebra, path)
        if kind == "ideal":
            return parse_ideal(doc, algebra, path)
        if kind == "multset":
            return parse_multset(doc, algebra, path)
        if kind == "submodule":
            module = self.module_for(doc, path)
            return parse_submodule(doc, module, path)
        raise FileFormatError(f"{path}: cannot bind a {kind!r} document")

    def algebra_for(self, doc: dict, path: str) -> Algebra:
        ref = doc.get("algebra")
        if ref is None:
            raise FileFormatError(f"{path}: missing 'algebra' reference")
        if ref in self.objects:
            obj = self.objects[ref]
            if not isinstance(obj, Algebra):
                raise FileFormatError(f"{path}: {ref!r} is not an algebra")
            return obj
        return parse_algebra(load_document(resolve_relative(path, ref)), ref)

    def module_for(self, doc: dict, path: str) -> ModuleRep:
        ref = doc.get("module")
        if ref is None:
            raise FileFormatError(f"{path}: missing 'module' reference")
        if ref in self.objects:
            obj = self.objects[ref]
            if not isinstance(obj, ModuleRep):
                raise FileFormatError(f"{path}: {ref!r} is not a module")
            return obj
        mdoc = load_document(resolve_relative(path, ref))
        return parse_module(mdoc, self.algebra_for(mdoc, ref), ref)

    def resolve_module(self, target: str) -> ModuleRep:
        if target in self.objects:
            obj = self.objects[target]
            if isinstance(obj, ModuleRep):
                return obj
            if isinstance(obj, Algebra):
                return regular_module(obj)
            raise CliError(f"{target!r} is not a module", EXIT_PARSE)
        doc = load_document(target)
        kind = document_kind(doc)
        if kind == "algebra":
            return regular_module(parse_algebra(doc, target))
        if kind != "module":
            raise CliError(f"{target}: expected a module file", EXIT_PARSE)
        return parse_module(doc, self.algebra_for(doc, target), target)

    def selector_env(self, a: Algebra) -> dict:
        env: dict[str, object] = {
            "R": regular_module(a),
            "E": injective_hull(a),
            "m": maximal_ideal(a),
        }
        r = env["R"]
        k, _ = quotient(r, Submodule(r, maximal_ideal(a).space))
        env["k"] = k
        for name, obj in self.objects.items():
            env[name] = obj
        return env


def _print_space(space: Subspace, out, fmt: str, header: str):
    if fmt == "machine":
        out.write(f"dim={space.dim}\n")
        for v in space.basis_vectors():
            out.write(",".join(str(int(x)) for x in v) + "\n")
        return
    out.write(f"{header}: dimension {space.dim}\n")
    if space.dim == 0:
        out.write("  (zero)\n")
    for v in space.basis_vectors():
        out.write("  [" + ", ".join(str(int(x)) for x in v) + "]\n")


def cmd_check(args, ws: Workspace, out) -> int:
    doc = load_document(args.path)
    kind = document_kind(doc)
    if kind == "algebra":
        for key in ("p", "labels", "mult"):
            if key not in doc:
                raise FileFormatError(f"{args.path}: algebra file missing key {key!r}")
        import numpy as _np
        from .exactlin import is_prime

        p = doc["p"]
        if not isinstance(p, int) or not is_prime(p):
            raise FileFormatError(f"{args.path}: p must be a prime integer")
        labels = tuple(str(x) for x in doc["labels"])
        mult = _np.array(doc["mult"], dtype=_np.int64)
        if mult.shape != (len(labels),) * 3:
            raise FileFormatError(f"{args.path}: mult table has wrong shape")
        a = Algebra(p, len(labels), labels, mult % p)
        report = check_algebra(a)
        out.write(f"{args.path}: algebra over F_{p}, dim {a.dim}: {report}\n")
        if not report.passed:
            return EXIT_INVARIANT
        out.write(f"Gorenstein: {is_gorenstein(a)}\n")
        return EXIT_OK
    if kind == "module":
        m = parse_module(doc, ws.algebra_for(doc, args.path), args.path)
        out.write(f"{args.path}: module of dimension {m.dim}: PASS\n")
        return EXIT_OK
    # other kinds validate in their parsers
    ws._load(args.path)
    out.write(f"{args.path}: {kind}: PASS\n")
    return EXIT_OK


def cmd_apply(args, ws: Workspace, out) -> int:
    m = ws.resolve_module(args.target)
    env = ws.selector_env(m.algebra)
    sel = compile_selector(args.expr, m.algebra, env, budget=args.budget)
    sub = sel(m)
    _print_space(sub.space, out, args.format, f"{sel.name} of module dim {m.dim}")
    return EXIT_OK


def cmd_closure(args, ws: Workspace, out) -> int:
    doc = load_document(args.submodule)
    if document_kind(doc) != "submodule":
        raise CliError(f"{args.submodule}: expected a submodule file", EXIT_PARSE)
    m = ws.module_for(doc, args.submodule)
    sub = parse_submodule(doc, m, args.submodule)
    env = ws.selector_env(m.algebra)
    sel = compile_selector(args.expr, m.algebra, env, budget=args.budget)
    r = ResidualOp(sel)             # L^r_M = preimage of sel(M/L)
    closed = r.apply(sub, m)
    _print_space(
        closed.space, out, args.format,
        f"{r.name} of submodule dim {sub.dim}",
    )
    return EXIT_OK


def cmd_dual(args, ws: Workspace, out) -> int:
    m = ws.resolve_module(args.target)
    out.write(serialize_module(dual_module(m), args.target))
    return EXIT_OK


def cmd_testideal(args, ws: Workspace, out) -> int:
    obj = ws.objects.get(args.algebra)
    if isinstance(obj, Algebra):
        a = obj
    else:
        a = parse_algebra(load_document(args.algebra), args.algebra)
    env = ws.selector_env(a)
    sel = compile_selector(args.expr, a, env, budget=args.budget)
    battery = generate_battery(a, seed=args.seed)
    rep = test_ideal(sel, battery.modules, [e.map for e in battery.maps])
    out.write(rep.render(a) + "\n")
    if not rep.preradical_ok:
        return EXIT_OK          # degraded mode: nothing asserted, nothing failed
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args, ws: Workspace, out) -> int:
    doc = load_document(args.suite)
    if document_kind(doc) != "suite":
        raise CliError(f"{args.suite}: expected a suite file", EXIT_PARSE)
    refs = doc.get("algebras") or [doc["algebra"]]
    seed = doc.get("seed", 0)
    checks = doc.get("checks") or sorted(THEOREMS, key=lambda t: int(t[1:]))
    for tid in checks:
        if tid not in THEOREMS:
            raise FileFormatError(f"{args.suite}: unknown check {tid!r}")
    run_mutations = bool(doc.get("mutations", False))
    sizes = doc.get("sizes")
    all_pass = True
    for ref in refs:
        a = parse_algebra(
            load_document(resolve_relative(args.suite, ref)), ref
        )
        out.write(f"== algebra {ref} (seed {seed}) ==\n")
        b = generate_battery(a, seed=seed, sizes=sizes)
        for v in run_suite(b, checks):
            out.write(str(v) + "\n")
            all_pass &= v.passed
        if run_mutations:
            rep = mutation_suite(b)
            out.write(rep.render() + "\n")
            all_pass &= rep.all_killed
    out.write("RESULT: " + ("ALL PASS" if all_pass else "FAILURES PRESENT") + "\n")
    return EXIT_OK if all_pass else EXIT_FAIL


def cmd_enumerate(args, ws: Workspace, out) -> int:
    m = ws.resolve_module(args.target)
    subs = all_submodules(m, max_dim=args.max_dim, budget=args.budget)
    out.write(f"{len(subs)} submodules\n")
    for i, sub in enumerate(subs):
        _print_space(sub.space, out, args.format, f"[{i}] dim {sub.dim}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="closurelab",
        description="exact laboratory for closure/interior duality over finite local algebras",
    )
    ap.add_argument("--bind", action="append", default=[], metavar="NAME=PATH",
                    help="bind a file to a name usable inside selector expressions")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=4096)
    ap.add_argument("--format", choices=("text", "machine"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a file against its invariants")
    p.add_argument("path")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("apply", help="apply a selector expression to a module")
    p.add_argument("expr")
    p.add_argument("target")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("closure", help="closure of a submodule under the residual op of a selector")
    p.add_argument("expr")
    p.add_argument("submodule")
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("dual", help="print the Matlis dual of a module")
    p.add_argument("target")
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("testideal", help="full test ideal report for a selector")
    p.add_argument("expr")
    p.add_argument("--algebra", required=True)
    p.set_defaults(fn=cmd_testideal)

    p = sub.add_parser("verify", help="run a verification suite file")
    p.add_argument("suite")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("enumerate", help="enumerate submodules of a module")
    p.add_argument("target")
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(fn=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    ws = Workspace()
    try:
        for binding in args.bind:
            if "=" not in binding:
                raise CliError(f"--bind expects NAME=PATH, got {binding!r}", EXIT_PARSE)
            name, path = binding.split("=", 1)
            ws.bind(name, path)
        return args.fn(args, ws, sys.stdout)
    except CliError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return ex.code
    except SelectorSyntaxError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except FileFormatError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as ex:
        print(f"invariant violation: {ex}", file=sys.stderr)
        return EXIT_INVARIANT
    except BudgetExceeded as ex:
        print(f"budget exceeded: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except KeyError as ex:
        print(f"error: unknown name {ex}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
