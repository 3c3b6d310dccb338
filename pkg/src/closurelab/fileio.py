"""TOML file formats for algebras, modules, submodules, ideals,
multiplicative sets and verification suites."""
from __future__ import annotations

import os

try:
    import tomllib
except ImportError:                      # Python 3.10
    import tomli as tomllib

import numpy as np

from .algebra import (
    Algebra,
    AlgebraReport,
    Ideal,
    MultSet,
    check_algebra,
    ideal,
    saturate,
)
from .exactlin import is_prime
from .modrep import ModuleRep, Submodule, regular_module, submodule_generated


class FileFormatError(ValueError):
    """Malformed document: wrong syntax, missing keys, bad shapes."""


class InvariantError(ValueError):
    """Well-formed document describing an object that fails its axioms."""


def load_document(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError as ex:
        raise FileFormatError(f"{path}: {ex.strerror}") from ex
    except tomllib.TOMLDecodeError as ex:
        raise FileFormatError(f"{path}: {ex}") from ex


def document_kind(doc: dict) -> str:
    kind = doc.get("kind")
    if kind:
        return kind
    if "mult" in doc:
        return "algebra"
    if "actions" in doc:
        return "module"
    if "vectors" in doc:
        return "submodule"
    if "generators" in doc:
        return "multset"
    if "checks" in doc or "seed" in doc:
        return "suite"
    raise FileFormatError("cannot determine document kind")


def _int_matrix(rows, what: str) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as ex:
        raise FileFormatError(f"{what}: not an integer array ({ex})") from ex
    if arr.ndim != 2:
        raise FileFormatError(f"{what}: expected a list of rows")
    return arr


def parse_algebra(doc: dict, path: str = "<doc>") -> Algebra:
    for key in ("p", "labels", "mult"):
        if key not in doc:
            raise FileFormatError(f"{path}: algebra file missing key {key!r}")
    p = doc["p"]
    if not isinstance(p, int) or not is_prime(p):
        raise FileFormatError(f"{path}: p must be a prime integer")
    labels = tuple(str(x) for x in doc["labels"])
    d = len(labels)
    try:
        mult = np.array(doc["mult"], dtype=np.int64)
    except (TypeError, ValueError) as ex:
        raise FileFormatError(f"{path}: bad mult table ({ex})") from ex
    if mult.shape != (d, d, d):
        raise FileFormatError(
            f"{path}: mult table has shape {mult.shape}, expected {(d, d, d)}"
        )
    a = Algebra(p, d, labels, mult % p)
    report = check_algebra(a)
    if not report.passed:
        raise InvariantError(f"{path}: " + "; ".join(report.failures))
    return a


def parse_module(doc: dict, algebra: Algebra, path: str = "<doc>") -> ModuleRep:
    if "actions" not in doc:
        raise FileFormatError(f"{path}: module file missing key 'actions'")
    acts = doc["actions"]
    if len(acts) != algebra.dim:
        raise FileFormatError(
            f"{path}: need {algebra.dim} action matrices, got {len(acts)}"
        )
    from .exactlin import FpMatrix

    mats = []
    for i, rows in enumerate(acts):
        arr = _int_matrix(rows, f"{path}: action {i}")
        mats.append(FpMatrix(algebra.p, arr % algebra.p))
    try:
        return ModuleRep(algebra, mats[0].rows, tuple(mats))
    except ValueError as ex:
        raise InvariantError(f"{path}: {ex}") from ex


def parse_submodule(doc: dict, module: ModuleRep, path: str = "<doc>") -> Submodule:
    if "vectors" not in doc:
        raise FileFormatError(f"{path}: submodule file missing key 'vectors'")
    if not doc["vectors"]:
        return submodule_generated(module, [])
    vecs = _int_matrix(doc["vectors"], f"{path}: vectors")
    if vecs.size and vecs.shape[1] != module.dim:
        raise FileFormatError(
            f"{path}: vectors have length {vecs.shape[1]}, module has dim {module.dim}"
        )
    return submodule_generated(module, [v for v in vecs])


def parse_ideal(doc: dict, algebra: Algebra, path: str = "<doc>") -> Ideal:
    if "generators" not in doc:
        raise FileFormatError(f"{path}: ideal file missing key 'generators'")
    gens = _int_matrix(doc["generators"], f"{path}: generators")
    if gens.size and gens.shape[1] != algebra.dim:
        raise FileFormatError(f"{path}: generator length != algebra dim")
    return ideal(algebra, [g for g in gens])


def parse_multset(doc: dict, algebra: Algebra, path: str = "<doc>") -> MultSet:
    if "generators" not in doc:
        raise FileFormatError(f"{path}: multset file missing key 'generators'")
    gens = _int_matrix(doc["generators"], f"{path}: generators")
    if gens.size and gens.shape[1] != algebra.dim:
        raise FileFormatError(f"{path}: generator length != algebra dim")
    return saturate(algebra, [g for g in gens])


def resolve_relative(base_path: str, ref: str) -> str:
    if os.path.isabs(ref):
        return ref
    return os.path.join(os.path.dirname(os.path.abspath(base_path)), ref)


def shipped_path(name: str) -> str:
    """Absolute path of a data file shipped with the package."""
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", name)


def shipped_algebra(name: str) -> Algebra:
    path = shipped_path(name if name.endswith(".toml") else name + ".toml")
    return parse_algebra(load_document(path), path)


def serialize_module(m: ModuleRep, algebra_ref: str) -> str:
    lines = ['kind = "module"', f'algebra = "{algebra_ref}"', "actions = ["]
    for act in m.actions:
        rows = ", ".join(
            "[" + ", ".join(str(int(x)) for x in row) + "]" for row in act.data
        )
        lines.append(f"  [{rows}],")
    lines.append("]")
    return "\n".join(lines) + "\n"
