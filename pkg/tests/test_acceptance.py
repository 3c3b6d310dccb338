"""Acceptance criteria for the laboratory, one printed verdict line each."""
import re
import time

import numpy as np
import pytest

from closurelab.algebra import enumerate_all_ideals, maximal_ideal
from closurelab.cli import main
from closurelab.fileio import shipped_algebra, shipped_path
from closurelab.modrep import Submodule, quotient, regular_module, submodule_generated
from closurelab.mutations import MUTATIONS, mutation_suite
from closurelab.proplab import (
    THEOREMS,
    battery_multsets,
    builtin_selectors,
    generate_battery,
    run_suite,
    trace_tom_sample,
    verify_theorem,
)
from closurelab.residual import test_ideal as compute_test_ideal
from closurelab.selectors import (
    adic_kernel_selector,
    ann_selector,
    frobenius_stable_power,
    frobenius_star_selector,
    h0_selector,
    mul_selector,
    selectors_agree,
    smile,
    socle_selector,
    tom_selector,
    trace_selector,
)

SHIPPED = ("f2_x2", "f2_x3", "f2_xy")


def _verdict(capsys, num, desc, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {desc}"
    if not ok and detail:
        line += f" [{detail}]"
    with capsys.disabled():
        print(line)
    assert ok, detail or desc


def test_criterion_1_smile_involution(batteries, capsys):
    t0 = time.monotonic()
    ok, detail = True, ""
    for name, b in batteries:
        if len(b.modules) < 12 or len(b.maps) < 40:
            ok, detail = False, f"{name}: battery too small"
            break
        for sname, alpha in builtin_selectors(b):
            same, why = selectors_agree(smile(smile(alpha)), alpha, b.modules)
            if not same:
                ok, detail = False, f"{name}/{sname}: {why}"
                break
        if not ok:
            break
    elapsed = time.monotonic() - t0
    if ok and elapsed >= 10.0:
        ok, detail = False, f"took {elapsed:.1f}s, limit 10s"
    _verdict(
        capsys, 1,
        f"smile is an involution on every battery selector ({elapsed:.1f}s)",
        ok, detail,
    )


def test_criterion_2_smile_trace_is_tom(batteries, capsys):
    ok, detail = True, ""
    for name, b in batteries:
        sample = trace_tom_sample(b)
        if len(sample) < 20:
            ok, detail = False, f"{name}: only {len(sample)} (S, L) pairs"
            break
        for label, l, s in sample:
            lhs = smile(trace_selector(l, s))
            rhs = tom_selector(l, s)
            same, why = selectors_agree(lhs, rhs, b.modules)
            if not same:
                ok, detail = False, f"{name}/{label}: {why}"
                break
        if not ok:
            break
        # closed-form anchors on cyclic modules R/I
        r = regular_module(b.algebra)
        for i in enumerate_all_ideals(b.algebra):
            if not (0 < i.dim < b.algebra.dim):
                continue
            q, _ = quotient(r, Submodule(r, i.space))
            same, why = selectors_agree(trace_selector(q), ann_selector(i), b.modules)
            if not same:
                ok, detail = False, f"{name}: trace anchor: {why}"
                break
            same, why = selectors_agree(tom_selector(q), mul_selector(i), b.modules)
            if not same:
                ok, detail = False, f"{name}: tom anchor: {why}"
                break
        if not ok:
            break
    _verdict(
        capsys, 2,
        "smile of trace equals the tensor torsion, with cyclic anchors",
        ok, detail,
    )


def test_criterion_3_test_ideal_chain(batteries, b_x2, capsys):
    ok, detail = True, ""
    for name, b in batteries:
        a = b.algebra
        r = regular_module(a)
        k = b.module("k")
        maps = [e.map for e in b.maps]
        picks = [
            socle_selector(),
            mul_selector(maximal_ideal(a)),
            frobenius_star_selector(a),
            tom_selector(k),
        ]
        for alpha in picks:
            rep = compute_test_ideal(alpha, b.modules, maps)
            if not rep.preradical_ok:
                ok, detail = False, f"{name}/{alpha.name}: hypotheses unverified"
                break
            if not rep.passed:
                bad = [n for n, good, _ in rep.assertions if not good]
                ok, detail = False, f"{name}/{alpha.name}: {bad}"
                break
            if rep.via_smile != rep.via_annE:
                ok, detail = False, f"{name}/{alpha.name}: smile route != annE route"
                break
        if not ok:
            break
    if ok:
        # golden value: the Frobenius test ideal over F_2[x]/(x^2) is (x)
        a2 = b_x2.algebra
        rep = compute_test_ideal(
            frobenius_star_selector(a2), b_x2.modules, [e.map for e in b_x2.maps]
        )
        x = a2.basis_vector(1)
        if not (rep.via_smile.dim == 1 and rep.via_smile.contains(x)):
            ok, detail = False, "star test ideal over f2_x2 is not (x)"
        else:
            # brute-force oracle on R: elements killed by the q-th power map
            q = frobenius_stable_power(a2)
            nil = [u for u in a2.elements() if not a2.power(u, q).any()]
            sp = submodule_generated(regular_module(a2), nil)
            star0 = frobenius_star_selector(a2)(regular_module(a2))
            if star0 != sp:
                ok, detail = False, "star(R) disagrees with nilpotent brute force"
    _verdict(
        capsys, 3,
        "test-ideal routes agree and the containment chain holds",
        ok, detail,
    )


def test_criterion_4_residual_correspondence(batteries, capsys):
    ok, detail = True, ""
    for name, b in batteries:
        for tid in ("T1", "T2", "T5"):
            v = verify_theorem(tid, b)
            if not v.passed:
                ok, detail = False, f"{name}/{tid}: {v.counterexample}"
                break
        if not ok:
            break
    _verdict(
        capsys, 4,
        "rho/sigma round trips and the property correspondences hold",
        ok, detail,
    )


def test_criterion_5_heredity_limits_torsion(batteries, capsys):
    ok, detail = True, ""
    for name, b in batteries:
        for tid in ("T9", "T10", "T12"):
            v = verify_theorem(tid, b)
            if not v.passed:
                ok, detail = False, f"{name}/{tid}: {v.counterexample}"
                break
        if not ok:
            break
        # degenerate dichotomy: one multiplicative set hits 0, one is units
        flags = sorted(
            (w.contains_zero, w.units_only) for _, w in battery_multsets(b)
        )
        if flags != [(False, True), (True, False)]:
            ok, detail = False, f"{name}: multiplicative sets not a dichotomy"
            break
        # smile(h0(I)) = adic kernel of I, every proper ideal
        for i in enumerate_all_ideals(b.algebra):
            if i.dim == b.algebra.dim:
                continue
            same, why = selectors_agree(
                smile(h0_selector(i)), adic_kernel_selector(i), b.modules
            )
            if not same:
                ok, detail = False, f"{name}: {why}"
                break
        if not ok:
            break
    _verdict(
        capsys, 5,
        "heredity duality, limit exchange and torsion/divisibility hold",
        ok, detail,
    )


def test_criterion_6_trace_base_change(batteries, capsys):
    ok, detail = True, ""
    for name, b in batteries:
        v = verify_theorem("T7", b)
        if not v.passed:
            ok, detail = False, f"{name}: {v.counterexample}"
            break
        m = re.match(r"(\d+) checks", v.note)
        if not m or int(m.group(1)) < 10:
            ok, detail = False, f"{name}: fewer than 10 base-change triples"
            break
    _verdict(
        capsys, 6,
        "trace commutes with the free quadratic base change (>= 10 triples)",
        ok, detail,
    )


def test_criterion_7_mutation_suite(capsys):
    ok, detail = True, ""
    if len(MUTATIONS) < 8:
        ok, detail = False, "fewer than 8 mutations registered"
    if {tid for _, tid, _ in MUTATIONS} != set(THEOREMS):
        ok, detail = False, "some theorem has no covering mutation"
    t0 = time.monotonic()
    if ok:
        for name in SHIPPED:
            b = generate_battery(shipped_algebra(name), seed=0)
            for v in run_suite(b):
                if not v.passed:
                    ok, detail = False, f"{name}/{v.name}: {v.counterexample}"
                    break
            if not ok:
                break
            rep = mutation_suite(b)
            if not rep.all_killed:
                names = [o.mutation for o in rep.survivors]
                ok, detail = False, f"{name}: surviving mutants {names}"
                break
    elapsed = time.monotonic() - t0
    if ok and elapsed >= 60.0:
        ok, detail = False, f"took {elapsed:.1f}s, limit 60s"
    _verdict(
        capsys, 7,
        f"full verify plus mutation suite, zero survivors ({elapsed:.1f}s)",
        ok, detail,
    )


def test_criterion_8_deterministic_reports(capsys):
    suite = shipped_path("suite-default.toml")
    code1 = main(["verify", suite])
    out1 = capsys.readouterr().out
    code2 = main(["verify", suite])
    out2 = capsys.readouterr().out
    ok, detail = True, ""
    if code1 != 0 or code2 != 0:
        ok, detail = False, f"verify exit codes {code1}, {code2}"
    elif out1.encode() != out2.encode():
        ok, detail = False, "reports differ between identical-seed runs"
    elif "RESULT: ALL PASS" not in out1:
        ok, detail = False, "verify did not report ALL PASS"
    _verdict(
        capsys, 8,
        "identical-seed verify runs produce byte-identical reports",
        ok, detail,
    )
