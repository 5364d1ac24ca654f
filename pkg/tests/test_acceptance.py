"""Acceptance gate: one pass/fail line per criterion, exact checks and runtime budgets."""
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from preorderlab import FiniteTopology, NotCompletelyRegular, PreorderLabError, Relation
from preorderlab.cli import main
from preorderlab.closure import isotone_sets_coincide, smallest_closed_preorder
from preorderlab.core import PreorderedSpace
from preorderlab.grid import (
    causal_hull,
    causality_ladder,
    cylinder,
    diamond,
    j_plus,
    minkowski,
    reach_pairs,
    seifert_approx,
)
from preorderlab.lab import enumerate_spaces, example_1_1, preorders, random_space, theorem_suite
from preorderlab.props import (
    is_convex,
    is_I_space,
    is_locally_convex,
    is_normally_preordered,
)
from preorderlab.qpmetric import check_admissible, check_strict, synthesize_qpm
from preorderlab.separation import check_completely_regular, check_continuous, check_isotone, separate_monotone

import oracles

DATA = Path(__file__).parent / "data"
CRITERION_1_THEOREMS = (
    "compact-T2-normal",
    "locally-convex-T2",
    "pointwise-local-convex",
    "locally-convex-I-space",
    "kunzi",
    "class-indistinguishable-weak",
)


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def _small_spaces(n_max):
    for n in range(1, n_max + 1):
        yield from enumerate_spaces(n)


def _random_relation(rng, n):
    density = rng.random() * 0.6
    return Relation(n, tuple(sum(1 << y for y in range(n) if rng.random() < density) for _ in range(n)))


def _random_sample(rng):
    n = rng.randint(1, 4)
    top = FiniteTopology(n, rng.choice(preorders(n)).rows)
    return top, _random_relation(rng, n)


def test_criterion_01_theorem_verification(verdict):
    t0 = time.perf_counter()
    bad = []
    exhaustive = 0
    for s in _small_spaces(3):
        exhaustive += 1
        rep = theorem_suite(s)
        if not rep.passed:
            bad.append(rep.counterexamples())
    rng = random.Random(20240601)
    for i in range(50_000):
        s = random_space(rng.getrandbits(32), rng.randint(4, 6), rng.random() * 0.6, rng.random() * 0.6, repair=i % 2 == 0)
        rep = theorem_suite(s, CRITERION_1_THEOREMS)
        if not rep.passed:
            bad.append(rep.counterexamples())
    dt = time.perf_counter() - t0
    verdict(1, not bad and dt < 120, f"{exhaustive} exhaustive + 50000 sampled spaces, {len(bad)} counterexamples, {dt:.1f}s (< 120s)")


def test_criterion_02_p2_regression(verdict, p2):
    try:
        synthesize_qpm(p2)
        raised = False
    except NotCompletelyRegular:
        raised = True
    ok = (
        bool(is_normally_preordered(p2))
        and not is_convex(p2)
        and not is_locally_convex(p2)
        and bool(is_I_space(p2))
        and not check_completely_regular(p2)
        and raised
    )
    verdict(2, ok, "P2 normal, not convex, not locally convex, I-space, not completely regular, no qpm")


def _independent_valid(space, f, a, b):
    n = space.n
    vals = f.values
    rows = space.order.rows
    if any(vals[x] > vals[y] for x in range(n) for y in range(n) if (rows[x] >> y) & 1):
        return False
    ops = set(oracles.opens(space.top))
    cuts = sorted(set(vals)) + [Fraction(-1), Fraction(2)]
    for t in cuts:
        if sum(1 << x for x in range(n) if vals[x] > t) not in ops:
            return False
        if sum(1 << x for x in range(n) if vals[x] < t) not in ops:
            return False
    return all(vals[x] == 0 for x in range(n) if (a >> x) & 1) and all(vals[x] == 1 for x in range(n) if (b >> x) & 1)


def test_criterion_03_separation(verdict):
    t0 = time.perf_counter()
    spaces = pairs = mismatches = invalid = 0
    for s in _small_spaces(4):
        if not is_normally_preordered(s):
            continue
        spaces += 1
        closed = oracles.closeds(s.top)
        dec = [c for c in closed if oracles.is_decreasing(s, c)]
        inc = [c for c in closed if oracles.is_increasing(s, c)]
        funcs = oracles.chain_functions(s, s.order.rows, s.n + 1)
        for a in dec:
            for b in inc:
                if a & b:
                    continue
                pairs += 1
                exists = any(
                    all(f[x] == 0 for x in oracles.members(a, s.n)) and all(f[x] == s.n for x in oracles.members(b, s.n))
                    for f in funcs
                )
                try:
                    g = separate_monotone(s, a, b)
                except PreorderLabError:
                    g = None
                if (g is not None) != exists:
                    mismatches += 1
                elif g is not None:
                    lib_ok = check_isotone(s, g) and check_continuous(s, g)
                    if not (lib_ok and _independent_valid(s, g, a, b)):
                        invalid += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and invalid == 0 and dt < 600
    verdict(3, ok, f"{spaces} normal spaces, {pairs} pairs, {mismatches} mismatches, {invalid} invalid, {dt:.1f}s (< 600s)")


def test_criterion_04_closure_minimality(verdict):
    rng = random.Random(404)
    bad = 0
    for _ in range(10_000):
        top, r = _random_sample(rng)
        if smallest_closed_preorder(top, r).rows != oracles.smallest_closed_preorder(top, r.rows):
            bad += 1
    verdict(4, bad == 0, f"10000 seeded (topology, R) samples at n <= 4, {bad} disagreements with the intersection oracle")


def test_criterion_05_isotone_coincidence(verdict):
    rng = random.Random(505)
    bad = oracle_bad = 0
    for i in range(10_000):
        top, r = _random_sample(rng)
        space = PreorderedSpace(top, smallest_closed_preorder(top, r))
        if not isotone_sets_coincide(space, r, 5):
            bad += 1
        if i < 1000:
            by_r = oracles.chain_functions(space, r.rows, 5)
            by_order = oracles.chain_functions(space, space.order.rows, 5)
            if by_r != by_order:
                oracle_bad += 1
    ok = bad == 0 and oracle_bad == 0
    verdict(5, ok, f"10000 samples with L=5, {bad} library and {oracle_bad} brute-force (1000 samples) disagreements")


def test_criterion_06_qpm(verdict):
    cr = inadm = istrict = nonstrict = 0
    for s in _small_spaces(4):
        if not s.t2 or not check_completely_regular(s, cross_check=False):
            continue
        cr += 1
        p = synthesize_qpm(s)
        if not check_admissible(s, p):
            inadm += 1
        if is_I_space(s):
            istrict += 1
            if not check_strict(s, p):
                nonstrict += 1
    ok = inadm == 0 and nonstrict == 0 and cr > 0
    verdict(6, ok, f"{cr} completely regular spaces at n <= 4 ({istrict} I-spaces), {inadm} not admissible, {nonstrict} not strict")


def _null_ray_pairs(T, X, p):
    out = set()
    for sx in (1, -1):
        before = [(p[0] - i, p[1] - sx * i) for i in range(1, p[0] + 1) if 0 <= p[1] - sx * i < X]
        after = [(p[0] + j, p[1] + sx * j) for j in range(1, T - p[0]) if 0 <= p[1] + sx * j < X]
        out |= {(a, b) for a in before for b in after}
    return out


def test_criterion_07_grid_ladder(verdict):
    t0 = time.perf_counter()
    M = minkowski(256)
    rung = causality_ladder(M).rung
    rng = np.random.default_rng(7)
    pts = rng.integers(0, 256, size=(10_000, 4))
    pairs = [((int(a), int(b)), (int(c), int(d))) for a, b, c, d in pts]
    got = reach_pairs(M, pairs)
    expect = np.array([oracles.j_plus_closed_form(p, q) for p, q in pairs])
    dt = time.perf_counter() - t0
    mink_ok = rung == "globally-hyperbolic" and np.array_equal(got, expect) and dt < 5

    cyl_rung = causality_ladder(cylinder(64)).rung
    p = (32, 32)
    g = minkowski(64).without(p)
    s, stable = seifert_approx(g, 8)
    J = j_plus(g)
    excess = set(s.difference_pairs(J))
    lad = causality_ladder(g)
    hole_ok = (
        J.issubset(s)
        and excess == _null_ray_pairs(64, 64, p)
        and lad.rung == "stably-causal≈"
        and not lad.checks["causally-simple"]
    )
    ok = mink_ok and cyl_rung == "non-causal" and hole_ok
    detail = (
        f"MINK(256) {rung} in {dt:.2f}s (< 5s); CYL(64) {cyl_rung}; "
        f"MINK(64) minus (32,32) {lad.rung}, seifert excess {len(excess)} null-ray pairs, stabilized={stable}"
    )
    verdict(7, ok, detail)


def test_criterion_08_hull(verdict):
    M = minkowski(64)
    rng = np.random.default_rng(8)
    windows = []
    for _ in range(1000):
        t0, t1 = sorted(int(v) for v in rng.integers(0, 64, 2))
        x0, x1 = sorted(int(v) for v in rng.integers(0, 64, 2))
        windows.append((t0, x0, t1, x1))
    hulls = causal_hull(M, windows)
    bad = sum(not np.array_equal(h, diamond(M, w)) for h, w in zip(hulls, windows))
    verdict(8, bad == 0, f"1000 random windows on MINK(64), {bad} hulls differ from the closed-form diamond")


def test_criterion_09_example_diagnostic(verdict):
    out = []
    for eps in (0.1, 0.01, 0.001):
        t0 = time.perf_counter()
        d = example_1_1(10_000, eps)
        out.append((eps, d.diameter, time.perf_counter() - t0))
    target = 1 - Fraction(1, 10_000)
    ok = all(diam == target and dt < 2 for _, diam, dt in out)
    detail = ", ".join(f"eps={e}: {d} in {dt:.3f}s" for e, d, dt in out)
    verdict(9, ok, f"diameter target {target}; {detail}")


def test_criterion_10_determinism(verdict, monkeypatch, capsys):
    monkeypatch.chdir(DATA)
    commands = [
        ["check", "p2.json"],
        ["separate", "ch3.json", "--A", "0", "--B", "2"],
        ["qpm", "ch3.json", "--strict"],
        ["closure", "s2.json", "diag2.json"],
        ["grid", "mink16_p.json", "ladder", "--seed", "5"],
        ["grid", "cyl8.json", "ladder"],
        ["grid", "mink16.json", "hull", "2,3,9,12"],
        ["grid", "mink4.json", "export", "0,0,3,3"],
        ["search", "convex-not-I-space", "--random", "--n", "6", "--seed", "11"],
        ["search", "normal-not-convex", "--exhaustive", "--n", "3"],
        ["ex11", "--n", "5000", "--eps", "0.2"],
        ["--json", "grid", "mink16_p.json", "ladder"],
        ["--json", "search", "I-space-not-C-space", "--random", "--n", "5", "--seed", "2"],
    ]
    differing = []
    for argv in commands:
        outs = []
        for _ in range(2):
            main(list(argv))
            outs.append(capsys.readouterr().out.encode())
        if outs[0] != outs[1]:
            differing.append(" ".join(argv))
    verdict(10, not differing, f"{len(commands)} seeded commands run twice, {len(differing)} differ")
