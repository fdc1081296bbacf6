"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line (shown in the terminal summary)."""

import itertools
import random
import time
from collections import Counter

import numpy as np
import pytest
from scipy.spatial import ConvexHull, Delaunay

import xcases
from conftest import ACCEPTANCE_LINES, sample_fracs
from sphquad import geometry
from sphquad.angles import (
    AngleVector,
    apply_mask,
    complement_mask_for,
    degeneration_directions,
    in_pyramid,
    pyramid_membership,
)
from sphquad.builders import NetLabel, build_net, enumerate_primitive, parse_label, reduction_witnesses
from sphquad.chains import INF, ZERO, build_chains, count_bounds, transition
from sphquad.errors import DirectionBlocked, NoEligibleFace, QuadrupleBoundary, TargetInfeasible
from sphquad.netcore import is_isomorphic


def record(n, ok, detail):
    ACCEPTANCE_LINES[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[n])
    assert ok, detail


def names(chain):
    return [str(n) for n in chain.nets]


def same_path(chain, expected):
    got = names(chain)
    return got == expected or got == expected[::-1]


# --- 1 -----------------------------------------------------------------------------


def test_criterion_1_catalogue_counts():
    start = time.perf_counter()
    b0 = {str(lab) for lab, _ in enumerate_primitive(0)}
    b1 = {str(lab) for lab, _ in enumerate_primitive(1)}
    b2 = enumerate_primitive(2)
    stratum = set()
    for lab, net in b2:
        co = net.corner_orders()
        if sorted(co) == [0, 0, 1, 1] and co[0] == co[2]:
            stratum.add(str(lab))
    elapsed = time.perf_counter() - start
    want1 = {"X[0,1]", "X[1,0]", "Xbar[0,1]", "Xbar[1,0]", "X'[0,0]", "X'bar[0,0]"}
    want2 = {"Z'[0,0]", "Z[0,1]", "Z[1,0]", "Zbar[0,1]", "Zbar[1,0]", "U[1,1]", "Ubar[1,1]"}
    ok = b0 == {"P0"} and b1 - b0 == want1 and len(b1) == 7 and stratum == want2 and elapsed < 1.0
    record(1, ok, f"bound0={sorted(b0)} added={len(b1 - b0)} stratum={len(stratum)} time={elapsed:.2f}s")


# --- 2 -----------------------------------------------------------------------------

PYRAMID_VERTICES = np.array(
    [(1, 1, 1, 1)] + [tuple(int(i in pair) for i in range(4)) for pair in itertools.combinations(range(4), 2)],
    dtype=float,
)


def test_criterion_2_pyramid_geometry():
    start = time.perf_counter()
    hull = ConvexHull(PYRAMID_VERTICES)
    tri = Delaunay(PYRAMID_VERTICES)
    pts = np.random.default_rng(2).random((100_000, 4))
    inside_hull = tri.find_simplex(pts) >= 0
    dist = np.min(np.abs(pts @ hull.equations[:, :4].T + hull.equations[:, 4]), axis=1)
    mine = np.array([pyramid_membership(*p).status == "interior" for p in pts.tolist()])
    band = dist < 1e-9
    disagree = int(np.sum((mine != inside_hull) & ~band))
    elapsed = time.perf_counter() - start
    record(2, disagree == 0 and elapsed < 10, f"disagreements={disagree} band={int(band.sum())} time={elapsed:.2f}s")


# --- 3 -----------------------------------------------------------------------------


def sample_pyramid(rng, margin=0.0):
    while True:
        a, b, c, d = (rng.uniform(0.01, 0.99) for _ in range(4))
        s = a + b + c + d - 2
        if margin < s < 2 * min(a, b, c, d) - margin:
            return a, b, c, d


def test_criterion_3_area_identities():
    rng = random.Random(3)
    worst = 0.0
    done = 0
    while done < 100:
        a, b, c, d = sample_pyramid(rng, margin=0.01)
        lo, hi = geometry.feasible_interval(a, b, c, d)
        t = rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo))
        cfg = geometry.realize_config(a, b, c, d, t)
        areas = geometry.face_areas(cfg)
        named = geometry.named_areas(areas)
        fa = geometry.face_angles(cfg)
        errs = [
            named["F"] - (a + b + c + d - 2),
            named["bottom"] - (1 - a - b + fa.e),
            named["top"] - (1 - c - d + fa.e),
            named["left"] - (1 - a - d + fa.z),
            named["right"] - (1 - b - c + fa.z),
            sum(areas.values()) - 4,
        ]
        worst = max(worst, max(abs(x) for x in errs))
        done += 1
    record(3, worst < 1e-9, f"configs={done} max_error={worst:.2e}")


# --- 4 -----------------------------------------------------------------------------


def test_criterion_4_degeneration_oracle():
    rng = random.Random(4)
    mismatches = []
    both = 0
    count = 0
    while count < 100:
        a, b, c, d = sample_pyramid(rng, margin=0.01)
        if abs(a + b - c - d) < 0.02 or abs(a + d - b - c) < 0.02:
            continue
        predicted = degeneration_directions(a, b, c, d)
        got = set()
        for direction in geometry.DIRECTIONS:
            try:
                geometry.continue_to_triple(a, b, c, d, direction)
                got.add(direction)
            except (DirectionBlocked, QuadrupleBoundary):
                pass
        if got != set(predicted):
            mismatches.append(((a, b, c, d), sorted(got), sorted(predicted)))
        if {"top", "bottom"} <= got or {"left", "right"} <= got:
            both += 1
        count += 1
    record(4, not mismatches and not both, f"samples={count} mismatches={len(mismatches)} opposite_pairs={both}")


# --- 5 -----------------------------------------------------------------------------


def catalogue_labels(kmax=4, mumax=2):
    for fam in ("P", "X", "X'", "Z", "Z'", "R", "S", "U", "V", "V'", "W"):
        for barred in (False, True):
            if fam == "P" and barred:
                continue
            for k in range(kmax + 1):
                for l in range(kmax + 1):
                    if fam == "P" and (k or l):
                        continue
                    for mu in range(mumax + 1):
                        lab = NetLabel(fam, k, l, barred, mu)
                        try:
                            lab.check_range()
                        except Exception:
                            continue
                        yield lab


def test_criterion_5_complement_parity():
    rng = random.Random(5)
    checked = violations = skipped = 0
    for lab in catalogue_labels():
        try:
            net = build_net(lab)
        except NoEligibleFace:
            skipped += 1
            continue
        sigma = sum(net.corner_orders())
        mask = complement_mask_for(lab)
        for _ in range(100):
            frac = tuple(rng.uniform(0.001, 0.999) for _ in range(4))
            fixed = apply_mask(frac, mask)
            tags = sum(1 for x, y in zip(frac, fixed) if x != y)
            checked += 1
            if tags % 2 != sigma % 2:
                violations += 1
    record(5, violations == 0 and checked > 0, f"label-samples={checked} violations={violations} no-face-skips={skipped}")


# --- 6 -----------------------------------------------------------------------------

X_CHAIN = ["X[0,1]", "X'[0,0]", "X[1,0]"]
RS_CHAIN = ["R[1,1]", "S[1,1]"]
Z_CHAIN = ["V[2,1]", "Z'[1,0]", "Z[1,1]", "Z'[0,1]", "Vbar[2,1]"]
ZP_CHAIN = ["V[3,1]", "Z'[2,0]", "Z[2,1]", "Z'[1,1]", "Z[1,2]", "Z'[0,2]", "Vbar[3,1]"]

WORKED = [
    (
        "chain-x",
        (0, 0, 0, 1),
        lambda a, b, c, d: in_pyramid(a, b, 1 - c, d) and a + c + d < 1 + b and b + c + d > 1 + a,
        X_CHAIN,
    ),
    (
        "chain-rs",
        (0, 0, 1, 1),
        lambda a, b, c, d: in_pyramid(1 - a, 1 - b, c, d) and a + b + c + d < 2,
        RS_CHAIN,
    ),
    (
        "chain-z",
        (0, 1, 0, 2),
        # first inequality of the length-4 condition taken as a+b+d < 1+c (see ledger)
        lambda a, b, c, d: in_pyramid(a, 1 - b, c, d) and a + b + d < 1 + c and b + c + d < 1 + a and a + b + c < 1 + d,
        Z_CHAIN,
    ),
    (
        "chain-zprime",
        (0, 1, 0, 3),
        lambda a, b, c, d: in_pyramid(1 - a, 1 - b, 1 - c, 1 - d) and a + b < c + d and a + d > b + c and a + c > b + d,
        ZP_CHAIN,
    ),
]


def worked_samples(per_example=15):
    rng = random.Random(6)
    out = []
    for name, ints, cond, expected in WORKED:
        for _ in range(per_example):
            fr = sample_fracs(rng, cond)
            out.append((name, AngleVector(ints, fr), expected))
    return out


def w22_regime(av):
    a, b, c, d = av.frac
    s = a + b + c + d
    if s < 2:
        return "w-bottom" if a + b < c + d else "w-right"
    return "v-top" if a + b < c + d else "vprime-right"


def w22_samples(count=200):
    rng = random.Random(66)
    out = []
    while len(out) < count:
        fr = sample_fracs(rng, lambda a, b, c, d: a + b != c + d and a + d != b + c and a + b + c + d != 2)
        av = AngleVector((0, 2, 0, 2), fr)
        feasible_any = any(
            in_pyramid(*apply_mask(fr, complement_mask_for(x))) for x in ("W[2,2]", "V[2,2]", "V'[2,2]", "U[2,2]")
        )
        if feasible_any:
            out.append(av)
    return out


def test_criterion_6_worked_chains():
    failures = []
    for name, av, expected in worked_samples():
        found = build_chains(av)
        if len(found) != 1 or not same_path(found[0], expected) or found[0].length != len(expected) - 1:
            failures.append((name, av.frac, [names(c) for c in found]))
    regimes = Counter()
    for av in w22_samples():
        found = build_chains(av, scope=["W22"])
        regimes[w22_regime(av)] += 1
        if len(found) != 1 or found[0].length != 1:
            failures.append(("chain-w", av.frac, [names(c) for c in found]))
    ok = not failures and len(regimes) == 4
    record(6, ok, f"failures={len(failures)} w22-regimes={dict(regimes)}" + (f" first={failures[0]}" if failures else ""))


# --- 7 -----------------------------------------------------------------------------


def xcase_samples(per_pattern=3):
    rng = random.Random(7)
    out = []
    for n in (2, 3, 4):
        for case, patterns in xcases.all_cases(n).items():
            for pattern in patterns:
                cond = xcases.sample_condition(n, pattern)
                for _ in range(per_pattern):
                    fr = sample_fracs(rng, cond)
                    out.append((n, case, pattern, None if fr is None else AngleVector((0, 0, 0, n), fr)))
    return out


def test_criterion_7_x_case_tables():
    samples = xcase_samples()
    start = time.perf_counter()
    failures = []
    missing = []
    for n, case, pattern, av in samples:
        if av is None:
            missing.append((n, case, pattern))
            continue
        got = xcases.lengths_of(build_chains(av, scope=["X"]))
        if got != xcases.expected_lengths(case, n):
            failures.append((n, case, pattern, got, xcases.expected_lengths(case, n)))
    elapsed = time.perf_counter() - start
    ok = not failures and not missing and elapsed < 5
    record(7, ok, f"samples={len(samples)} failures={len(failures)} unsampled={len(missing)} time={elapsed:.2f}s" + (f" first={failures[0]}" if failures else ""))


# --- 8 -----------------------------------------------------------------------------


def cores(text):
    return [d for d in reduction_witnesses(build_net(parse_label(text))) if d.core_label is not None]


def has_core(text, name):
    want = build_net(parse_label(name))
    return any(is_isomorphic(d.core, want, "unlabeled")[0] for d in cores(text) if d.core_label.core != parse_label(text).core)


def v_core_consistent(text, k, l):
    """A V-type core with parameters (k, l) carrying the same complement pattern as the input."""
    mask = complement_mask_for(parse_label(text))
    for d in cores(text):
        lab = d.core_label
        if lab.family in ("V", "V'") and (lab.k, lab.l) == (k, l) and complement_mask_for(lab) == mask:
            return True
    return False


def test_criterion_8_non_uniqueness():
    checks = {
        "a: S11+D15 has 4 decompositions": len(reduction_witnesses(build_net(parse_label("S[1,1] + D15@side2")))) == 4,
        "a: every core is S11": all(is_isomorphic(d.core, build_net(parse_label("S[1,1]")), "unlabeled")[0] for d in cores("S[1,1] + D15@side2")),
        "b: X01+D24 -> X10": has_core("X[0,1] + D24@side3", "X[1,0]"),
        "b: X01+D24 ~ X10+D24": is_isomorphic(build_net(parse_label("X[0,1] + D24@side3")), build_net(parse_label("X[1,0] + D24@side2")), "unlabeled")[0],
        "c: X12+D24 -> U21": has_core("X[1,2] + D24@side2", "U[2,1]"),
        "c: X21+D24 -> Ubar21": has_core("X[2,1] + D24@side3", "Ubar[2,1]"),
        "c: X11 two sides -> U11, Ubar11": has_core("X[1,1] + D24@side3", "U[1,1]") and has_core("X[1,1] + D24@side2", "Ubar[1,1]"),
        "d: X'10+D15 -> Zbar10": has_core("X'[1,0] + D15@side2", "Zbar[1,0]"),
        "d: X'01+D15 -> Zbar01": has_core("X'[0,1] + D15@side3", "Zbar[0,1]"),
        "d: X'11+D15 -> V-type (2,1), both sides": v_core_consistent("X'[1,1] + D15@side2", 2, 1) and v_core_consistent("X'[1,1] + D15@side3", 2, 1),
        "d: X'12+D15 -> V-type (3,1)": v_core_consistent("X'[1,2] + D15@side2", 3, 1),
        "e: Z10+D24 -> X'bar10": has_core("Z[1,0] + D24@side2", "X'bar[1,0]"),
        "e: Z11 two sides -> V12, Vbar12": has_core("Z[1,1] + D24@side3", "V[1,2]") and has_core("Z[1,1] + D24@side2", "Vbar[1,2]"),
        "e: Z12+D24 -> V22": has_core("Z[1,2] + D24@side2", "V[2,2]"),
        "f: Z'01+D15 -> Z'bar01": has_core("Z'[0,1] + D15@side3", "Z'bar[0,1]"),
        "g: Z'11 two sides -> W22, Wbar22": has_core("Z'[1,1] + D15@side3", "W[2,2]") and has_core("Z'[1,1] + D15@side2", "Wbar[2,2]"),
        "g: Z'21+D15 -> W32": has_core("Z'[2,1] + D15@side3", "W[3,2]"),
        "g: Z'12+D15 -> Wbar32": has_core("Z'[1,2] + D15@side2", "Wbar[3,2]"),
    }
    bad = [k for k, v in checks.items() if not v]
    record(8, not bad, f"fixtures={len(checks)} failed={bad}")


# --- 9 -----------------------------------------------------------------------------

PAIRS = {"top": (0, 1), "bottom": (2, 3), "left": (1, 2), "right": (0, 3)}


def test_criterion_9_transition_lattice():
    rng = random.Random(9)
    done = 0
    errors = []
    exclusive_checked = 0
    while done < 10_000:
        q = tuple(rng.uniform(0.001, 0.999) for _ in range(4))
        if not in_pyramid(*q):
            continue
        direction = rng.choice(sorted(PAIRS))
        try:
            once = transition(q, direction)
        except (DirectionBlocked, TargetInfeasible):
            continue
        back = transition(once, direction)
        if max(abs(x - y) for x, y in zip(back, q)) > 1e-12:
            errors.append(("involution", q, direction))
        done += 1
        # two moves in different lattice directions from the same quad
        for d1, d2 in (("top", "bottom"), ("left", "right")):
            p1 = apply_mask(q, tuple(int(i in PAIRS[d1]) for i in range(4)))
            full = tuple(1 - x for x in q)
            if max(abs(x - y) for x, y in zip(apply_mask(p1, tuple(int(i in PAIRS[d2]) for i in range(4))), full)) > 1e-12:
                errors.append(("composition", q))
            if in_pyramid(*q) and in_pyramid(*full):
                errors.append(("exclusive", q))
            exclusive_checked += 1
    record(9, not errors, f"round-trips={done} exclusivity-checks={exclusive_checked} errors={len(errors)}")


# --- 10 ----------------------------------------------------------------------------


def parity_ok(chain):
    kinds = [e.kind for e in chain.ends]
    if not all(k in (ZERO, INF) for k in kinds):
        return True
    if chain.length % 2 == 0:
        return sorted(kinds) == sorted([ZERO, INF])
    return kinds[0] == kinds[1]


def rs_small_sum(rng):
    return AngleVector((0, 0, 1, 1), sample_fracs(rng, WORKED[1][2]))


def x_case_angles(rng, n, case):
    pattern = xcases.all_cases(n)[case][0]
    return AngleVector((0, 0, 0, n), sample_fracs(rng, xcases.sample_condition(n, pattern)))


def test_criterion_10_modulus_parity():
    checked = bad = 0
    for _, av, _ in worked_samples():
        for ch in build_chains(av):
            checked += 1
            bad += not parity_ok(ch)
    for av in w22_samples():
        for ch in build_chains(av, scope=["W22"]):
            checked += 1
            bad += not parity_ok(ch)
    for _, _, _, av in xcase_samples():
        if av is None:
            continue
        for ch in build_chains(av, scope=["X"]):
            checked += 1
            bad += not parity_ok(ch)
    rng = random.Random(10)
    rs = count_bounds(rs_small_sum(rng))
    rs_ok = rs == {"per_modulus": (0, 0), "small_K": (2, 2), "large_K": (0, 0)}
    x_ok = True
    xb = {}
    for n in (2, 4):
        b1 = count_bounds(x_case_angles(rng, n, "i"), scope=["X"])["per_modulus"]
        b7 = count_bounds(x_case_angles(rng, n, "vii"), scope=["X"])["per_modulus"]
        xb[n] = (b1, b7)
        x_ok &= b1 == (1, 1) and b7 == (n + 1, n + 1)
    ok = bad == 0 and rs_ok and x_ok
    record(10, ok, f"chains={checked} parity-violations={bad} rs-modulus={rs} x-even(i,vii)={xb}")
