"""Acceptance suite: one test per criterion, every tolerance exact.

Each test prints a single PASS line on success (run with -s or look at
captured output); a failure is an ordinary pytest failure.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

from zpdtiling import (
    Line,
    PointSet,
    RayFn,
    average_from_weak_tiling,
    build_lp_instance,
    classify_case,
    find_spectrum,
    find_tiling_complement,
    ft_ray,
    greedy_decompose,
    group,
    h_from_spectrum,
    h_from_tiling,
    integrality_filter,
    is_dispersive,
    is_tiling,
    pd_flat_sweep,
    pd_tiling_feasible,
    simplex_feasibility,
    to_ray,
    triangle_exclusion_p3,
    triangle_tuple,
    verify_four_tuple,
    verify_pd_tiling,
)

from oracles import dispersive_point_oracle, lp_feasible_vertex_enum, random_rayfn


def _report(n, name):
    print(f"ACCEPTANCE {n} ({name}): PASS")


def test_acceptance_01_fourier_kernel_exactness():
    start = time.monotonic()
    rng = random.Random(101)
    for p in (2, 3, 5):
        for d in (1, 2, 3):
            g = group(p, d)
            fns = [random_rayfn(g, rng) for _ in range(200)]
            for f in fns:
                fhat = ft_ray(f)
                assert ft_ray(fhat) == f.scaled(g.size)  # involution
                assert fhat.at_zero == f.mass  # Parseval at zero
            for i in range(0, 200, 2):
                a, b = fns[i], fns[i + 1]
                dense = a.expand().convolve(b.expand())
                assert ft_ray(to_ray(dense)) == ft_ray(a).multiply(ft_ray(b))
    elapsed = time.monotonic() - start
    assert elapsed < 30, f"took {elapsed:.1f}s"
    _report(1, "Fourier kernel exactness")


def _tiling_pairs(g):
    n = g.size
    for size_a in range(1, n + 1):
        if n % size_a:
            continue
        size_b = n // size_a
        for ea in combinations(g.points, size_a):
            a = PointSet(g, ea)
            for eb in combinations(g.points, size_b):
                b = PointSet(g, eb)
                if is_tiling(a, b):
                    yield a, b


def test_acceptance_02_tiling_certificates():
    for p, d in ((3, 2), (2, 3)):
        g = group(p, d)
        count = 0
        for a, b in _tiling_pairs(g):
            assert verify_pd_tiling(a, h_from_tiling(b).h).ok
            count += 1
        assert count > 0
    _report(2, "tiling certificates verify")


def test_acceptance_03_spectrum_certificates():
    for p, d in ((3, 2), (2, 3)):
        g = group(p, d)
        count = 0
        for size in range(1, g.size + 1):
            for elems in combinations(g.points, size):
                a = PointSet(g, elems)
                s = find_spectrum(a)
                if s is None:
                    continue
                assert verify_pd_tiling(a, h_from_spectrum(a, s).h).ok
                count += 1
        assert count > 0
    _report(3, "spectrum certificates verify")


def test_acceptance_04_pd_flat_dimension_one():
    start = time.monotonic()
    for p in (2, 3, 5, 7):
        g = group(p, 1)
        for size in range(1, g.size + 1):
            for elems in combinations(g.points, size):
                a = PointSet(g, elems)
                feasible = pd_tiling_feasible(a) is not None
                tiles = find_tiling_complement(a) is not None
                assert feasible == tiles == (size in (1, p))
    elapsed = time.monotonic() - start
    assert elapsed < 60, f"took {elapsed:.1f}s"
    _report(4, "pd-flatness in dimension 1")


def test_acceptance_05_pd_flat_dimension_two():
    start = time.monotonic()
    for p in (2, 3):
        g = group(p, 2)
        report = pd_flat_sweep(g, mode="exhaustive")
        assert report.pd_flat_confirmed
        feasible_sizes = {
            len(v.elems) for v in report.verdicts if v.feasible
        }
        assert feasible_sizes <= {1, p, p * p}
    g = group(5, 2)
    report = pd_flat_sweep(g, mode="orbit", sizes=(1, 5, 25))
    assert report.pd_flat_confirmed
    report = pd_flat_sweep(g, mode="sample", seed=20260810, sample_count=1000)
    assert report.pd_flat_confirmed
    elapsed = time.monotonic() - start
    assert elapsed < 600, f"took {elapsed:.1f}s"
    _report(5, "pd-flatness in dimension 2")


def test_acceptance_06_triangle_tuple_and_closed_forms():
    start = time.monotonic()
    for p in (3, 5, 7, 11, 13):
        tup = triangle_tuple(p)
        assert verify_four_tuple(tup).ok
        # closed-form transforms, coefficient by coefficient
        g = tup.group
        axes = [Line((1, 0, 0)), Line((0, 1, 0)), Line((0, 0, 1))]
        dual_planes = RayFn.zero(g)
        dual_lines = RayFn.zero(g)
        for ax in axes:
            dual_planes = dual_planes + RayFn.hyperplane_indicator(g, ax)
            dual_lines = dual_lines + RayFn.line_indicator(g, ax)
        fhat0 = (
            dual_planes.scaled(p**2)
            - dual_lines.scaled(2 * p**2)
            + RayFn.delta(g).scaled(2 * p**3)
        )
        hhat0 = (
            RayFn.constant(g, 2 * p)
            - dual_planes.scaled(2 * p)
            + dual_lines.scaled(p**2)
        )
        assert tup.fhat == fhat0.scaled(Fraction(1, 3 * p - 4))
        assert tup.hhat == hhat0.scaled(Fraction(1, 2 * p - 3))
    elapsed = time.monotonic() - start
    assert elapsed < 30, f"took {elapsed:.1f}s"
    _report(6, "triangle tuple axioms and closed-form transforms")


def test_acceptance_07_non_integrality():
    for p in (5, 7, 11, 13):
        rep = integrality_filter(triangle_tuple(p))
        assert rep.from_f == Fraction(p * p * (2 * p - 3), 3 * p - 4)
        assert rep.from_h == Fraction(p * (3 * p - 4), 2 * p - 3)
        assert not rep.from_f_integral
        assert not rep.from_h_integral
    _report(7, "non-integrality of candidate set sizes")


def test_acceptance_08_p3_exclusion():
    start = time.monotonic()
    rep = triangle_exclusion_p3()
    assert rep.matches == ()
    assert rep.positive_control, "matcher failed its positive control"
    assert rep.p2_vacuous
    elapsed = time.monotonic() - start
    assert elapsed < 600, f"took {elapsed:.1f}s"
    _report(8, "p=3 exhaustive generation exclusion")


def test_acceptance_09_case_analysis_coherence():
    g = group(3, 3)
    report = pd_flat_sweep(g, mode="orbit", sizes=range(1, 10))
    feasible = [v for v in report.verdicts if v.feasible]
    assert feasible, "sweep found no feasible sets at all"
    exceptions = []
    for v in feasible:
        a = PointSet(g, v.elems)
        cert = pd_tiling_feasible(a)
        tup = average_from_weak_tiling(a, cert.h)
        verdicts = [is_dispersive(fn)[0] for _, fn in tup.functions]
        if all(verdicts):
            continue
        res = classify_case(a, tup)
        if res.partner is None or not is_tiling(a, res.partner):
            exceptions.append(v.elems)
    assert exceptions == []
    _report(9, "case analysis returns verified tiling partners")


def test_acceptance_10_dispersiveness_verdicts_recorded():
    recorded = {}
    for p in (5, 7):
        tup = triangle_tuple(p)
        for name, fn in tup.functions:
            verdict, witness = is_dispersive(fn)
            oracle_verdict, oracle_witness = dispersive_point_oracle(fn)
            assert verdict == oracle_verdict
            recorded[(p, name)] = verdict
    print(f"  dispersiveness verdicts: {recorded}")
    _report(10, "dispersiveness verdicts match the plane-sweep oracle")


def test_acceptance_11_lp_oracle_equivalence():
    cases = [(2, 1), (2, 2), (2, 3), (3, 1)]
    for p, d in cases:
        g = group(p, d)
        assert g.num_lines <= 8
        for size in range(1, g.size + 1):
            for elems in combinations(g.points, size):
                inst = build_lp_instance(PointSet(g, elems))
                res = simplex_feasibility(inst)
                assert res.feasible == lp_feasible_vertex_enum(inst)
    _report(11, "simplex verdicts equal vertex-enumeration verdicts")


def test_acceptance_12_greedy_roundtrip_and_sign_pattern():
    rng = random.Random(112)
    grids = [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (5, 3)]
    for trial in range(500):
        p, d = grids[trial % len(grids)]
        g = group(p, d)
        f = random_rayfn(g, rng, nonneg=True)
        dec = greedy_decompose(f)
        assert dec.reconstruct() == f
    f = triangle_tuple(5).f
    dec = greedy_decompose(f)
    assert dec.w == 0
    assert all(c == 0 for c in dec.plane_values)
    support = f.nonzero_line_indices()
    for li, v in enumerate(dec.line_values):
        assert (v > 0) == (li in support)
    assert dec.m < 0
    _report(12, "greedy decomposition round-trip and sign pattern")
