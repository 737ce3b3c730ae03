"""Independent oracles for the test suite.

Each oracle takes a deliberately different route from the library code it
checks: the transform oracle works in the cyclotomic integers, the
zero-set oracle sums unit vectors in floating point (with a margin justified
by an algebraic-norm bound), the LP oracle enumerates polyhedron vertices,
and the dispersiveness oracle sweeps planes point by point.
"""

from fractions import Fraction
from itertools import combinations

import cmath

from zpdtiling import LpInstance, PointSet, RationalFn, RayFn


def random_rational(rng, lo=-9, hi=9, dens=(1, 1, 2, 3, 5)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_rayfn(g, rng, nonneg=False) -> RayFn:
    lo = 0 if nonneg else -9
    at0 = random_rational(rng, lo)
    vals = tuple(random_rational(rng, lo) for _ in range(g.num_lines))
    return RayFn(g, at0, vals)


def random_pointset(g, rng) -> PointSet:
    size = rng.randint(1, g.size)
    idx = rng.sample(range(g.size), size)
    return PointSet(g, tuple(g.points[i] for i in idx))


def cyclotomic_ft(f: RationalFn, t):
    """Exact transform value at t, reducing the bucket sums against the
    p-th cyclotomic polynomial 1 + x + ... + x^(p-1).  Returns None when
    the value is irrational (never happens for ray-type functions)."""
    g = f.group
    buckets = [Fraction(0)] * g.p
    for i, x in enumerate(g.points):
        v = f.values[i]
        if v:
            buckets[g.pairing(t, x)] += v
    tail = buckets[1:]
    if any(b != tail[0] for b in tail[1:]):
        return None
    return buckets[0] - (tail[0] if tail else 0)


def float_indicator_ft_is_zero(a: PointSet, t) -> bool:
    """Numerical unit-vector sum.  Nonzero vanishing sums of p-th roots of
    unity have modulus at least |A|^-(p-2) >= 125^-3 ~ 5e-7 for the sizes
    used in tests, far above the 1e-9 threshold."""
    g = a.group
    s = sum(
        cmath.exp(2j * cmath.pi * g.pairing(t, x) / g.p) for x in a.elems
    )
    return abs(s) < 1e-9


def _solve_square(rows, n):
    """Solve an n x n system given as rows (coeffs..., rhs); None if singular."""
    work = [list(map(Fraction, r)) for r in rows]
    for c in range(n):
        pr = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pr is None:
            return None
        work[c], work[pr] = work[pr], work[c]
        piv = work[c][c]
        work[c] = [v / piv for v in work[c]]
        for i in range(n):
            if i != c and work[i][c] != 0:
                f = work[i][c]
                work[i] = [v - f * w for v, w in zip(work[i], work[c])]
    return [work[i][n] for i in range(n)]


def lp_feasible_vertex_enum(inst: LpInstance) -> bool:
    """Feasibility by exhaustive vertex enumeration.

    Equalities are eliminated by exact row reduction; the remaining
    polyhedron lives over the free variables and inherits pointedness
    from v >= 0, so it is nonempty iff one of its vertices (k tight
    inequalities with a unique solution) satisfies everything.
    """
    n = inst.num_vars
    rows = [
        [Fraction(c) for c in coeffs] + [Fraction(rhs)]
        for coeffs, rhs in inst.eq
    ]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            return False

    free = [c for c in range(n) if c not in pivots]
    k = len(free)
    v0 = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        v0[c] = rows[i][n]
    null = {c: [Fraction(0)] * k for c in range(n)}
    for j, fc in enumerate(free):
        null[fc][j] = Fraction(1)
        for i, c in enumerate(pivots):
            null[c][j] = -rows[i][fc]

    all_ge = list(inst.ge) + [
        (tuple(1 if j == c else 0 for j in range(n)), 0) for c in range(n)
    ]
    ineqs = []
    for coeffs, rhs in all_ge:
        ay = [
            sum(Fraction(coeffs[c]) * null[c][j] for c in range(n))
            for j in range(k)
        ]
        const = sum(Fraction(coeffs[c]) * v0[c] for c in range(n))
        ineqs.append((ay, Fraction(rhs) - const))

    def satisfied(y):
        return all(
            sum(a * yy for a, yy in zip(ay, y)) >= rhs for ay, rhs in ineqs
        )

    if k == 0:
        return satisfied([])
    for combo in combinations(range(len(ineqs)), k):
        sys_rows = [list(ineqs[i][0]) + [ineqs[i][1]] for i in combo]
        y = _solve_square(sys_rows, k)
        if y is not None and satisfied(y):
            return True
    return False


def general_h_lp_instance(a: PointSet) -> LpInstance:
    """Per-point weak pd-tiling LP for p = 2, where the transform of an
    arbitrary h is rational: variables h(x) for x != 0, h(0) fixed to 1."""
    g = a.group
    assert g.p == 2
    n = g.size - 1  # variable j <-> point index j + 1
    eq = []
    for i in range(g.size):
        x = g.points[i]
        coeffs = [0] * n
        const = 0
        for a_pt in a.elems:
            j = g.index(g.sub(x, a_pt))
            if j == 0:
                const = 1
            else:
                coeffs[j - 1] += 1
        eq.append((tuple(coeffs), 1 - const))
    ge = []
    for t in g.points:
        coeffs = [
            1 if g.pairing(t, g.points[j + 1]) == 0 else -1 for j in range(n)
        ]
        ge.append((tuple(coeffs), -1))
    return LpInstance(n, tuple(eq), tuple(ge))


def dispersive_point_oracle(fn: RayFn):
    """Point-level plane sweep: expand to a dense table and compare the
    support's intersection with each plane against {0} and the plane."""
    g = fn.group
    table = fn.expand().values
    support = {i for i in range(g.size) if table[i] != 0}
    from zpdtiling import Hyperplane

    for line in g.lines:
        plane = set(g.hyperplane_point_indices(Hyperplane(line)))
        hit = support & plane
        if hit <= {0} or hit == plane:
            return False, line
    return True, None
