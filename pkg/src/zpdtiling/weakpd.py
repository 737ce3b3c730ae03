"""Weak positive-definite tiling: certificates and exact LP feasibility.

A set A pd-tiles the group weakly when some h >= 0 has h(0) = 1,
1_A * h identically 1, and nonnegative Fourier transform.  Restricting
the search to ray-type h is lossless — if any valid h exists, so are all
its dilations h(k*x) (the transform dilates the other way and the zero
set of the indicator transform is a union of punctured lines), hence so
is their ray-type average — which shrinks the LP to one variable per
punctured line.  Everything below is exact rational arithmetic; the
feasibility verdict is definitive, not numerical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError
from .funcs import RayFn, autocorrelation_ray, ft_ray, ift_ray
from .sets import PointSet, Spectrum, is_spectrum


@dataclass(frozen=True)
class LpInstance:
    """Feasibility problem over nonnegative variables v (one per line,
    the value of h there; h(0) is fixed to 1 and folded into the right
    hand sides).  eq rows mean coeffs . v == rhs, ge rows coeffs . v >= rhs."""

    num_vars: int
    eq: tuple
    ge: tuple


@dataclass(frozen=True)
class Certificate:
    h: RayFn
    provenance: str  # from-tiling | from-spectrum | from-lp
    for_set: PointSet | None = None


@dataclass(frozen=True)
class PdTilingReport:
    """Per-condition verdicts; support_disjoint is implied by the others,
    so its failure alone flags an implementation bug, not a bad input."""

    nonnegative: bool
    unit_at_origin: bool
    transform_nonnegative: bool
    convolves_to_one: bool
    support_disjoint: bool

    @property
    def ok(self) -> bool:
        return (
            self.nonnegative
            and self.unit_at_origin
            and self.transform_nonnegative
            and self.convolves_to_one
            and self.support_disjoint
        )

    def as_dict(self) -> dict:
        return {
            "nonnegative": self.nonnegative,
            "unit_at_origin": self.unit_at_origin,
            "transform_nonnegative": self.transform_nonnegative,
            "convolves_to_one": self.convolves_to_one,
            "support_disjoint": self.support_disjoint,
            "ok": self.ok,
        }


def h_from_tiling(b: PointSet) -> Certificate:
    """Certificate from a tiling complement: the ray average of the
    normalized autocorrelation of B."""
    h = autocorrelation_ray(b.group, b.elems).scaled(Fraction(1, len(b)))
    return Certificate(h, "from-tiling")


def h_from_spectrum(a: PointSet, s: Spectrum) -> Certificate:
    """Certificate from a spectrum, built on the transform side.

    The transform of the certificate is (|G|/|A|^2) times the ray average
    of the autocorrelation of S — an exact rational object — and h is its
    inverse transform.  The squared-modulus form of the same function is
    irrational in general and is never formed.
    """
    g = a.group
    if not is_spectrum(a, s.points):
        raise ValueError("the given point set is not a spectrum of A")
    hhat = autocorrelation_ray(g, s.points).scaled(
        Fraction(g.size, len(a) ** 2)
    )
    return Certificate(ift_ray(hhat), "from-spectrum", a)


def verify_pd_tiling(a: PointSet, h: RayFn) -> PdTilingReport:
    """Exact check of every weak pd-tiling condition, reported separately."""
    g = a.group
    if h.group != g:
        raise ValueError("certificate lives on a different group")
    table = h.expand().values
    convolves = True
    for i in range(g.size):
        x = g.points[i]
        total = 0
        for a_pt in a.elems:
            total += table[g.index(g.sub(x, a_pt))]
        if total != 1:
            convolves = False
            break
    support = True
    for x in a.elems:
        for y in a.elems:
            if x != y and h.value_at(g.sub(x, y)) != 0:
                support = False
                break
        if not support:
            break
    return PdTilingReport(
        nonnegative=h.is_nonnegative(),
        unit_at_origin=h.at_zero == 1,
        transform_nonnegative=ft_ray(h).is_nonnegative(),
        convolves_to_one=convolves,
        support_disjoint=support,
    )


def build_lp_instance(a: PointSet) -> LpInstance:
    """The full ray-type LP for A: one equality (1_A * h)(x) = 1 per point
    of G, one transform-nonnegativity inequality per dual line plus one
    for 0.  No reduction is attempted; redundant exact rows are cheap."""
    g = a.group
    nl = g.num_lines
    pl = g.point_line_indices
    eq = []
    for i in range(g.size):
        x = g.points[i]
        coeffs = [0] * nl
        in_a = 0
        for a_pt in a.elems:
            j = g.index(g.sub(x, a_pt))
            if j == 0:
                in_a = 1
            else:
                coeffs[pl[j]] += 1
        eq.append((tuple(coeffs), 1 - in_a))
    ge = []
    p = g.p
    for ni in range(nl):
        ortho = set(g.orthogonal_line_indices(ni))
        coeffs = tuple(p - 1 if li in ortho else -1 for li in range(nl))
        ge.append((coeffs, -1))
    ge.append(((p - 1,) * nl, -1))
    return LpInstance(nl, tuple(eq), tuple(ge))


@dataclass(frozen=True)
class SimplexResult:
    feasible: bool
    solution: tuple | None
    pivots: int


def simplex_feasibility(inst: LpInstance, pivot_limit: int = 1_000_000) -> SimplexResult:
    """Phase-1 simplex over exact rationals with Bland's anti-cycling rule.

    Feasible iff the artificial-variable optimum is exactly zero; the
    verdict carries no tolerance.  Artificial columns never re-enter the
    basis once they leave.
    """
    n = inst.num_vars
    n_ge = len(inst.ge)
    rows = []
    for coeffs, rhs in inst.eq:
        rows.append(([Fraction(c) for c in coeffs] + [Fraction(0)] * n_ge, Fraction(rhs)))
    for k, (coeffs, rhs) in enumerate(inst.ge):
        slack = [Fraction(0)] * n_ge
        slack[k] = Fraction(-1)
        rows.append(([Fraction(c) for c in coeffs] + slack, Fraction(rhs)))
    m = len(rows)
    if m == 0:
        return SimplexResult(True, (Fraction(0),) * n, 0)

    cols = n + n_ge
    tableau = []
    basis: list = []
    art_cols = set()
    for coeffs, rhs in rows:
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
        tableau.append(coeffs + [rhs])
        basis.append(None)
    # slack column n+k lives only in ge row k; usable as the initial basic
    # variable when orientation left its coefficient at +1
    n_eq = len(inst.eq)
    for k in range(n_ge):
        r = n_eq + k
        if tableau[r][n + k] == 1:
            basis[r] = n + k

    for r in range(m):
        if basis[r] is None:
            j = cols + len(art_cols)
            art_cols.add(j)
            for rr in range(m):
                tableau[rr].insert(-1, Fraction(1) if rr == r else Fraction(0))
            basis[r] = j
    total_cols = cols + len(art_cols)

    obj = [Fraction(0)] * (total_cols + 1)
    for r in range(m):
        if basis[r] in art_cols:
            row = tableau[r]
            for j in range(total_cols):
                obj[j] -= row[j]
            obj[total_cols] -= row[total_cols]

    pivots = 0
    while True:
        enter = None
        for j in range(total_cols):
            if j in art_cols:
                continue
            if obj[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for r in range(m):
            a = tableau[r][enter]
            if a > 0:
                ratio = tableau[r][total_cols] / a
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leave]
                ):
                    best = ratio
                    leave = r
        if leave is None:
            raise InternalError("phase-1 objective unbounded")
        pivots += 1
        if pivots > pivot_limit:
            raise InternalError("pivot limit exceeded; Bland's rule should terminate")
        piv = tableau[leave][enter]
        prow = [v / piv for v in tableau[leave]]
        tableau[leave] = prow
        for r in range(m):
            if r != leave and tableau[r][enter] != 0:
                f = tableau[r][enter]
                tableau[r] = [v - f * w for v, w in zip(tableau[r], prow)]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, prow)]
        basis[leave] = enter

    value = -obj[total_cols]
    if value != 0:
        return SimplexResult(False, None, pivots)
    solution = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            solution[basis[r]] = tableau[r][total_cols]
    return SimplexResult(True, tuple(solution), pivots)


def pd_tiling_feasible(a: PointSet) -> Certificate | None:
    """Decide weak pd-tiling for A and return a verified certificate when
    feasible.

    Presolve: the equality at x = a (a in A) is a sum of nonnegative
    variables equal to zero, so every line meeting (A - A) \\ {0} is zero
    in every feasible point; those columns are eliminated before the
    simplex runs.  This is plain constraint propagation on the instance,
    not an appeal to any structural theorem.
    """
    g = a.group
    inst = build_lp_instance(a)
    pl = g.point_line_indices
    forced = set()
    for x in a.elems:
        for y in a.elems:
            if x != y:
                forced.add(pl[g.index(g.sub(x, y))])
    keep = [li for li in range(inst.num_vars) if li not in forced]
    col_of = {li: k for k, li in enumerate(keep)}

    eq = []
    for coeffs, rhs in inst.eq:
        reduced = tuple(coeffs[li] for li in keep)
        if rhs != 0 and not any(reduced):
            return None
        eq.append((reduced, rhs))
    ge = [(tuple(coeffs[li] for li in keep), rhs) for coeffs, rhs in inst.ge]
    result = simplex_feasibility(LpInstance(len(keep), tuple(eq), tuple(ge)))
    if not result.feasible:
        return None
    values = [Fraction(0)] * inst.num_vars
    for li, k in col_of.items():
        values[li] = result.solution[k]
    h = RayFn(g, 1, tuple(int(v) if v.denominator == 1 else v for v in values))
    report = verify_pd_tiling(a, h)
    if not report.ok:
        raise InternalError(
            f"LP produced a certificate that fails verification: {report.as_dict()}"
        )
    return Certificate(h, "from-lp", a)
