"""Complementary 4-tuples (f, h, ft(f), ft(h)) and their structure theory.

A complementary 4-tuple consists of four ray-type functions satisfying
nine exact axioms: nonnegativity and normalization of f and h, the
convolution identity f * h = 1_G, disjoint supports off 0, the mirror
statements for the transforms (whose convolution must be |G| * 1), and
the mass pairing ft(f)(0) * ft(h)(0) = |G|.  Averaging any weak
pd-tiling over dilations produces such a tuple; the constructions at the
bottom of this module produce tuples that no point set generates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CoefficientSystemError, InternalError
from .funcs import (
    RationalFn,
    RayFn,
    autocorrelation_ray,
    convolve_ray,
    ft_ray,
    ray_average,
)
from .groups import Group, Hyperplane, Line, group
from .sets import PointSet, is_tiling
from .weakpd import verify_pd_tiling


@dataclass(frozen=True)
class FourTuple:
    f: RayFn
    h: RayFn
    fhat: RayFn
    hhat: RayFn

    @classmethod
    def from_pair(cls, f: RayFn, h: RayFn) -> "FourTuple":
        return cls(f, h, ft_ray(f), ft_ray(h))

    @property
    def group(self) -> Group:
        return self.f.group

    @property
    def functions(self) -> tuple:
        return (
            ("f", self.f),
            ("h", self.h),
            ("fhat", self.fhat),
            ("hhat", self.hhat),
        )


@dataclass(frozen=True)
class AxiomReport:
    ray_type: bool
    nonnegative: bool
    normalized: bool
    convolves_to_one: bool
    supports_disjoint: bool
    transforms_nonnegative: bool
    transform_masses: bool
    transforms_convolve: bool
    transform_supports_disjoint: bool
    mass_f: object

    @property
    def flags(self) -> tuple:
        return (
            self.ray_type,
            self.nonnegative,
            self.normalized,
            self.convolves_to_one,
            self.supports_disjoint,
            self.transforms_nonnegative,
            self.transform_masses,
            self.transforms_convolve,
            self.transform_supports_disjoint,
        )

    @property
    def ok(self) -> bool:
        return all(self.flags)

    @property
    def mass_f_is_integer(self) -> bool:
        return isinstance(self.mass_f, int) or self.mass_f.denominator == 1

    def as_dict(self) -> dict:
        names = (
            "ray_type",
            "nonnegative",
            "normalized",
            "convolves_to_one",
            "supports_disjoint",
            "transforms_nonnegative",
            "transform_masses",
            "transforms_convolve",
            "transform_supports_disjoint",
        )
        out = dict(zip(names, self.flags))
        out["ok"] = self.ok
        return out


def _supports_disjoint(a: RayFn, b: RayFn) -> bool:
    if a.at_zero == 0 or b.at_zero == 0:
        return False
    return not (a.nonzero_line_indices() & b.nonzero_line_indices())


def verify_four_tuple(t: FourTuple) -> AxiomReport:
    """Exact check of all nine axioms; each verdict is independent so a
    tampered tuple is localized to the axiom it breaks."""
    g = t.group
    if any(fn.group != g for _, fn in t.functions):
        raise ValueError("tuple members live on different groups")
    one = RayFn.constant(g, 1)
    big = RayFn.constant(g, g.size)
    return AxiomReport(
        ray_type=(t.fhat == ft_ray(t.f) and t.hhat == ft_ray(t.h)),
        nonnegative=(t.f.is_nonnegative() and t.h.is_nonnegative()),
        normalized=(t.f.at_zero == 1 and t.h.at_zero == 1),
        convolves_to_one=(convolve_ray(t.f, t.h) == one),
        supports_disjoint=_supports_disjoint(t.f, t.h),
        transforms_nonnegative=(
            t.fhat.is_nonnegative() and t.hhat.is_nonnegative()
        ),
        transform_masses=(t.fhat.at_zero * t.hhat.at_zero == g.size),
        transforms_convolve=(convolve_ray(t.fhat, t.hhat) == big),
        transform_supports_disjoint=_supports_disjoint(t.fhat, t.hhat),
        mass_f=t.f.mass,
    )


def average_from_weak_tiling(a: PointSet, h1) -> FourTuple:
    """The dilation-averaging pipeline: from a weak pd-tiling (A, h1) to a
    complementary 4-tuple.

    f is the ray average of the normalized autocorrelation of A (the
    dilated copies k*A contribute permuted line values, so averaging them
    equals ray-averaging one of them); h is the ray average of h1.  The
    mass of f equals |A| exactly.
    """
    if isinstance(h1, RationalFn):
        h = ray_average(h1)
    elif isinstance(h1, RayFn):
        h = h1
    else:
        raise TypeError("h1 must be a RationalFn or RayFn")
    report = verify_pd_tiling(a, h)
    if not report.ok:
        raise ValueError(
            f"(A, h1) is not a weak pd-tiling: {report.as_dict()}"
        )
    f = autocorrelation_ray(a.group, a.elems).scaled(Fraction(1, len(a)))
    return FourTuple.from_pair(f, h)


def is_dispersive(fn: RayFn) -> tuple[bool, Hyperplane | None]:
    """Whether the support of fn meets every 2-dimensional subspace
    non-trivially: on each plane, some line in the support and some line
    out of it.  Only meaningful (and only allowed) for d = 3.  Returns
    the verdict and a violating plane when there is one."""
    g = fn.group
    if g.d != 3:
        raise ValueError("dispersiveness is a d = 3 notion")
    for ni in range(g.num_lines):
        inside = g.orthogonal_line_indices(ni)
        hit = sum(1 for li in inside if fn.line_values[li] != 0)
        if hit == 0 or hit == len(inside):
            return False, Hyperplane(g.lines[ni])
    return True, None


@dataclass(frozen=True)
class CaseResult:
    label: str
    partner: PointSet | None
    witness: Hyperplane | None = None


def _full_support(fn: RayFn) -> bool:
    return fn.at_zero != 0 and all(v != 0 for v in fn.line_values)


def _empty_plane(fn: RayFn) -> int | None:
    g = fn.group
    for ni in range(g.num_lines):
        if all(fn.line_values[li] == 0 for li in g.orthogonal_line_indices(ni)):
            return ni
    return None


def _covered_plane(fn: RayFn) -> int | None:
    g = fn.group
    for ni in range(g.num_lines):
        if all(fn.line_values[li] != 0 for li in g.orthogonal_line_indices(ni)):
            return ni
    return None


def classify_case(a: PointSet | None, t: FourTuple) -> CaseResult:
    """Case analysis for d = 3 tuples: either some member function has a
    trivial intersection with a plane (and then A tiles, with an explicit
    subgroup partner), or the tuple is fully dispersive.

    With a set A the returned partner is re-verified with is_tiling and
    an InternalError is raised on mismatch; in tuple-only mode (a=None)
    only the label and witness are reported.
    """
    g = t.group
    if g.d != 3:
        raise ValueError("case analysis applies to d = 3")
    if a is not None and a.group != g:
        raise ValueError("set and tuple live on different groups")
    report = verify_four_tuple(t)
    if not report.ok:
        raise ValueError(f"not a complementary 4-tuple: {report.as_dict()}")

    def finish(label, partner_elems, witness=None):
        partner = None
        if a is not None and partner_elems is not None:
            partner = PointSet(g, partner_elems)
            if not is_tiling(a, partner):
                raise InternalError(
                    f"case {label} produced partner failing the tiling check"
                )
        return CaseResult(label, partner, witness)

    zero = (g.points[0],)
    # Case I: some support is the whole group
    if _full_support(t.f):
        return finish("I(a)", zero)
    if _full_support(t.h):
        return finish("I(b)", g.points)
    if _full_support(t.fhat):
        return finish("I(c)", g.points)
    if _full_support(t.hhat):
        return finish("I(d)", zero)

    def line_partner():
        # a full line avoided by supp f; exists because Case I(a) failed
        for li, v in enumerate(t.f.line_values):
            if v == 0:
                return zero + tuple(
                    g.points[i] for i in g.line_point_indices(li)
                )
        raise InternalError("no zero line of f after Case I was excluded")

    # Case II: some support meets a plane only at the origin
    ni = _empty_plane(t.f)
    if ni is not None:
        plane = Hyperplane(g.lines[ni])
        return finish("II(a)", g.hyperplane_points(plane), plane)
    ni = _empty_plane(t.h)
    if ni is not None:
        return finish("II(b)", line_partner(), Hyperplane(g.lines[ni]))
    ni = _empty_plane(t.fhat)
    if ni is not None:
        return finish("II(c)", line_partner(), Hyperplane(g.lines[ni]))
    ni = _empty_plane(t.hhat)
    if ni is not None:
        # supp fhat is not the whole dual (Case I(c) failed), so some dual
        # line is free of it and f vanishes on the plane it annihilates
        for li, v in enumerate(t.fhat.line_values):
            if v == 0:
                plane = Hyperplane(g.lines[li])
                return finish(
                    "II(d)", g.hyperplane_points(plane), Hyperplane(g.lines[ni])
                )
        raise InternalError("no zero dual line after Case I was excluded")

    # Case III would mean some support contains a whole plane; the axioms
    # then force the complementary support to be empty on it, which Case
    # II above would already have caught.
    for _, fn in t.functions:
        ni = _covered_plane(fn)
        if ni is not None:
            raise InternalError(
                "support covers a plane but no Case II applied; axioms violated"
            )
    return CaseResult("dispersive", None, None)


def triangle_tuple(p: int) -> FourTuple:
    """The tuple carried by a projective triangle: the three coordinate
    planes S_i = {x_i = 0} and the three coordinate axes.

    With f0 = 2*1_G - 2*sum(1_{S_i}) + p*sum(1_{axis_i}) and
    h0 = sum(1_{S_i}) - 2*sum(1_{axis_i}) + 2p*delta_0, the pair
    f = f0/(3p-4), h = h0/(2p-3) is a complementary 4-tuple whose four
    members all turn out dispersive.  Any triangle of planes is linearly
    equivalent to this one, so one representative suffices.
    """
    if p == 2:
        raise ValueError("the triangle normalizations degenerate at p = 2")
    g = group(p, 3)
    axes = [Line((1, 0, 0)), Line((0, 1, 0)), Line((0, 0, 1))]
    planes_sum = RayFn.zero(g)
    axes_sum = RayFn.zero(g)
    for ax in axes:
        planes_sum = planes_sum + RayFn.hyperplane_indicator(g, ax)
        axes_sum = axes_sum + RayFn.line_indicator(g, ax)
    f0 = RayFn.constant(g, 2) - planes_sum.scaled(2) + axes_sum.scaled(p)
    h0 = planes_sum - axes_sum.scaled(2) + RayFn.delta(g).scaled(2 * p)
    f = f0.scaled(Fraction(1, 3 * p - 4))
    h = h0.scaled(Fraction(1, 2 * p - 3))
    return FourTuple.from_pair(f, h)


def _cross(p: int, u, v):
    return (
        (u[1] * v[2] - u[2] * v[1]) % p,
        (u[2] * v[0] - u[0] * v[2]) % p,
        (u[0] * v[1] - u[1] * v[0]) % p,
    )


def _solve_unique(rows, unknowns: int):
    """Solve an overdetermined exact linear system (coeffs..., rhs) rows;
    raise unless it has exactly one solution."""
    work = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(unknowns):
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        piv = work[r][c]
        work[r] = [v / piv for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [v - f * w for v, w in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(work)):
        if work[i][unknowns] != 0:
            raise CoefficientSystemError("inconsistent coefficient system", rows)
    if len(pivots) < unknowns:
        raise CoefficientSystemError("underdetermined coefficient system", rows)
    sol = [Fraction(0)] * unknowns
    for i, c in enumerate(pivots):
        sol[c] = work[i][unknowns]
    return tuple(sol)


def near_pencil_tuple(p: int, k: int, points=None) -> FourTuple:
    """Generalized construction seeded by a near-pencil: k projective
    points with k-1 on a common line and one outside.

    h is positive exactly on the connecting lines minus the points
    themselves; f is supported on the complement.  The coefficients are
    not transcribed from anywhere: the support pattern fixes, per orbit
    of the configuration, a handful of unknown line values, the required
    zero sets of the two transforms become exact linear equations in
    them, and the unique solution is verified against all nine axioms
    before being returned (CoefficientSystemError otherwise).
    """
    if p == 2:
        raise ValueError("construction targets odd p")
    g = group(p, 3)
    if not 3 <= k <= p + 1:
        raise ValueError(f"k must satisfy 3 <= k <= p+1 = {p + 1}")

    if points is None:
        apex_li = g.line_index(Line((0, 0, 1)))
        base_normal_li = apex_li  # the plane {x_3 = 0} has normal (0,0,1)
        base_members = g.orthogonal_line_indices(base_normal_li)
        collinear = list(base_members[: k - 1])
    else:
        config = sorted({g.line_index(g.line_of(tuple(x))) for x in points})
        if len(config) != k:
            raise ValueError("need k distinct projective points")
        base_normal_li = None
        for ni in range(g.num_lines):
            members = set(g.orthogonal_line_indices(ni))
            on = [li for li in config if li in members]
            if len(on) == k:
                raise ValueError("all points are collinear; no outside point")
            if len(on) == k - 1 and base_normal_li is None:
                base_normal_li = ni
                collinear = on
        if base_normal_li is None:
            raise ValueError("no line through k-1 of the points")
        apex_li = next(li for li in config if li not in collinear)

    apex_rep = g.lines[apex_li].rep
    base_members = set(g.orthogonal_line_indices(base_normal_li))
    pencil_normals = []
    for li in collinear:
        n = g.line_of(_cross(p, g.lines[li].rep, apex_rep))
        pencil_normals.append(g.line_index(n))
    config_plane_normals = [base_normal_li] + pencil_normals

    base_interior = base_members - set(collinear)
    pencil_interior = set()
    for ni in pencil_normals:
        pencil_interior |= set(g.orthogonal_line_indices(ni))
    pencil_interior -= {apex_li} | set(collinear)
    covered = base_members | {
        li for ni in pencil_normals for li in g.orthogonal_line_indices(ni)
    }
    outside = set(range(g.num_lines)) - covered

    def channel(line_set, at_zero=0):
        vals = tuple(1 if li in line_set else 0 for li in range(g.num_lines))
        return RayFn(g, at_zero, vals)

    def solve(channels, const, zero_lines):
        hats = [ft_ray(ch) for ch in channels]
        chat = ft_ray(const)
        rows = [
            tuple(h.line_values[li] for h in hats) + (-chat.line_values[li],)
            for li in sorted(zero_lines)
        ]
        return _solve_unique(rows, len(channels))

    one = RayFn.delta(g)  # the fixed value 1 at the origin
    apex_set = {apex_li}
    collinear_set = set(collinear)
    normals_set = set(config_plane_normals)

    zero_h = {
        ti
        for ti in range(g.num_lines)
        if (
            g.pairing(g.lines[ti].rep, apex_rep) == 0
            or any(
                g.pairing(g.lines[ti].rep, g.lines[li].rep) == 0
                for li in collinear
            )
        )
        and ti not in normals_set
    }
    zero_f = normals_set | {
        ti
        for ti in range(g.num_lines)
        if g.pairing(g.lines[ti].rep, apex_rep) != 0
        and all(
            g.pairing(g.lines[ti].rep, g.lines[li].rep) != 0
            for li in collinear
        )
    }

    h_channels = [channel(base_interior), channel(pencil_interior)]
    alpha, beta = solve(h_channels, one, zero_h)
    f_channels = [channel(outside), channel(collinear_set), channel(apex_set)]
    gamma, delta, eps = solve(f_channels, one, zero_f)

    h = one + h_channels[0].scaled(alpha) + h_channels[1].scaled(beta)
    f = (
        one
        + f_channels[0].scaled(gamma)
        + f_channels[1].scaled(delta)
        + f_channels[2].scaled(eps)
    )
    tup = FourTuple.from_pair(f, h)
    report = verify_four_tuple(tup)
    if not report.ok:
        raise CoefficientSystemError(
            f"solved coefficients fail verification: {report.as_dict()}",
            {"h": (alpha, beta), "f": (gamma, delta, eps)},
        )
    return tup
