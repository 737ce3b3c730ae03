"""Exact rational-valued functions on (Z_p)^d.

Two representations.  RationalFn is a dense table over all p^d points.
RayFn stores one value at the origin plus one value per punctured line,
for functions constant on every punctured line through 0 (such functions
are automatically even).  Values are ints or fractions.Fraction; floats
are rejected, and every identity computed here is exact.

The Fourier transform of a ray-type function is again ray-type and
rational: the transform of a punctured-line indicator is p - 1 on the
orthogonal hyperplane and -1 off it (a geometric sum of p-th roots of
unity), so with v_L the value on the punctured line L,

    ft(f)(t) = f(0) - sum_L v_L + p * sum_{L in t-perp} v_L   (t != 0)
    ft(f)(0) = f(0) + (p - 1) * sum_L v_L.

No complex arithmetic appears anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import Group, Line, Point

Rational = int | Fraction


def _check_values(values) -> None:
    for v in values:
        if not isinstance(v, (int, Fraction)):
            raise TypeError(f"exact rational expected, got {type(v).__name__}")


def _norm(v: Rational) -> Rational:
    """Collapse integral Fractions to int (equal values, faster arithmetic)."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


@dataclass(frozen=True)
class RationalFn:
    """Dense exact function G -> Q, indexed by the group's point order."""

    group: Group
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.group.size:
            raise ValueError("value table must have length p^d")
        _check_values(self.values)

    @classmethod
    def zero(cls, g: Group) -> "RationalFn":
        return cls(g, (0,) * g.size)

    @classmethod
    def delta(cls, g: Group) -> "RationalFn":
        return cls(g, (1,) + (0,) * (g.size - 1))

    @classmethod
    def constant(cls, g: Group, value: Rational = 1) -> "RationalFn":
        return cls(g, (value,) * g.size)

    @classmethod
    def indicator(cls, g: Group, points) -> "RationalFn":
        table = [0] * g.size
        for x in points:
            table[g.index(x)] = 1
        return cls(g, tuple(table))

    def value_at(self, x: Point) -> Rational:
        return self.values[self.group.index(x)]

    def total(self) -> Rational:
        return sum(self.values)

    def scaled(self, c: Rational) -> "RationalFn":
        return RationalFn(self.group, tuple(_norm(c * v) for v in self.values))

    def __add__(self, other: "RationalFn") -> "RationalFn":
        self._same_group(other)
        return RationalFn(
            self.group, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        self._same_group(other)
        return RationalFn(
            self.group, tuple(a - b for a, b in zip(self.values, other.values))
        )

    def _same_group(self, other) -> None:
        if self.group != other.group:
            raise ValueError("functions live on different groups")

    def convolve(self, other: "RationalFn") -> "RationalFn":
        """(f * g)(x) = sum_y f(x - y) g(y), computed directly; O(p^(2d))."""
        self._same_group(other)
        g = self.group
        n = g.size
        pts = g.points
        index = g.index
        add = g.add
        out = [0] * n
        for j in range(n):
            b = other.values[j]
            if b == 0:
                continue
            y = pts[j]
            av = self.values
            for i in range(n):
                a = av[i]
                if a == 0:
                    continue
                out[index(add(pts[i], y))] += a * b
        return RationalFn(g, tuple(out))


@dataclass(frozen=True)
class RayFn:
    """Function constant on punctured lines: a value at 0 plus one value
    per line, in the group's canonical line order."""

    group: Group
    at_zero: Rational
    line_values: tuple

    def __post_init__(self):
        if len(self.line_values) != self.group.num_lines:
            raise ValueError("need one value per punctured line")
        _check_values(self.line_values)
        _check_values((self.at_zero,))

    @classmethod
    def zero(cls, g: Group) -> "RayFn":
        return cls(g, 0, (0,) * g.num_lines)

    @classmethod
    def delta(cls, g: Group) -> "RayFn":
        return cls(g, 1, (0,) * g.num_lines)

    @classmethod
    def constant(cls, g: Group, value: Rational = 1) -> "RayFn":
        return cls(g, value, (value,) * g.num_lines)

    @classmethod
    def line_indicator(cls, g: Group, line: Line) -> "RayFn":
        """Indicator of the full line L = punctured line + origin."""
        vals = [0] * g.num_lines
        vals[g.line_index(line)] = 1
        return cls(g, 1, tuple(vals))

    @classmethod
    def hyperplane_indicator(cls, g: Group, normal: Line) -> "RayFn":
        """Indicator of the hyperplane annihilated by the given line."""
        vals = [0] * g.num_lines
        for li in g.orthogonal_line_indices(g.line_index(normal)):
            vals[li] = 1
        return cls(g, 1, tuple(vals))

    def value_at(self, x: Point) -> Rational:
        li = self.group.point_line_indices[self.group.index(x)]
        return self.at_zero if li < 0 else self.line_values[li]

    @property
    def mass(self) -> Rational:
        """Total of the expansion: f(0) + (p-1) * sum of line values."""
        return _norm(self.at_zero + (self.group.p - 1) * sum(self.line_values))

    def expand(self) -> RationalFn:
        g = self.group
        table = [self.at_zero] * g.size
        pl = g.point_line_indices
        for i in range(1, g.size):
            table[i] = self.line_values[pl[i]]
        return RationalFn(g, tuple(table))

    def scaled(self, c: Rational) -> "RayFn":
        return RayFn(
            self.group,
            _norm(c * self.at_zero),
            tuple(_norm(c * v) for v in self.line_values),
        )

    def __add__(self, other: "RayFn") -> "RayFn":
        self._same_group(other)
        return RayFn(
            self.group,
            self.at_zero + other.at_zero,
            tuple(a + b for a, b in zip(self.line_values, other.line_values)),
        )

    def __sub__(self, other: "RayFn") -> "RayFn":
        self._same_group(other)
        return RayFn(
            self.group,
            self.at_zero - other.at_zero,
            tuple(a - b for a, b in zip(self.line_values, other.line_values)),
        )

    def multiply(self, other: "RayFn") -> "RayFn":
        """Pointwise product (again ray-type)."""
        self._same_group(other)
        return RayFn(
            self.group,
            _norm(self.at_zero * other.at_zero),
            tuple(
                _norm(a * b)
                for a, b in zip(self.line_values, other.line_values)
            ),
        )

    def _same_group(self, other) -> None:
        if self.group != other.group:
            raise ValueError("functions live on different groups")

    def is_nonnegative(self) -> bool:
        return self.at_zero >= 0 and all(v >= 0 for v in self.line_values)

    def nonzero_line_indices(self) -> frozenset[int]:
        return frozenset(
            li for li, v in enumerate(self.line_values) if v != 0
        )


def ray_average(f: RationalFn) -> RayFn:
    """Average f over the dilations x -> k*x, k = 1..p-1.

    The result takes f(0) at the origin and the mean of f over each
    punctured line on that line; total mass and the value at 0 are
    preserved, and a function already ray-type is returned unchanged.
    """
    g = f.group
    vals = []
    for li in range(g.num_lines):
        s = sum(f.values[i] for i in g.line_point_indices(li))
        vals.append(_norm(Fraction(s, g.p - 1)))
    return RayFn(g, f.values[0], tuple(vals))


def to_ray(f: RationalFn) -> RayFn:
    """Strict conversion: fails unless f is constant on every punctured line."""
    g = f.group
    vals = []
    for li in range(g.num_lines):
        pts = g.line_point_indices(li)
        v = f.values[pts[0]]
        if any(f.values[i] != v for i in pts[1:]):
            raise ValueError("function is not ray-type")
        vals.append(v)
    return RayFn(g, f.values[0], tuple(vals))


def ft_ray(f: RayFn) -> RayFn:
    """Exact Fourier transform of a ray-type function (result on the dual,
    identified with G).  Uses the punctured-line formula quoted in the
    module docstring; everything stays rational."""
    g = f.group
    vals = f.line_values
    total = sum(vals)
    p = g.p
    base = f.at_zero - total
    out = [
        base + p * sum(vals[li] for li in g.orthogonal_line_indices(ni))
        for ni in range(g.num_lines)
    ]
    return RayFn(g, f.at_zero + (p - 1) * total, tuple(_norm(v) for v in out))


def ift_ray(F: RayFn) -> RayFn:
    """Inverse transform: (1/|G|) * ft, so ift_ray(ft_ray(f)) == f exactly
    (ray-type functions are real and even)."""
    return ft_ray(F).scaled(Fraction(1, F.group.size))


def convolve_ray(a: RayFn, b: RayFn) -> RayFn:
    """Exact convolution of two ray-type functions.

    Evaluated at the origin and one representative per line only: the
    convolution is again ray-type (substitute y -> k*y in the defining
    sum), so those values determine it.
    """
    a._same_group(b)
    g = a.group
    table = a.expand().values
    index = g.index
    sub = g.sub
    support = []
    if b.at_zero != 0:
        support.append((g.points[0], b.at_zero))
    for li, v in enumerate(b.line_values):
        if v != 0:
            for i in g.line_point_indices(li):
                support.append((g.points[i], v))

    def value(x: Point) -> Rational:
        acc = 0
        for y, v in support:
            w = table[index(sub(x, y))]
            if w:
                acc += w * v
        return _norm(acc)

    at_zero = value(g.points[0])
    vals = tuple(value(g.lines[li].rep) for li in range(g.num_lines))
    return RayFn(g, at_zero, vals)


def autocorrelation_ray(g: Group, points) -> RayFn:
    """ray_average(1_P * 1_(-P)) computed from pair differences.

    The value on a line is (number of ordered pairs whose difference lies
    on the punctured line) / (p - 1); the value at 0 is |P|.
    """
    pts = [g.check_point(x) for x in points]
    counts = [0] * g.num_lines
    pl = g.point_line_indices
    for x in pts:
        for y in pts:
            if x != y:
                counts[pl[g.index(g.sub(x, y))]] += 1
    vals = tuple(_norm(Fraction(c, g.p - 1)) for c in counts)
    return RayFn(g, len(pts), vals)


@dataclass(frozen=True)
class Decomposition:
    """Greedy representation w*1_G + sum_i c_i 1_{S_i} + sum_i d_i 1_{L_i}
    + m*delta_0 of a ray-type function (S_i full hyperplanes, L_i full
    lines, both including the origin; m absorbs the residual at 0)."""

    group: Group
    w: Rational
    plane_values: tuple  # per hyperplane, in normal-line order; empty for d=2
    line_values: tuple
    m: Rational

    def reconstruct(self) -> RayFn:
        g = self.group
        vals = [self.w + v for v in self.line_values]
        for ni, c in enumerate(self.plane_values):
            if c:
                for li in g.orthogonal_line_indices(ni):
                    vals[li] += c
        at_zero = (
            self.w + sum(self.plane_values) + sum(self.line_values) + self.m
        )
        return RayFn(g, _norm(at_zero), tuple(_norm(v) for v in vals))


def greedy_decompose(f: RayFn) -> Decomposition:
    """Greedy extraction in the fixed global order: the constant term
    first, then one hyperplane at a time (d=3 only; for d=2 hyperplanes
    are lines), then one line at a time.  Nonnegativity is enforced off
    the origin only; the residual at 0 lands in m, which may be negative.
    Reconstruction is exact on the whole domain.

    For d=2 the constant term is additionally capped at f(0) (and at 0
    from below), matching the d=2 case analysis convention.
    """
    g = f.group
    if g.d not in (2, 3):
        raise ValueError("greedy decomposition is defined for d = 2 and 3")
    residual = list(f.line_values)
    if any(v < 0 for v in residual):
        raise ValueError("function must be nonnegative off the origin")
    w = min(residual)
    if g.d == 2:
        w = max(0, min(w, f.at_zero))
    residual = [v - w for v in residual]
    planes = []
    if g.d == 3:
        for ni in range(g.num_lines):
            inside = g.orthogonal_line_indices(ni)
            c = min(residual[li] for li in inside)
            if c:
                for li in inside:
                    residual[li] -= c
            planes.append(_norm(c))
    m = f.at_zero - w - sum(planes) - sum(residual)
    return Decomposition(
        g, _norm(w), tuple(planes), tuple(_norm(v) for v in residual), _norm(m)
    )
