"""Geometry of G = (Z_p)^d: points, punctured lines through 0, hyperplanes.

The dual group is identified with G itself through the pairing
``<t, x> = sum_j t_j * x_j (mod p)``; "dual" is a role at the call site,
not a separate type.  A line always passes through the origin; its
punctured version (the p - 1 nonzero points) is named by the unique
representative whose first nonzero coordinate is 1.  The lexicographic
order of these representatives is the global tie-breaking order used by
every greedy or first-found procedure in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

MAX_ORDER = 10**6

Point = tuple[int, ...]


def is_prime(n: int) -> bool:
    """Deterministic trial division; n never exceeds MAX_ORDER here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Line:
    """A punctured line {k*rep : k = 1..p-1}; rep's first nonzero entry is 1."""

    rep: Point


@dataclass(frozen=True)
class Hyperplane:
    """The annihilator {x : <normal.rep, x> = 0 mod p} of a line."""

    normal: Line


class Group:
    """The group (Z_p)^d together with cached line/hyperplane incidence."""

    def __init__(self, p: int, d: int):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if not 1 <= d <= 4:
            raise ValueError(f"d must be between 1 and 4, got {d}")
        if p**d > MAX_ORDER:
            raise ValueError(f"group order {p}^{d} exceeds ceiling {MAX_ORDER}")
        self.p = p
        self.d = d
        self.size = p**d
        self.num_lines = (p**d - 1) // (p - 1)

    def __eq__(self, other):
        return isinstance(other, Group) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    def __repr__(self):
        return f"Group(p={self.p}, d={self.d})"

    # -- points ------------------------------------------------------------

    @property
    def points(self) -> tuple[Point, ...]:
        """All p^d points in lexicographic order; the index of a point is
        its base-p encoding with the first coordinate most significant."""
        try:
            return self._points
        except AttributeError:
            self._points = tuple(itertools.product(range(self.p), repeat=self.d))
            return self._points

    def index(self, x: Point) -> int:
        i = 0
        for c in x:
            i = i * self.p + c
        return i

    def check_point(self, x) -> Point:
        if len(x) != self.d:
            raise ValueError(f"point {x!r} has wrong length for d={self.d}")
        if any(not isinstance(c, int) or not 0 <= c < self.p for c in x):
            raise ValueError(f"point {x!r} has coordinates outside 0..{self.p - 1}")
        return tuple(x)

    def add(self, x: Point, y: Point) -> Point:
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x: Point, y: Point) -> Point:
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x: Point) -> Point:
        p = self.p
        return tuple((-a) % p for a in x)

    def scale(self, k: int, x: Point) -> Point:
        p = self.p
        return tuple((k * a) % p for a in x)

    def pairing(self, t: Point, x: Point) -> int:
        """<t, x> = sum t_j x_j mod p."""
        if len(t) != self.d or len(x) != self.d:
            raise ValueError("pairing arguments must both have length d")
        return sum(a * b for a, b in zip(t, x)) % self.p

    # -- lines -------------------------------------------------------------

    def line_of(self, x: Point) -> Line:
        """Canonical line through a nonzero point: scale so the first
        nonzero coordinate becomes 1 (unique since F_p is a field)."""
        for c in x:
            if c:
                k = pow(c, -1, self.p)
                return Line(self.scale(k, x))
        raise ValueError("the origin lies on every line")

    @property
    def lines(self) -> tuple[Line, ...]:
        try:
            return self._lines
        except AttributeError:
            self._lines = tuple(
                Line(x) for x in self.points if self._is_canonical_rep(x)
            )
            assert len(self._lines) == self.num_lines
            return self._lines

    def _is_canonical_rep(self, x: Point) -> bool:
        for c in x:
            if c:
                return c == 1
        return False

    def line_index(self, line: Line) -> int:
        try:
            table = self._line_index
        except AttributeError:
            table = self._line_index = {
                ln.rep: i for i, ln in enumerate(self.lines)
            }
        return table[line.rep]

    @property
    def point_line_indices(self) -> tuple[int, ...]:
        """Per point index: the index of its line (-1 for the origin)."""
        try:
            return self._point_line
        except AttributeError:
            table = [-1] * self.size
            for li, ln in enumerate(self.lines):
                for k in range(1, self.p):
                    table[self.index(self.scale(k, ln.rep))] = li
            self._point_line = tuple(table)
            return self._point_line

    def line_point_indices(self, li: int) -> tuple[int, ...]:
        """Point indices of the punctured line number li."""
        try:
            table = self._line_points
        except AttributeError:
            table = self._line_points = [None] * self.num_lines
        if table[li] is None:
            rep = self.lines[li].rep
            table[li] = tuple(
                self.index(self.scale(k, rep)) for k in range(1, self.p)
            )
        return table[li]

    # -- hyperplanes ---------------------------------------------------------

    def perp_hyperplane(self, line: Line) -> Hyperplane:
        return Hyperplane(normal=line)

    def orthogonal_line_indices(self, ni: int) -> tuple[int, ...]:
        """Indices of lines L with <normal_rep, rep_L> = 0, where the
        normal is line number ni; these are the lines inside the
        hyperplane annihilated by ni (there are (p^(d-1)-1)/(p-1))."""
        try:
            table = self._ortho
        except AttributeError:
            table = self._ortho = [None] * self.num_lines
        if table[ni] is None:
            n_rep = self.lines[ni].rep
            table[ni] = tuple(
                li
                for li, ln in enumerate(self.lines)
                if self.pairing(n_rep, ln.rep) == 0
            )
        return table[ni]

    def hyperplane_lines(self, h: Hyperplane) -> tuple[Line, ...]:
        ni = self.line_index(h.normal)
        return tuple(self.lines[li] for li in self.orthogonal_line_indices(ni))

    def hyperplane_point_indices(self, h: Hyperplane) -> tuple[int, ...]:
        n_rep = h.normal.rep
        return tuple(
            i for i, x in enumerate(self.points) if self.pairing(n_rep, x) == 0
        )

    def hyperplane_points(self, h: Hyperplane) -> tuple[Point, ...]:
        return tuple(self.points[i] for i in self.hyperplane_point_indices(h))


@lru_cache(maxsize=None)
def group(p: int, d: int) -> Group:
    """Interned Group instances, so caches are shared across call sites."""
    return Group(p, d)
