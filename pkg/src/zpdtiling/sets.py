"""Point sets in (Z_p)^d: Fourier zero lines, tiling, and spectra.

All decision procedures here are exact and exhaustive.  The key fact:
for t != 0 the indicator transform of A vanishes at t if and only if the
residue counts n_j = |{a in A : <t, a> = j}| are all equal (for prime p,
sum n_j w^j = 0 forces equal coefficients since the p-th cyclotomic
polynomial is 1 + x + ... + x^(p-1)).  That makes the zero set a union
of whole punctured lines and lets every spectrality question reduce to
line membership, with no complex arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .funcs import RationalFn
from .groups import Group, Line, Point


@dataclass(frozen=True)
class PointSet:
    """A nonempty subset of the group, stored sorted and deduplicated."""

    group: Group
    elems: tuple

    def __post_init__(self):
        elems = sorted({self.group.check_point(x) for x in self.elems})
        if not elems:
            raise ValueError("point set must be nonempty")
        object.__setattr__(self, "elems", tuple(elems))

    def __len__(self):
        return len(self.elems)

    def __contains__(self, x):
        return tuple(x) in self._elem_set

    @property
    def _elem_set(self):
        try:
            return self._cached_elem_set
        except AttributeError:
            object.__setattr__(self, "_cached_elem_set", frozenset(self.elems))
            return self._cached_elem_set

    @property
    def indices(self) -> tuple[int, ...]:
        try:
            return self._cached_indices
        except AttributeError:
            idx = tuple(self.group.index(x) for x in self.elems)
            object.__setattr__(self, "_cached_indices", idx)
            return idx

    def indicator(self) -> RationalFn:
        return RationalFn.indicator(self.group, self.elems)

    @property
    def zero_line_indices(self) -> frozenset[int]:
        """Indices of the dual lines on which the indicator transform of
        this set vanishes (computed once, by residue counting)."""
        try:
            return self._cached_zeroset
        except AttributeError:
            zs = frozenset(self._compute_zeroset())
            object.__setattr__(self, "_cached_zeroset", zs)
            return zs

    def _compute_zeroset(self):
        g = self.group
        if len(self.elems) % g.p:
            return []
        quota = len(self.elems) // g.p
        out = []
        for li, line in enumerate(g.lines):
            t = line.rep
            counts = [0] * g.p
            for a in self.elems:
                counts[g.pairing(t, a)] += 1
            if all(c == quota for c in counts):
                out.append(li)
        return out

    def zero_lines(self) -> frozenset[Line]:
        g = self.group
        return frozenset(g.lines[li] for li in self.zero_line_indices)


@dataclass(frozen=True)
class Spectrum:
    """A spectrum witness: |A| pairwise-orthogonal characters, normalized
    to contain the trivial one."""

    group: Group
    points: tuple

    def __post_init__(self):
        pts = sorted({self.group.check_point(x) for x in self.points})
        zero = (0,) * self.group.d
        if zero not in pts:
            raise ValueError("a spectrum is normalized to contain 0")
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)


def is_tiling(a: PointSet, b: PointSet) -> bool:
    """True iff A + B covers the group with no repeated sums, i.e.
    1_A * 1_B is identically 1."""
    if a.group != b.group:
        raise ValueError("sets live on different groups")
    g = a.group
    if len(a) * len(b) != g.size:
        return False
    seen = bytearray(g.size)
    for x in a.elems:
        for y in b.elems:
            i = g.index(g.add(x, y))
            if seen[i]:
                return False
            seen[i] = 1
    return True


def find_tiling_complement(a: PointSet) -> PointSet | None:
    """Exhaustive backtracking search for B with A + B = G.

    Always branches on the smallest uncovered point, trying candidate
    translates in index order, so the first complement found is
    deterministic.  Returns None only after exhausting the search space.
    """
    g = a.group
    if g.size % len(a):
        return None
    target = g.size // len(a)
    cover = bytearray(g.size)
    a_pts = a.elems
    chosen: list[Point] = []

    def place(b: Point, on: int) -> bool:
        touched = []
        for x in a_pts:
            i = g.index(g.add(x, b))
            if cover[i]:
                for j in touched:
                    cover[j] = 0
                return False
            cover[i] = on
            touched.append(i)
        return True

    def unplace(b: Point) -> None:
        for x in a_pts:
            cover[g.index(g.add(x, b))] = 0

    def search() -> bool:
        if len(chosen) == target:
            return True
        g0 = cover.index(0)
        x0 = g.points[g0]
        for x in a_pts:
            b = g.sub(x0, x)
            if place(b, 1):
                chosen.append(b)
                if search():
                    return True
                chosen.pop()
                unplace(b)
        return False

    if search():
        return PointSet(g, tuple(chosen))
    return None


def is_spectrum(a: PointSet, points) -> bool:
    """Exact orthogonality check: |S| = |A| and every nonzero pairwise
    difference lies on a zero line of the indicator transform of A."""
    g = a.group
    pts = [g.check_point(x) for x in points]
    if len(set(pts)) != len(pts) or len(pts) != len(a):
        return False
    zs = a.zero_line_indices
    pl = g.point_line_indices
    for i, t in enumerate(pts):
        for u in pts[i + 1 :]:
            if pl[g.index(g.sub(t, u))] not in zs:
                return False
    return True


def find_spectrum(a: PointSet) -> Spectrum | None:
    """Search for a spectrum: a clique of size |A| containing 0 in the
    graph on the dual group whose edges are pairs with difference on a
    zero line.  (Spectra are translation-invariant, so normalizing to
    contain 0 loses nothing.)  Branch and bound with greedy (degree
    descending) vertex ordering; exhaustive, so None means not spectral.
    """
    g = a.group
    k = len(a)
    if k == 1:
        return Spectrum(g, (g.points[0],))
    zs = a.zero_line_indices
    if not zs:
        return None
    pl = g.point_line_indices
    n = g.size

    diff = [None] * n

    def row(i: int):
        if diff[i] is None:
            xi = g.points[i]
            diff[i] = frozenset(
                j
                for j in range(1, n)
                if j != i and pl[g.index(g.sub(xi, g.points[j]))] in zs
            )
        return diff[i]

    candidates = sorted(
        (i for i in range(1, n) if pl[i] in zs),
        key=lambda i: -len(row(i)),
    )
    if len(candidates) + 1 < k:
        return None

    clique: list[int] = [0]

    def extend(cands) -> bool:
        if len(clique) == k:
            return True
        if len(clique) + len(cands) < k:
            return False
        for pos, c in enumerate(cands):
            if len(clique) + len(cands) - pos < k:
                return False
            clique.append(c)
            nxt = [x for x in cands[pos + 1 :] if x in row(c)]
            if extend(nxt):
                return True
            clique.pop()
        return False

    if extend(candidates):
        return Spectrum(g, tuple(g.points[i] for i in clique))
    return None
