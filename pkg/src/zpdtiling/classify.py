"""Batch experiments over subsets of small groups: affine orbit
reduction, pd-flatness sweeps, dispersiveness bookkeeping, and the
integrality screen for 4-tuples.

Orbit reduction uses the full affine group x -> Mx + b: tiling,
spectrality and weak pd-tiling verdicts only depend on A - A and on the
transform's zero lines, so they are affine-invariant.  The canonical
form of a set is the lexicographically minimal sorted image over the
group; the minimal image always contains 0, so only the |A| translations
placing a member at the origin need scanning.  All the numpy work below
is integer-exact (permutation tables and lexicographic minimization).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import BudgetError
from .funcs import RayFn, autocorrelation_ray
from .groups import Group, group
from .sets import PointSet, find_spectrum, find_tiling_complement
from .tuples import (
    FourTuple,
    average_from_weak_tiling,
    classify_case,
    is_dispersive,
    triangle_tuple,
)
from .weakpd import pd_tiling_feasible

_GL_ENUM_BUDGET = 2_000_000
_PERM_TABLE_BUDGET = 20_000_000
_ORBIT_REPS_BUDGET = 100_000


@lru_cache(maxsize=None)
def _points_array(p: int, d: int) -> np.ndarray:
    return np.array(group(p, d).points, dtype=np.int64)


@lru_cache(maxsize=None)
def _sub_table(p: int, d: int) -> np.ndarray:
    """(n, n) table of point indices: entry [i, j] is the index of x_i - x_j."""
    pts = _points_array(p, d)
    diff = (pts[:, None, :] - pts[None, :, :]) % p
    powers = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (diff @ powers).astype(np.int32)

def _det_mod(mats: np.ndarray, p: int, d: int) -> np.ndarray:
    det = np.zeros(len(mats), dtype=np.int64)
    for sigma in permutations(range(d)):
        sign = 1
        for i in range(d):
            for j in range(i + 1, d):
                if sigma[i] > sigma[j]:
                    sign = -sign
        term = np.ones(len(mats), dtype=np.int64)
        for i in range(d):
            term = term * mats[:, i, sigma[i]] % p
        det = (det + sign * term) % p
    return det


@lru_cache(maxsize=None)
def _gl_perms(p: int, d: int) -> np.ndarray:
    """Point permutations of all invertible matrices, one row per matrix."""
    total = p ** (d * d)
    if total > _GL_ENUM_BUDGET:
        raise BudgetError(
            f"enumerating {total} candidate matrices exceeds the budget"
        )
    idx = np.arange(total, dtype=np.int64)
    entries = [(idx // p**k) % p for k in range(d * d)]
    mats = np.stack(entries, axis=1).reshape(total, d, d)
    mats = mats[_det_mod(mats, p, d) != 0]
    n = p**d
    if mats.shape[0] * n > _PERM_TABLE_BUDGET:
        raise BudgetError(
            f"permutation table {mats.shape[0]}x{n} exceeds the budget"
        )
    pts = _points_array(p, d)
    powers = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    out = np.empty((mats.shape[0], n), dtype=np.int32)
    chunk = max(1, 2_000_000 // max(n, 1))
    for lo in range(0, mats.shape[0], chunk):
        part = mats[lo : lo + chunk]
        images = np.einsum("mij,nj->mni", part, pts) % p
        out[lo : lo + part.shape[0]] = images @ powers
    return out


@lru_cache(maxsize=None)
def _line_perms(p: int, d: int) -> np.ndarray:
    """Line permutations induced by the matrices of _gl_perms."""
    g = group(p, d)
    perms = _gl_perms(p, d)
    rep_idx = np.array([g.index(ln.rep) for ln in g.lines])
    point_line = np.array(g.point_line_indices, dtype=np.int32)
    return point_line[perms[:, rep_idx]]


def affine_canonical(ps: PointSet) -> PointSet:
    """Lexicographically minimal image of the set under x -> Mx + b."""
    g = ps.group
    perms = _gl_perms(g.p, g.d)
    sub = _sub_table(g.p, g.d)
    idxs = np.array(ps.indices, dtype=np.int32)
    best = None
    for a in ps.indices:
        images = perms[:, sub[idxs, a]]
        images.sort(axis=1)
        order = np.lexsort(images.T[::-1])
        cand = tuple(int(v) for v in images[order[0]])
        if best is None or cand < best:
            best = cand
    return PointSet(g, tuple(g.points[i] for i in best))


@lru_cache(maxsize=None)
def _orbit_reps(p: int, d: int, size: int) -> tuple:
    g = group(p, d)
    if size == 1:
        return (((0,) * d,),)
    if size == g.size:
        return (g.points,)
    if size > g.size // 2:
        # complementation commutes with affine maps, so orbits of size s
        # biject with orbits of size |G| - s
        out = set()
        for elems in _orbit_reps(p, d, g.size - size):
            have = set(elems)
            comp = tuple(x for x in g.points if x not in have)
            out.add(affine_canonical(PointSet(g, comp)).elems)
        return tuple(sorted(out))
    out = set()
    for elems in _orbit_reps(p, d, size - 1):
        have = set(elems)
        for q in g.points:
            if q in have:
                continue
            out.add(affine_canonical(PointSet(g, elems + (q,))).elems)
            if len(out) > _ORBIT_REPS_BUDGET:
                raise BudgetError(
                    f"more than {_ORBIT_REPS_BUDGET} orbit representatives"
                )
    return tuple(sorted(out))


def orbit_reps(g: Group, size: int) -> list[PointSet]:
    """Canonical representatives of all size-|A| subsets up to affine
    equivalence (idempotent: every returned set is its own canonical form)."""
    if not 1 <= size <= g.size:
        raise ValueError(f"size must be between 1 and {g.size}")
    return [PointSet(g, e) for e in _orbit_reps(g.p, g.d, size)]


@dataclass(frozen=True)
class SetVerdict:
    elems: tuple
    tiles: bool
    spectral: bool
    feasible: bool
    case: str | None = None
    partner: tuple | None = None
    dispersive: tuple | None = None

    def record(self) -> dict:
        rec = {
            "kind": "set",
            "elems": [list(x) for x in self.elems],
            "size": len(self.elems),
            "tiles": self.tiles,
            "spectral": self.spectral,
            "feasible": self.feasible,
        }
        if self.case is not None:
            rec["case"] = self.case
            rec["partner"] = (
                [list(x) for x in self.partner] if self.partner else None
            )
            rec["dispersive"] = dict(
                zip(("f", "h", "fhat", "hhat"), self.dispersive)
            )
        return rec


def evaluate_set(g: Group, elems, with_case: bool = False) -> SetVerdict:
    a = PointSet(g, elems)
    tiles = find_tiling_complement(a) is not None
    spectral = find_spectrum(a) is not None
    cert = pd_tiling_feasible(a)
    case = partner = dispersive = None
    if with_case and cert is not None and g.d == 3:
        tup = average_from_weak_tiling(a, cert.h)
        dispersive = tuple(is_dispersive(fn)[0] for _, fn in tup.functions)
        res = classify_case(a, tup)
        case = res.label
        partner = res.partner.elems if res.partner is not None else None
    return SetVerdict(a.elems, tiles, spectral, cert is not None, case, partner, dispersive)


def _evaluate_worker(arg) -> SetVerdict:
    p, d, elems, with_case = arg
    return evaluate_set(group(p, d), elems, with_case)


@dataclass(frozen=True)
class SweepReport:
    p: int
    d: int
    mode: str
    sizes: tuple | None
    seed: int | None
    verdicts: tuple

    @property
    def counterexamples(self) -> tuple:
        return tuple(
            v.elems for v in self.verdicts if v.feasible and not v.tiles
        )

    @property
    def pd_flat_confirmed(self) -> bool:
        return not self.counterexamples

    def records(self) -> list[dict]:
        head = {
            "kind": "sweep-header",
            "p": self.p,
            "d": self.d,
            "mode": self.mode,
            "sizes": list(self.sizes) if self.sizes is not None else None,
            "seed": self.seed,
            "count": len(self.verdicts),
        }
        agg = {
            "kind": "aggregate",
            "pd_flat_confirmed": self.pd_flat_confirmed,
            "counterexamples": [
                [list(x) for x in elems] for elems in self.counterexamples
            ],
        }
        return [head] + [v.record() for v in self.verdicts] + [agg]


def pd_flat_sweep(
    g: Group,
    mode: str = "exhaustive",
    sizes=None,
    seed: int | None = None,
    sample_count: int = 1000,
    jobs: int | None = None,
) -> SweepReport:
    """Run tiling / spectrality / weak-pd verdicts over a family of sets.

    Modes: "exhaustive" (all nonempty subsets; refused above 2^16),
    "orbit" (affine orbit representatives of the given sizes), "sample"
    (seeded uniform sets: uniform size, then a uniform subset of that
    size).  For d = 3 every feasible set also gets its 4-tuple case label
    and per-function dispersiveness.  Records keep a deterministic order
    regardless of the worker count.
    """
    if mode == "exhaustive":
        if 2**g.size > 2**16:
            raise BudgetError(
                f"exhaustive sweep over 2^{g.size} subsets refused"
            )
        tasks = []
        for mask in range(1, 2**g.size):
            tasks.append(
                tuple(g.points[i] for i in range(g.size) if mask >> i & 1)
            )
        sizes_out = None
    elif mode == "orbit":
        size_list = list(sizes) if sizes is not None else list(range(1, g.size + 1))
        tasks = []
        for s in size_list:
            tasks.extend(ps.elems for ps in orbit_reps(g, s))
        sizes_out = tuple(size_list)
    elif mode == "sample":
        rng = random.Random(0 if seed is None else seed)
        tasks = []
        for _ in range(sample_count):
            s = rng.randint(1, g.size)
            picks = rng.sample(range(g.size), s)
            tasks.append(tuple(g.points[i] for i in sorted(picks)))
        sizes_out = None
    else:
        raise ValueError(f"unknown sweep mode {mode!r}")

    with_case = g.d == 3
    if jobs and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [(g.p, g.d, elems, with_case) for elems in tasks]
        chunk = max(1, len(args) // (jobs * 8) or 1)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = tuple(pool.map(_evaluate_worker, args, chunksize=chunk))
    else:
        verdicts = tuple(evaluate_set(g, elems, with_case) for elems in tasks)
    return SweepReport(
        g.p,
        g.d,
        mode,
        sizes_out,
        seed if mode == "sample" else None,
        verdicts,
    )


def _is_integral(v) -> bool:
    return isinstance(v, int) or v.denominator == 1


@dataclass(frozen=True)
class IntegralityReport:
    """The two candidate |A| values for a tuple: the mass of f (a set
    generating f directly) and the mass of h (a set generating h as the
    f of the mirrored tuple).  A non-integer candidate rules that side
    out arithmetically."""

    from_f: object
    from_h: object

    @property
    def from_f_integral(self) -> bool:
        return _is_integral(self.from_f)

    @property
    def from_h_integral(self) -> bool:
        return _is_integral(self.from_h)


def integrality_filter(t: FourTuple) -> IntegralityReport:
    return IntegralityReport(t.f.mass, t.h.mass)


def match_autocorrelation(target: RayFn, size: int) -> list[PointSet]:
    """Orbit representatives A of the given size whose averaged,
    normalized autocorrelation equals the target after some linear change
    of coordinates.  Exhaustive over representatives and over GL(d, p)."""
    g = target.group
    lp = _line_perms(g.p, g.d)
    target_sorted = sorted(target.line_values)
    matches = []
    for a in orbit_reps(g, size):
        fa = autocorrelation_ray(g, a.elems).scaled(Fraction(1, size))
        if sorted(fa.line_values) != target_sorted:
            continue
        codes: dict = {}
        fa_codes = np.array(
            [codes.setdefault(v, len(codes)) for v in fa.line_values]
        )
        tg_codes = np.array(
            [codes.get(v, -1) for v in target.line_values]
        )
        if np.any(np.all(fa_codes[lp] == tg_codes, axis=1)):
            matches.append(a)
    return matches


@dataclass(frozen=True)
class ExclusionReport:
    p2_vacuous: bool
    from_f: object
    from_f_integral: bool
    from_h: object
    from_h_integral: bool
    sizes_checked: tuple
    reps_checked: int
    matches: tuple
    positive_control: bool

    @property
    def excluded(self) -> bool:
        return not self.matches and self.positive_control


def triangle_exclusion_p3() -> ExclusionReport:
    """Prove by exhaustion that no point set generates the p = 3 triangle
    tuple by averaging: the f side is ruled out arithmetically (mass
    27/5), and every affine orbit representative of the integral h-side
    size is matched against h over all of GL(3, 3).  A positive control
    (a tuple genuinely generated by a line subgroup) guards against a
    vacuous matcher.  p = 2 is vacuous: the construction rejects it."""
    t = triangle_tuple(3)
    g = group(3, 3)
    filt = integrality_filter(t)
    sizes = []
    matches = []
    reps_checked = 0
    for name, fn, value, integral in (
        ("f", t.f, filt.from_f, filt.from_f_integral),
        ("h", t.h, filt.from_h, filt.from_h_integral),
    ):
        if not integral:
            continue
        size = int(value)
        sizes.append(size)
        reps = orbit_reps(g, size)
        reps_checked += len(reps)
        matches.extend(
            (name, a.elems) for a in match_autocorrelation(fn, size)
        )

    axis = [(0, 0, 0), (0, 0, 1), (0, 0, 2)]
    control_target = autocorrelation_ray(g, axis).scaled(Fraction(1, 3))
    control = bool(match_autocorrelation(control_target, 3))
    return ExclusionReport(
        p2_vacuous=True,
        from_f=filt.from_f,
        from_f_integral=filt.from_f_integral,
        from_h=filt.from_h,
        from_h_integral=filt.from_h_integral,
        sizes_checked=tuple(sizes),
        reps_checked=reps_checked,
        matches=tuple(matches),
        positive_control=control,
    )
