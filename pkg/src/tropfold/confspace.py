"""Tropical configuration points and the sets C_lambda.

``C_lambda`` is the set of tropical points ``l`` of the configuration space
with ``Ed^t(l) = lambda`` and ``W^t(l) >= 0``.  In the chart p the h-part of
such a point is forced to be ``(lambda_2, ..., lambda_n)``; the first edge
component is linear in the u-part and the potential is a minimum of linear
forms (see :mod:`tropfold.tropeval`).  Enumeration therefore solves the
linear equation ``Ed_1^t = lambda_1`` exactly and scans the remaining free
u-coordinates over an integer box that grows until no member touches its
boundary shell.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .plmoves import TropLusztigData, collapse, expand, is_sigma_fixed, sigma_trop_U
from .ratfun import rref
from .rootdata import c_sigma, height, in_coroot_lattice
from .tropeval import Chart

SCHEMA_POINTSET = "tropfold.pointset/1"


class BoxLimitError(RuntimeError):
    """The search box reached ``bound_max`` while members still touched its shell."""

    def __init__(self, message: str, partial_count: int, box: tuple[int, int]):
        super().__init__(f"{message} (partial count {partial_count}, box {box})")
        self.partial_count = partial_count
        self.box = box


@dataclass(frozen=True, order=True)
class TropConfPoint:
    """A tropical point in the chart p: h-part coweights and u-part Lusztig data."""

    h_part: tuple[tuple[int, ...], ...]
    u_part: tuple[TropLusztigData, ...]

    @classmethod
    def from_flat(cls, chart: Chart, coords: Sequence[int]) -> "TropConfPoint":
        hs, us = chart.split([int(c) for c in coords])
        return cls(tuple(hs), tuple(TropLusztigData(chart.word, u) for u in us))

    def flat(self) -> tuple[int, ...]:
        return tuple(x for h in self.h_part for x in h) + tuple(
            x for u in self.u_part for x in u.coords
        )

    def to_dict(self) -> dict:
        return {
            "h_part": [list(h) for h in self.h_part],
            "u_part": [list(u.coords) for u in self.u_part],
        }

    def check_chart(self, chart: Chart) -> None:
        if len(self.h_part) != chart.n - 1 or len(self.u_part) != chart.n - 2:
            raise ValueError("point does not match the chart size")
        if any(u.word != chart.word for u in self.u_part):
            raise ValueError("u-part is not on the standardized chart word")


@dataclass(frozen=True)
class TropPointSet:
    chart_key: str
    lambdas: tuple[tuple[int, ...], ...]
    points: tuple[TropConfPoint, ...]
    box: tuple[int, int] | None = None
    boundary_clean: bool = True
    scans: int = 0

    def __len__(self) -> int:
        return len(self.points)

    @property
    def count(self) -> int:
        return len(self.points)

    def to_dict(self, with_points: bool = True) -> dict:
        d = {
            "schema": SCHEMA_POINTSET,
            "chart": self.chart_key,
            "lambda": [list(x) for x in self.lambdas],
            "count": self.count,
            "box": list(self.box) if self.box else None,
            "boundary_clean": self.boundary_clean,
        }
        if with_points:
            d["points"] = [p.to_dict() for p in self.points]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# membership


def _lambdas(chart: Chart, lambdas) -> tuple[tuple[int, ...], ...]:
    lams = tuple(tuple(int(x) for x in lam) for lam in lambdas)
    if len(lams) != chart.n:
        raise ValueError(f"need {chart.n} coweights, got {len(lams)}")
    for lam in lams:
        if len(lam) != chart.coweight_dim:
            raise ValueError(f"coweight {lam} has wrong length for chart {chart.key}")
    return lams


def membership(chart: Chart, point: TropConfPoint, lambdas, exact: bool = False) -> bool:
    """Whether ``point`` lies in ``C_lambda``.

    Components ``2..n`` of ``Ed^t`` are compared structurally.  ``Ed_1^t``
    and ``W^t`` use the compiled forms, or the RatFun engine with ``exact``.
    """
    lams = _lambdas(chart, lambdas)
    point.check_chart(chart)
    if tuple(point.h_part) != lams[1:]:
        return False
    x = point.flat()
    if exact:
        w, eds = chart.trop_value(point.h_part, [u.coords for u in point.u_part])
        return eds[0] == lams[0] and w >= 0
    cf = chart.compiled
    return cf.Ed1(x) == lams[0] and cf.W_trop(x) >= 0


def root_lattice_ok(chart: Chart, lambdas) -> bool:
    """Necessary condition: ``sum lambda_i`` lies in the coroot lattice of the chart group."""
    lams = _lambdas(chart, lambdas)
    total = [sum(c) for c in zip(*lams)]
    if chart.folded:
        from .rootdata import build_root_datum

        return in_coroot_lattice(build_root_datum(f"A{chart.m - 1}"), chart.embed_coweight(total))
    return in_coroot_lattice(chart.datum, total)


def chart_height(chart: Chart, lambdas) -> Fraction:
    lams = _lambdas(chart, lambdas)
    if chart.folded:
        from .rootdata import build_root_datum

        return height(build_root_datum(f"A{chart.m - 1}"), [chart.embed_coweight(l) for l in lams])
    return height(chart.datum, lams)


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class _Fiber:
    """Affine lattice description of ``{u : Ed_1^t = lambda_1}``."""

    nu: int
    free: list[int]
    pivots: list[int]
    denom: int
    base: np.ndarray  # denom * particular pivot values
    coef: np.ndarray  # denom * pivot dependence on free variables (n_piv x n_free)
    W_u: np.ndarray  # potential linear forms restricted to the u-part
    W_const: np.ndarray  # potential linear forms evaluated on the h-part


def _fiber(chart: Chart, lams) -> _Fiber | None:
    cf = chart.compiled
    d = chart.coweight_dim
    nh = d * (chart.n - 1)
    xh = np.array([x for lam in lams[1:] for x in lam], dtype=np.int64)
    E_h, E_u = cf.E_lin[:, :nh], cf.E_lin[:, nh:]
    rhs = np.array(lams[0], dtype=np.int64) - E_h @ xh
    nu = E_u.shape[1]
    aug = [[Fraction(int(v)) for v in row] + [Fraction(int(r))] for row, r in zip(E_u, rhs)]
    red, piv = rref(aug)
    if nu in piv:
        return None
    free = [c for c in range(nu) if c not in piv]
    denom = 1
    for row in red[: len(piv)]:
        for v in row:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    base = np.array([int(red[i][nu] * denom) for i in range(len(piv))], dtype=np.int64)
    coef = np.array(
        [[int(-red[i][c] * denom) for c in free] for i in range(len(piv))], dtype=np.int64
    ).reshape(len(piv), len(free))
    W_h, W_u = cf.W_lin[:, :nh], cf.W_lin[:, nh:]
    return _Fiber(nu, free, list(piv), denom, base, coef, W_u, W_h @ xh)


def _scan_chunk(fib: _Fiber, lo: int, hi: int, first_values: Sequence[int]) -> np.ndarray:
    """Members of the box with the first free coordinate in ``first_values``."""
    nf = len(fib.free)
    rng = np.arange(lo, hi + 1, dtype=np.int64)
    if nf == 0:
        grid = np.zeros((1, 0), dtype=np.int64)
    else:
        axes = [np.asarray(first_values, dtype=np.int64)] + [rng] * (nf - 1)
        mesh = np.meshgrid(*axes, indexing="ij")
        grid = np.stack([a.ravel() for a in mesh], axis=1)
    num = grid @ fib.coef.T + fib.base if fib.pivots else np.zeros((len(grid), 0), dtype=np.int64)
    ok = np.all(num % fib.denom == 0, axis=1)
    piv_vals = num // fib.denom
    ok &= np.all((piv_vals >= lo) & (piv_vals <= hi), axis=1)
    grid, piv_vals = grid[ok], piv_vals[ok]
    u = np.zeros((len(grid), fib.nu), dtype=np.int64)
    if fib.free:
        u[:, fib.free] = grid
    if fib.pivots:
        u[:, fib.pivots] = piv_vals
    if len(u) == 0:
        return u
    w = u @ fib.W_u.T + fib.W_const
    return u[np.all(w >= 0, axis=1)]


def _scan(fib: _Fiber, lo: int, hi: int, jobs: int, max_cells: int = 2_000_000) -> np.ndarray:
    nf = len(fib.free)
    values = list(range(lo, hi + 1))
    if nf == 0:
        return _scan_chunk(fib, lo, hi, [])
    per_value = (hi - lo + 1) ** (nf - 1)
    step = max(1, max_cells // max(per_value, 1))
    chunks = [values[i : i + step] for i in range(0, len(values), step)]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_scan_chunk, [fib] * len(chunks), [lo] * len(chunks), [hi] * len(chunks), chunks))
    else:
        parts = [_scan_chunk(fib, lo, hi, c) for c in chunks]
    return np.concatenate(parts, axis=0) if parts else np.zeros((0, fib.nu), dtype=np.int64)


def enumerate_C(
    chart: Chart,
    lambdas,
    bound_init: tuple[int, int] | None = None,
    bound_max: int = 256,
    jobs: int = 1,
    check_dominant: bool = True,
) -> TropPointSet:
    """Enumerate ``C_lambda`` in ``chart``.

    The box starts at ``[0, ht(lambda)]`` for every u-coordinate (or
    ``bound_init``) and is doubled towards every side that a member touches,
    until the member set is boundary-clean.  :class:`BoxLimitError` is raised
    once the box width would exceed ``bound_max``.
    """
    lams = _lambdas(chart, lambdas)
    if check_dominant:
        for lam in lams:
            if not chart.is_dominant(lam):
                raise ValueError(f"coweight {lam} is not dominant")
    if not root_lattice_ok(chart, lams):
        return TropPointSet(chart.key, lams, (), None, True, 0)
    if chart.n == 2:
        # no u-part: the only candidate is the h-part itself
        pt = TropConfPoint((lams[1],), ())
        pts = (pt,) if membership(chart, pt, lams) else ()
        return TropPointSet(chart.key, lams, pts, None, True, 1)
    fib = _fiber(chart, lams)
    if fib is None:
        return TropPointSet(chart.key, lams, (), None, True, 0)
    if bound_init is None:
        lo, hi = 0, max(1, math.ceil(chart_height(chart, lams)))
    else:
        lo, hi = bound_init
    scans = 0
    while True:
        members = _scan(fib, lo, hi, jobs)
        scans += 1
        touch_lo = bool(len(members)) and bool((members == lo).any())
        touch_hi = bool(len(members)) and bool((members == hi).any())
        if not (touch_lo or touch_hi):
            break
        width = hi - lo
        if width * 2 > bound_max:
            raise BoxLimitError(f"C_lambda for {lams} not boundary-clean", len(members), (lo, hi))
        if touch_lo:
            lo -= width
        if touch_hi:
            hi += width
    hpart = [x for lam in lams[1:] for x in lam]
    pts = sorted(TropConfPoint.from_flat(chart, hpart + row.tolist()) for row in members)
    return TropPointSet(chart.key, lams, tuple(pts), (lo, hi), True, scans)


# ---------------------------------------------------------------------------
# sigma, fixed points, folding and summation


def _require_sigma(chart: Chart):
    if chart.sigma is None or chart.folded:
        raise ValueError(f"chart {chart.key} carries no diagram automorphism")


def sigma_coweights(chart: Chart, lambdas) -> tuple[tuple[int, ...], ...]:
    _require_sigma(chart)
    return tuple(chart.sigma.on_coweight(lam) for lam in lambdas)


def sigma_trop_conf(chart: Chart, point: TropConfPoint) -> TropConfPoint:
    """``sigma^t`` on a chart point: sigma on each h_i and the PL action on each u_j."""
    _require_sigma(chart)
    sig_u = chart.fold.sigma
    return TropConfPoint(
        tuple(chart.sigma.on_coweight(h) for h in point.h_part),
        tuple(sigma_trop_U(u, sig_u) for u in point.u_part),
    )


def is_fixed(chart: Chart, point: TropConfPoint) -> bool:
    _require_sigma(chart)
    if any(chart.sigma.on_coweight(h) != tuple(h) for h in point.h_part):
        return False
    return all(is_sigma_fixed(u, chart.fold) for u in point.u_part)


def fixed_points(chart: Chart, S: TropPointSet) -> TropPointSet:
    lams = S.lambdas
    if sigma_coweights(chart, lams) != lams:
        raise ValueError("fixed points need sigma-invariant coweights")
    pts = tuple(p for p in S.points if is_fixed(chart, p))
    return TropPointSet(S.chart_key, lams, pts, S.box, S.boundary_clean, S.scans)


def folded_lambdas(chart: Chart, lambdas) -> tuple[tuple[int, ...], ...]:
    """sigma-invariant SL coweights in the fixed-cocharacter basis of the folded chart."""
    if chart.group != "SL":
        raise ValueError("folding is only offered for SL charts")
    return tuple(chart.fold.coweight_to_fixed(lam) for lam in lambdas)


def iota_trop_inverse(chart: Chart, point: TropConfPoint) -> TropConfPoint:
    """A sigma-fixed point of an SL chart in the folded chart."""
    _require_sigma(chart)
    if chart.group != "SL":
        raise ValueError("folding is only offered for SL charts")
    if not is_fixed(chart, point):
        raise ValueError("point is not sigma-fixed")
    return TropConfPoint(
        tuple(chart.fold.coweight_to_fixed(h) for h in point.h_part),
        tuple(collapse(u, chart.fold) for u in point.u_part),
    )


def iota_trop(folded_chart: Chart, point: TropConfPoint) -> TropConfPoint:
    """The embedding of folded-chart points into the ambient SL chart."""
    if not folded_chart.folded:
        raise ValueError("iota_trop needs a folded chart")
    return TropConfPoint(
        tuple(folded_chart.embed_coweight(h) for h in point.h_part),
        tuple(expand(u, folded_chart.fold) for u in point.u_part),
    )


def add_points(p: TropConfPoint, q: TropConfPoint) -> TropConfPoint:
    """Coordinatewise sum ``+_i`` in the standardized chart."""
    if len(p.u_part) != len(q.u_part):
        raise ValueError("points come from different charts")
    for a, b in zip(p.u_part, q.u_part):
        if a.word != b.word:
            raise ValueError("+_i needs both points in the same chart")
    return TropConfPoint(
        tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(p.h_part, q.h_part)),
        tuple(TropLusztigData(a.word, tuple(x + y for x, y in zip(a.coords, b.coords))) for a, b in zip(p.u_part, q.u_part)),
    )


def sum_map_Sigma(chart: Chart, point: TropConfPoint) -> TropConfPoint:
    """``Sigma_i(l)``: ``l + s(l)``, ``l + s(l) + s^2(l)`` or ``l + s(l) + s(l + s(l))``."""
    _require_sigma(chart)
    c = c_sigma(chart.sigma)
    st = lambda p: sigma_trop_conf(chart, p)
    if c == 2:
        return add_points(point, st(point))
    if c == 3:
        s1 = st(point)
        return add_points(add_points(point, s1), st(s1))
    first = add_points(point, st(point))
    return add_points(first, st(first))


def s_map_lambdas(chart: Chart, lambdas) -> tuple[tuple[int, ...], ...]:
    from .rootdata import s_map

    _require_sigma(chart)
    return tuple(s_map(lam, chart.sigma) for lam in lambdas)
