"""Tropical evaluation of the potential and of the edge map on the chart p.

A chart point is ``(h_2, ..., h_n; u_2, ..., u_{n-1})`` where each ``h_i`` is
a coweight of the chart group (integer coordinates in the chart datum basis)
and each ``u_j`` is a Lusztig datum on the chart word.  Two evaluation routes
are provided:

* :func:`trop_value` substitutes ``t**exponent`` into the matrix engine over
  :class:`~tropfold.ratfun.RatFun` and reads valuations.  This is the
  reference route.
* :class:`CompiledForms` expands the potential and ``Ed_1`` once as Laurent
  polynomials in the chart coordinates (all coefficients must come out
  positive, which is checked), so that tropicalization becomes a minimum of
  linear forms.  This is the fast route used for enumeration, and the test
  suite cross-checks it against the reference route.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .matrixgroup import Engine, FoldedPinning, Pinning
from .ratfun import RatFun
from .rootdata import (
    FoldedDatum,
    RootDatum,
    build_gl,
    integer_solve,
    build_root_datum,
    fold,
    standard_automorphism,
)
from .weylwords import longest_word, standard_word

CHART_GROUPS = ("GL", "SL", "PGL")


class NotPositiveError(ArithmeticError):
    """A function expected to be positive produced a non-positive coefficient."""


def _ambient_datum(group: str, m: int) -> RootDatum:
    if group == "GL":
        return build_gl(m)
    form = "simply_connected" if group == "SL" else "adjoint"
    return build_root_datum(f"A{m - 1}", form)


def _diag_basis(group: str, m: int) -> list[list[int]]:
    """Columns: chart-datum basis coweights written as diagonal exponent vectors."""
    if group == "GL":
        return [[int(i == j) for i in range(m)] for j in range(m)]
    if group == "SL":
        return [[int(i == j) - int(i == j + 1) for i in range(m)] for j in range(m - 1)]
    return [[int(i <= j) for i in range(m)] for j in range(m - 1)]


class Chart:
    """The chart p for ``n`` decorated flags of a type A chart group.

    ``group`` is the chart group (``GL``, ``SL`` or ``PGL``).  With
    ``folded=True`` (``SL`` only) the chart is the one of the sigma-fixed
    subgroup, built from the folded pinning, ``w0hat`` and ``chi_sigma``;
    its coweights are written in the basis of sigma-fixed cocharacters.
    """

    def __init__(self, group: str, m: int, n: int, folded: bool = False):
        if group not in CHART_GROUPS:
            raise ValueError(f"chart group must be one of {CHART_GROUPS}")
        if n < 2:
            raise ValueError("need n >= 2 flags")
        if folded and (group != "SL" or m < 3):
            raise ValueError("folded charts exist for SL_m with m >= 3")
        self.group, self.m, self.n, self.folded = group, m, n, folded
        self.datum = _ambient_datum(group, m)
        self.sigma = standard_automorphism(self.datum) if m >= 3 else None
        self.fold: FoldedDatum | None = None
        if m >= 3:
            ref = build_root_datum(f"A{m - 1}")
            self.fold = fold(ref, standard_automorphism(ref))
        if folded:
            self.word = longest_word(self.fold.folded)
        elif self.fold is not None:
            self.word = standard_word(self.fold.ambient, self.fold)
        else:
            self.word = (1,)
        basis = _diag_basis(group, m)
        if folded:
            # fixed cocharacters are written in SL coroot coordinates
            basis = [
                [sum(basis[k][i] * v[k] for k in range(m - 1)) for i in range(m)]
                for v in self.fold.fixed_cochars
            ]
        self.basis = basis  # list of columns (diag exponent vectors)

    # ------------------------------------------------------------------
    @property
    def key(self) -> str:
        return f"{self.group}{self.m}{'-folded' if self.folded else ''}-n{self.n}"

    @property
    def N(self) -> int:
        return len(self.word)

    @property
    def coweight_dim(self) -> int:
        return len(self.basis)

    @property
    def u_dim(self) -> int:
        return (self.n - 2) * self.N

    def coweight_to_diag(self, lam: Sequence[int]) -> list[int]:
        return [sum(c[i] * x for c, x in zip(self.basis, lam)) for i in range(self.m)]

    def diag_to_coweight(self, e: Sequence) -> tuple:
        """Chart-datum coordinates of a diagonal exponent vector (mod scalars for PGL).

        The map is linear, so it also converts linear forms given column-wise.
        """
        m = self.m
        if self.group == "GL":
            return tuple(e)
        if self.group == "PGL":
            return tuple(e[i] - e[i + 1] for i in range(m - 1))
        sl = [sum(e[: i + 1]) for i in range(m - 1)]
        if not self.folded:
            return tuple(sl)
        return tuple(sum(r[k] * sl[k] for k in range(m - 1)) for r in self._fixed_left_inverse)

    @cached_property
    def _fixed_left_inverse(self) -> list[list[int]]:
        """Integer ``P`` with ``P F = 1`` where the rows of ``F`` are the fixed cochars."""
        fc = self.fold.fixed_cochars
        r = len(fc)
        out = []
        for i in range(r):
            sol = integer_solve(fc, [int(c == i) for c in range(r)])
            if sol is None:  # pragma: no cover - the fixed sublattice is saturated
                raise ArithmeticError("fixed lattice has no integer left inverse")
            out.append(list(sol))
        return out

    def embed_coweight(self, lam: Sequence[int]) -> tuple:
        """Folded chart coweight as an SL coweight (identity on ambient charts)."""
        if not self.folded:
            return tuple(lam)
        fc = self.fold.fixed_cochars
        return tuple(sum(v[k] * x for v, x in zip(fc, lam)) for k in range(self.m - 1))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        if self.folded:
            return build_root_datum(f"A{self.m - 1}").is_dominant_coweight(self.embed_coweight(lam))
        return self.datum.is_dominant_coweight(lam)

    # engines -----------------------------------------------------------
    def make_engine(self, one=None) -> tuple[Engine, object]:
        """Engine and Whittaker character over the scalar field of ``one``."""
        base = Pinning(self.m, "GL" if self.group == "PGL" else self.group, one)
        if not self.folded:
            return Engine(base), base.chi
        fp = FoldedPinning(base)
        eng = Engine(base, fp.w0hat)
        eng.folded_pinning = fp
        return eng, fp.chi_sigma

    def unipotent(self, engine: Engine, params: Sequence):
        if self.folded:
            return engine.folded_pinning.x_word(self.word, params)
        return engine.p.x_word(self.word, params)

    @cached_property
    def _ratfun_engine(self):
        return self.make_engine(RatFun.const(1))

    # ------------------------------------------------------------------
    def split(self, coords: Sequence[int]) -> tuple[list[tuple], list[tuple]]:
        """Split a flat coordinate vector into h-part and u-part."""
        d = self.coweight_dim
        hs = [tuple(coords[i * d : (i + 1) * d]) for i in range(self.n - 1)]
        off = d * (self.n - 1)
        us = [tuple(coords[off + j * self.N : off + (j + 1) * self.N]) for j in range(self.n - 2)]
        return hs, us

    def flat(self, hs, us) -> tuple:
        return tuple(x for h in hs for x in h) + tuple(x for u in us for x in u)

    def evaluate(self, hs, us, hscale=None, uscale=None, check: bool = False):
        """Potential terms, ``Ed`` and the configuration over RatFun at a chart point.

        Coordinates are substituted as unit monomials ``t**e``.  ``hscale``
        (``n-1`` lists of ``m`` positive rationals) and ``uscale`` (``n-2``
        lists of ``N``) optionally multiply the substituted values by
        positive constants; tropical values must not change.
        """
        eng, chi = self._ratfun_engine
        hdiag = []
        for i, lam in enumerate(hs):
            vals = [RatFun.monomial(x) for x in self.coweight_to_diag(lam)]
            if hscale is not None:
                vals = [v * c for v, c in zip(vals, hscale[i])]
            hdiag.append(vals)
        umats = []
        for j, u in enumerate(us):
            params = [RatFun.monomial(x, 1 if uscale is None else uscale[j][k]) for k, x in enumerate(u)]
            umats.append(self.unipotent(eng, params))
        conf = eng.chart_p(hdiag, umats, check=check)
        terms = eng.potential_terms(conf, chi)
        ed = eng.edge_map_Ed(conf)
        return terms, ed, conf

    def trop_value(self, hs, us, hscale=None, uscale=None) -> tuple[int, list[tuple]]:
        """``(W^t, Ed^t)`` at a chart point via exact RatFun evaluation."""
        terms, ed, _ = self.evaluate(hs, us, hscale, uscale)
        w = min(t.valuation() for t in terms)
        eds = [self.diag_to_coweight([v.valuation() for v in comp]) for comp in ed]
        return w, eds

    def chi_terms_trop(self, hs, us) -> list:
        terms, _, _ = self.evaluate(hs, us)
        return [t.valuation() for t in terms]

    @cached_property
    def compiled(self) -> "CompiledForms":
        return compile_forms(self)


# ---------------------------------------------------------------------------
# compiled Laurent forms


@dataclass
class CompiledForms:
    """Tropical potential and ``Ed_1`` as (min of) integer linear forms.

    For a flat chart coordinate vector ``x`` (h-part then u-part):

    * ``W^t(x) = min_k (W_lin[k] . x)``;
    * ``Ed_1^t(x) = E_lin . x`` in chart-datum coordinates.
    """

    chart_key: str
    W_lin: np.ndarray
    E_lin: np.ndarray
    n_terms: int
    term_index: np.ndarray  # which potential term each row of W_lin comes from

    def W_trop(self, x: Sequence[int]) -> int:
        return int((self.W_lin @ np.asarray(x, dtype=np.int64)).min())

    def W_trop_batch(self, xs: np.ndarray) -> np.ndarray:
        return (xs @ self.W_lin.T).min(axis=1)

    def Ed1(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(v) for v in self.E_lin @ np.asarray(x, dtype=np.int64))

    def term_trop(self, x: Sequence[int]) -> list[int]:
        vals = self.W_lin @ np.asarray(x, dtype=np.int64)
        return [int(vals[self.term_index == k].min()) for k in range(self.n_terms)]


def _laurent_terms(f, ngens: int):
    """Exponent vectors and coefficients of a FracElement with monomial denominator."""
    den = f.denom
    dterms = den.terms()
    if len(dterms) != 1:
        raise NotPositiveError("denominator is not a monomial")
    dmon, dcoef = dterms[0]
    out = []
    for mon, coef in f.numer.terms():
        out.append((tuple(a - b for a, b in zip(mon, dmon)), Fraction(int(coef.numerator), int(coef.denominator)) / Fraction(int(dcoef.numerator), int(dcoef.denominator))))
    return out


@lru_cache(maxsize=None)
def _compile_cached(group: str, m: int, n: int, folded: bool) -> CompiledForms:
    from sympy import QQ
    from sympy.polys.fields import field

    chart = Chart(group, m, n, folded)
    hnames = [f"h{i}_{k}" for i in range(2, n + 1) for k in range(m)]
    unames = [f"a{j}_{k}" for j in range(2, n) for k in range(chart.N)]
    K, *gens = field(",".join(hnames + unames), QQ)
    hg, ug = gens[: len(hnames)], gens[len(hnames) :]
    eng, chi = chart.make_engine(K.one)
    hdiag = [hg[i * m : (i + 1) * m] for i in range(n - 1)]
    umats = [chart.unipotent(eng, ug[j * chart.N : (j + 1) * chart.N]) for j in range(n - 2)]
    conf = eng.chart_p(hdiag, umats)
    terms = eng.potential_terms(conf, chi)
    ed1 = eng.edge_map_Ed(conf)[0]

    d = chart.coweight_dim
    nh = len(hnames)
    ncoord = d * (n - 1) + chart.u_dim

    def pullback(exp) -> list[int]:
        """Generator exponents -> linear form on flat chart coordinates."""
        row = [0] * ncoord
        for i in range(n - 1):
            for k in range(m):
                e = exp[i * m + k]
                if e:
                    for c, col in enumerate(chart.basis):
                        row[i * d + c] += e * col[k]
        for q, e in enumerate(exp[nh:]):
            row[d * (n - 1) + q] += e
        return row

    rows, index = [], []
    for t, term in enumerate(terms):
        lt = _laurent_terms(term, len(gens))
        if not lt:
            raise NotPositiveError(f"potential term {t} vanishes identically")
        for exp, coef in lt:
            if coef <= 0:
                raise NotPositiveError(f"potential term {t} has coefficient {coef}")
            rows.append(pullback(exp))
            index.append(t)
    uniq = {}
    for r, t in zip(rows, index):
        uniq.setdefault((t, tuple(r)), None)
    rows = [list(k[1]) for k in uniq]
    index = [k[0] for k in uniq]

    diag_rows = []
    for entry in ed1:
        lt = _laurent_terms(entry, len(gens))
        if len(lt) != 1:
            raise NotPositiveError("Ed_1 component is not a monomial")
        diag_rows.append(pullback(lt[0][0]))
    diag = np.array(diag_rows, dtype=np.int64)
    # linear map diag exponents -> chart coordinates
    e_rows = []
    for q in range(ncoord):
        col = diag[:, q].tolist()
        e_rows.append(chart.diag_to_coweight(col))
    E_lin = np.array(e_rows, dtype=np.int64).T
    return CompiledForms(chart.key, np.array(rows, dtype=np.int64), E_lin, len(terms), np.array(index))


def compile_forms(chart: Chart) -> CompiledForms:
    return _compile_cached(chart.group, chart.m, chart.n, chart.folded)


@lru_cache(maxsize=None)
def get_chart(group: str, m: int, n: int, folded: bool = False) -> Chart:
    return Chart(group, m, n, folded)


def W_trop(chart: Chart, coords: Sequence[int]) -> int:
    return chart.compiled.W_trop(coords)


def Ed_trop(chart: Chart, coords: Sequence[int]) -> list[tuple]:
    """All ``n`` components; components ``2..n`` are read off the h-part."""
    hs, _ = chart.split(coords)
    return [chart.compiled.Ed1(coords)] + [tuple(h) for h in hs]
