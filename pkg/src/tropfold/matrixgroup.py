"""Type A matrix realisation of decorated flags, the invariants ed/an and the chart p.

Everything is generic over an exact field whose elements support ``+ - * /``
and comparison with ``0`` (``Fraction``, :class:`~tropfold.ratfun.RatFun`,
sympy field elements).  A decorated flag ``A = g U`` is represented by ``g``;
the underlying flag ``pi(A)`` is the Borel ``g B g^{-1}``, also represented
by ``g``.

Conventions (``m`` = matrix size, indices 1-based):

* ``x_i(a) = 1 + a E_{i,i+1}``, ``y_i(a) = 1 + a E_{i+1,i}``,
  ``alpha_i^vee(c) = diag(.., c, 1/c, ..)`` at positions ``i, i+1``.
* ``sbar_i = y_i(1) x_i(-1) y_i(1)`` and ``w0bar`` is their product along the
  lexicographically smallest reduced word of ``w_0``.
* ``s_G = w0bar^2 = (-1)^{m-1}``.
* The outer involution is ``sigma(g) = J g^{-T} J^{-1}`` with
  ``J_{i, m+1-i} = (-1)^i``; it satisfies ``sigma(x_i(a)) = x_{m-i}(a)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .ratfun import SingularMatrixError, det, identity, lu, mat_inv, mat_mul
from .rootdata import FoldedDatum, build_root_datum, fold, standard_automorphism
from .weylwords import longest_word

Mat = list  # list of rows


class GenericityError(ArithmeticError):
    """A configuration is not generic where the construction requires it."""


class PinningIdentityError(AssertionError):
    """A pinning relation failed to hold (a programming error)."""


GROUPS = ("GL", "SL", "PGL")


def _eq(a: Mat, b: Mat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _scale(a: Mat, c) -> Mat:
    return [[c * x for x in row] for row in a]


def transpose(a: Mat) -> Mat:
    return [list(r) for r in zip(*a)]


@dataclass(frozen=True)
class GroupElement:
    """An ``m x m`` matrix tagged with the group it is meant to lie in."""

    matrix: tuple
    group: str

    @classmethod
    def of(cls, mat: Mat, group: str) -> "GroupElement":
        return cls(tuple(tuple(r) for r in mat), group)

    def rows(self) -> Mat:
        return [list(r) for r in self.matrix]


class Pinning:
    """Pinning of ``GL_m``/``SL_m`` (and ``PGL_m`` through ``GL_m`` lifts)."""

    def __init__(self, m: int, group: str = "SL", one=None):
        if group not in GROUPS:
            raise ValueError(f"unknown group {group!r}")
        if m < 2:
            raise ValueError("need m >= 2")
        from fractions import Fraction

        self.m = m
        self.group = group
        self.one = Fraction(1) if one is None else one
        self.zero = self.one * 0
        self.word = longest_word(build_root_datum(f"A{m - 1}"))
        self.w0bar = self._product(self.sbar(i) for i in self.word)
        self.w0bar_inv = mat_inv(self.w0bar)
        sg = self.one if (m - 1) % 2 == 0 else -self.one
        self.s_G = _scale(self.eye(), sg)
        self.J = [
            [(self.one if (i + 1) % 2 == 0 else -self.one) if j == m - 1 - i else self.zero for j in range(m)]
            for i in range(m)
        ]
        self.J_inv = mat_inv(self.J)
        self._verify()

    # elementary matrices --------------------------------------------------
    def eye(self) -> Mat:
        return identity(self.m, self.one)

    def x(self, i: int, a) -> Mat:
        g = self.eye()
        g[i - 1][i] = a * self.one
        return g

    def y(self, i: int, a) -> Mat:
        g = self.eye()
        g[i][i - 1] = a * self.one
        return g

    def coroot(self, i: int, c) -> Mat:
        g = self.eye()
        g[i - 1][i - 1] = c * self.one
        g[i][i] = self.one / c
        return g

    def diag(self, values: Sequence) -> Mat:
        g = self.eye()
        for k, v in enumerate(values):
            g[k][k] = v * self.one
        return g

    def sbar(self, i: int) -> Mat:
        return self._product([self.y(i, 1), self.x(i, -1), self.y(i, 1)])

    def _product(self, mats) -> Mat:
        out = self.eye()
        for g in mats:
            out = mat_mul(out, g)
        return out

    def x_word(self, word: Sequence[int], params: Sequence) -> Mat:
        """``x_{i_1}(a_1) ... x_{i_N}(a_N)``."""
        return self._product(self.x(i, a) for i, a in zip(word, params))

    # sigma ---------------------------------------------------------------
    def sigma(self, g: Mat) -> Mat:
        return mat_mul(mat_mul(self.J, transpose(mat_inv(g))), self.J_inv)

    def sigma_diag(self, values: Sequence) -> list:
        """``sigma`` on a diagonal matrix given by its entries."""
        return [self.one / v for v in reversed(values)]

    # Whittaker character --------------------------------------------------
    def chi(self, u: Mat):
        if any(not (u[i][i] == 1) for i in range(self.m)) or any(
            not (u[i][j] == 0) for i in range(self.m) for j in range(i)
        ):
            raise ValueError("chi needs an upper unipotent matrix")
        acc = self.zero
        for i in range(self.m - 1):
            acc = acc + u[i][i + 1]
        return acc

    def _verify(self):
        m, one = self.m, self.one
        for i in range(1, m):
            s = self.sbar(i)
            # sbar_i maps x_i(a) to y_i(-a) by conjugation
            a = one * 3
            lhs = mat_mul(mat_mul(s, self.x(i, a)), mat_inv(s))
            if not _eq(lhs, self.y(i, -a)):
                raise PinningIdentityError("sbar_i x_i(a) sbar_i^{-1} != y_i(-a)")
            if not _eq(mat_mul(s, s), self.coroot(i, -one)):
                raise PinningIdentityError("sbar_i^2 != alpha_i^vee(-1)")
            if not _eq(self.sigma(self.x(i, a)), self.x(m - i, a)):
                raise PinningIdentityError("sigma(x_i(a)) != x_{sigma(i)}(a)")
            if not _eq(self.sigma(self.y(i, a)), self.y(m - i, a)):
                raise PinningIdentityError("sigma(y_i(a)) != y_{sigma(i)}(a)")
            if self.chi(self.x(i, a)) != a:
                raise PinningIdentityError("chi(x_i(a)) != a")
        if not _eq(mat_mul(self.w0bar, self.w0bar), self.s_G):
            raise PinningIdentityError("w0bar^2 != s_G")
        if det(self.w0bar) != 1:
            raise PinningIdentityError("w0bar is not in SL_m")
        if not _eq(self.sigma(self.w0bar), self.w0bar):
            raise PinningIdentityError("sigma(w0bar) != w0bar")


# ---------------------------------------------------------------------------
# folded pinning


class FoldedPinning:
    """Pinning of the sigma-fixed subgroup of ``SL_m`` for the outer involution."""

    def __init__(self, base: Pinning):
        if base.group != "SL":
            raise ValueError("folding is only offered for SL_m")
        self.base = base
        m = base.m
        datum = build_root_datum(f"A{m - 1}")
        self.folded: FoldedDatum = fold(datum, standard_automorphism(datum))
        one = base.one
        self.word = longest_word(self.folded.folded)
        self.s_hat = {eta: self._s_hat(eta) for eta in range(1, len(self.folded.orbits) + 1)}
        self.w0hat = base._product(self.s_hat[eta] for eta in self.word)
        self.h = self._h_correction()
        self.h_inv = [one / v for v in self.h]
        self._verify()

    @property
    def orbits(self):
        return self.folded.orbits

    def _orbit(self, eta: int):
        return self.folded.orbits[eta - 1], self.folded.adjacent[eta - 1]

    def x_eta(self, eta: int, a) -> Mat:
        orb, adj = self._orbit(eta)
        b = self.base
        if adj:
            i, j = orb
            return b._product([b.x(i, a), b.x(j, 2 * a), b.x(i, a)])
        return b._product(b.x(i, a) for i in orb)

    def y_eta(self, eta: int, a) -> Mat:
        orb, adj = self._orbit(eta)
        b = self.base
        if adj:
            i, j = orb
            half = a / 2 if not isinstance(a, int) else b.one * a / 2
            return b._product([b.y(i, half), b.y(j, a), b.y(i, half)])
        return b._product(b.y(i, a) for i in orb)

    def _s_hat(self, eta: int) -> Mat:
        one = self.base.one
        return self.base._product([self.y_eta(eta, one), self.x_eta(eta, -one), self.y_eta(eta, one)])

    def h_eta(self, eta: int) -> list:
        """Diagonal of ``h_eta`` with ``s_hat_eta = h_eta sbar_eta``."""
        orb, adj = self._orbit(eta)
        b = self.base
        d = [b.one] * b.m
        if adj:
            for i in orb:
                d[i - 1] = d[i - 1] * 2
                d[i] = d[i] / 2
        return d

    def _h_correction(self) -> list:
        """Diagonal of ``h`` with ``w0hat = h w0bar``."""
        b = self.base
        m = b.m
        d = [b.one] * m
        if m % 2 == 1:
            n = (m - 1) // 2
            for k in range(1, n + 1):
                for i in (k, 2 * n + 1 - k):
                    for _ in range(k):
                        d[i - 1] = d[i - 1] * 2
                        d[i] = d[i] / 2
        return d

    def sbar_eta(self, eta: int) -> Mat:
        orb, adj = self._orbit(eta)
        b = self.base
        if adj:
            i, j = orb
            return b._product([b.sbar(i), b.sbar(j), b.sbar(i)])
        return b._product(b.sbar(i) for i in orb)

    def chi_sigma(self, u: Mat):
        acc = self.base.zero
        for orb, adj in zip(self.folded.orbits, self.folded.adjacent):
            i = orb[0]
            v = u[i - 1][i]
            acc = acc + (v / 2 if adj else v)
        return acc

    def kappa(self, eta: int) -> int:
        orb, adj = self._orbit(eta)
        return 4 if adj else len(orb)

    def x_word(self, word: Sequence[int], params: Sequence) -> Mat:
        return self.base._product(self.x_eta(eta, a) for eta, a in zip(word, params))

    def _verify(self):
        b = self.base
        a = b.one * 5
        for eta in self.s_hat:
            for g in (self.x_eta(eta, a), self.y_eta(eta, a)):
                if not _eq(b.sigma(g), g):
                    raise PinningIdentityError("folded generator is not sigma-fixed")
            if self.chi_sigma(self.x_eta(eta, a)) != a:
                raise PinningIdentityError("chi_sigma(x_eta(a)) != a")
            if b.chi(self.x_eta(eta, a)) != self.kappa(eta) * a:
                raise PinningIdentityError("chi(x_eta(a)) != kappa_eta a")
            if not _eq(self.s_hat[eta], mat_mul(b.diag(self.h_eta(eta)), self.sbar_eta(eta))):
                raise PinningIdentityError("s_hat_eta != h_eta sbar_eta")
        if not _eq(self.w0hat, mat_mul(b.diag(self.h), b.w0bar)):
            raise PinningIdentityError("w0hat != h w0bar")
        if not _eq(b.sigma(self.w0hat), self.w0hat):
            raise PinningIdentityError("w0hat is not sigma-fixed")


# ---------------------------------------------------------------------------
# invariants


class Engine:
    """ed / an / chart p for a pinning and a chosen representative of ``w_0``."""

    def __init__(self, pinning: Pinning, w0rep: Mat | None = None):
        self.p = pinning
        self.w0 = pinning.w0bar if w0rep is None else w0rep
        self.w0_inv = mat_inv(self.w0)

    @property
    def m(self) -> int:
        return self.p.m

    def decomp(self, k: Mat) -> Mat:
        """The ``v in U`` with ``k in v w0 B``; requires ``k B`` opposite to ``B^-``."""
        try:
            low, _ = lu(mat_mul(self.w0_inv, k))
        except SingularMatrixError as exc:
            raise GenericityError(str(exc)) from exc
        return mat_mul(mat_mul(self.w0, low), self.w0_inv)

    def an(self, k1: Mat, g: Mat, k2: Mat) -> Mat:
        """The unipotent ``u`` with ``x (B_1, A, B_2) = (B^-, U, u B^-)``."""
        gi = mat_inv(g)
        v0 = self.decomp(mat_mul(gi, k1))
        x = mat_mul(mat_inv(v0), gi)
        return self.decomp(mat_mul(x, k2))

    def ed(self, g1: Mat, g2: Mat) -> list:
        """Diagonal of the torus element ``h`` with ``(A_1, A_2) ~ (U, h w0 U)``."""
        m = self.m
        mat = mat_mul(mat_mul(mat_inv(g1), g2), self.w0_inv)
        minors = [self.p.one]
        for k in range(1, m + 1):
            sub = [row[m - k :] for row in mat[m - k :]]
            dk = det(sub)
            if dk == 0:
                raise GenericityError(f"bottom-right minor of size {k} vanishes")
            minors.append(dk)
        return [minors[m - i + 1] / minors[m - i] for i in range(1, m + 1)]

    def chart_p(self, hs: Sequence[Sequence], us: Sequence[Mat], check: bool = False) -> "Configuration":
        """Configuration with ``ed(A_{i-1}, A_i) = h_i`` and ``an(pi A_1, A_j, pi A_{j+1}) = u_j``.

        ``hs`` lists the diagonals of ``h_2, ..., h_n`` and ``us`` the
        unipotents ``u_2, ..., u_{n-1}``.
        """
        if len(us) != len(hs) - 1:
            raise ValueError("need n-1 torus elements and n-2 unipotents")
        p = self.p
        gs = [p.eye(), mat_mul(p.diag(hs[0]), self.w0)]
        for j, u in enumerate(us):
            g = gs[-1]
            k = mat_mul(g, self.decomp(mat_inv(g)))
            gs.append(mat_mul(mat_mul(mat_mul(k, u), p.diag(hs[j + 1])), self.w0))
        conf = Configuration(tuple(gs), p.group)
        if check:
            for i in range(1, len(gs)):
                if not all(a == b for a, b in zip(self.ed(gs[i - 1], gs[i]), hs[i - 1])):
                    raise AssertionError("chart_p: h-part does not round-trip")
            for j in range(1, len(gs) - 1):
                if not _eq(self.an(gs[0], gs[j], gs[j + 1]), us[j - 1]):
                    raise AssertionError("chart_p: u-part does not round-trip")
        return conf

    def potential_terms(self, conf: "Configuration", chi: Callable | None = None) -> list:
        gs, n = conf.elements, len(conf.elements)
        chi = chi or self.p.chi
        return [chi(self.an(gs[i - 1], gs[i], gs[(i + 1) % n])) for i in range(n)]

    def potential_W(self, conf: "Configuration", chi: Callable | None = None):
        terms = self.potential_terms(conf, chi)
        acc = terms[0]
        for t in terms[1:]:
            acc = acc + t
        return acc

    def edge_map_Ed(self, conf: "Configuration") -> list[list]:
        gs = conf.elements
        first = self.ed(mat_mul(self.p.s_G, gs[-1]), gs[0])
        return [first] + [self.ed(gs[i - 1], gs[i]) for i in range(1, len(gs))]

    def cyclic_shift(self, conf: "Configuration") -> "Configuration":
        gs = conf.elements
        return Configuration((mat_mul(self.p.s_G, gs[-1]),) + tuple(gs[:-1]), conf.group)

    def sigma_conf(self, conf: "Configuration") -> "Configuration":
        return Configuration(tuple(self.p.sigma(g) for g in conf.elements), conf.group)


@dataclass(frozen=True)
class Configuration:
    """``n`` decorated flags given by representatives ``g_i`` (``A_i = g_i U``)."""

    elements: tuple
    group: str

    @property
    def n(self) -> int:
        return len(self.elements)

    def translate(self, g: Mat) -> "Configuration":
        return Configuration(tuple(mat_mul(g, a) for a in self.elements), self.group)


def build_pinning(m: int, group: str = "SL", folded: bool = False, one=None):
    """A :class:`Pinning`, plus a :class:`FoldedPinning` when ``folded``."""
    base = Pinning(m, group, one)
    if folded:
        return base, FoldedPinning(base)
    return base


def chi(pinning: Pinning, u: Mat):
    return pinning.chi(u)


def chi_sigma(fp: FoldedPinning, u: Mat):
    return fp.chi_sigma(u)
