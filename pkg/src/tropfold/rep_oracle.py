"""Classical representation-theory oracle for any finite Cartan matrix.

Weights are handled in Dynkin-label coordinates (``<alpha_i^vee, mu>``).
Weight multiplicities come from Freudenthal's recursion on dominant
weights, tensor products from the Brauer-Klimyk rule, and the last step of
an invariant computation uses the Weyl-group alternating sum

    mult(kappa in V_lam (x) V_mu) = sum_w eps(w) m_mu(w(kappa + rho) - (lam + rho)).

Entry points taking a :class:`~tropfold.rootdata.RootDatum` accept weights
as character vectors of that datum.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .rootdata import (
    DiagramAutomorphism,
    Matrix,
    RootDatum,
    fold,
    in_root_lattice,
    positive_roots,
)
from .weylwords import longest_word, reflect_weight

Weight = tuple[int, ...]


class OracleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lie-theoretic tables keyed by the Cartan matrix


class LieData:
    """Symmetrised form, positive roots and Weyl group of a Cartan matrix."""

    def __init__(self, cartan: Matrix):
        self.cartan = tuple(tuple(r) for r in cartan)
        a = self.cartan
        n = self.rank = len(a)
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if j != i and a[i][j] != 0 and d[j] is None:
                        d[j] = d[i] * a[i][j] / a[j][i]
                        stack.append(j)
        self.d = d
        inv = _inverse(a)
        # (omega_i, omega_j) = (A^{-1})_{ij} d_i
        self.gram = [[inv[i][j] * d[i] for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:  # pragma: no cover
                    raise OracleError("Cartan matrix is not symmetrisable")
        # positive roots in Dynkin coordinates: alpha_j = column j of A
        self.pos_roots_simple = positive_roots(a)
        self.pos_roots = tuple(
            tuple(sum(c * a[i][j] for j, c in enumerate(beta)) for i in range(n))
            for beta in self.pos_roots_simple
        )
        self.rho = (1,) * n
        self._weyl = None

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    def reflect(self, i: int, mu: Sequence[int]) -> Weight:
        return reflect_weight(self.cartan, i + 1, mu)

    def dominant_rep(self, mu: Sequence[int]) -> tuple[Weight, int]:
        """Dominant Weyl conjugate and the parity of reflections used."""
        mu = tuple(mu)
        sign = 1
        while True:
            for i, c in enumerate(mu):
                if c < 0:
                    mu = self.reflect(i, mu)
                    sign = -sign
                    break
            else:
                return mu, sign

    def orbit(self, mu: Sequence[int]) -> list[Weight]:
        seen = {tuple(mu)}
        stack = [tuple(mu)]
        while stack:
            v = stack.pop()
            for i in range(self.rank):
                if v[i]:
                    w = self.reflect(i, v)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return sorted(seen)

    def weyl_group(self) -> list[tuple[Matrix, int]]:
        """All Weyl group elements as integer matrices on Dynkin coordinates, with signs."""
        if self._weyl is None:
            n = self.rank
            ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            seen = {ident: 1}
            frontier = [ident]
            while frontier:
                nxt = []
                for g in frontier:
                    for i in range(n):
                        # s_i o g, acting on column vectors
                        cols = [self.reflect(i, [g[r][c] for r in range(n)]) for c in range(n)]
                        h = tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))
                        if h not in seen:
                            seen[h] = -seen[g]
                            nxt.append(h)
                frontier = nxt
            self._weyl = list(seen.items())
        return self._weyl

    def dual_weight(self, mu: Sequence[int]) -> Weight:
        """``-w_0 mu``."""
        w = tuple(mu)
        for i in reversed(longest_word(self.cartan)):
            w = self.reflect(i - 1, w)
        return tuple(-x for x in w)


def _inverse(a: Matrix) -> list[list[Fraction]]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def lie_data(cartan: Matrix) -> LieData:
    return LieData(cartan)


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=4096)
def dominant_character(cartan: Matrix, lam: Weight) -> dict[Weight, int]:
    """Multiplicities of the dominant weights of ``V_lam`` (Freudenthal)."""
    L = lie_data(cartan)
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise OracleError(f"{lam} is not dominant")
    # dominant weights below lam, by depth
    depth = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for beta, beta_s in zip(L.pos_roots, L.pos_roots_simple):
                nu = tuple(x - y for x, y in zip(mu, beta))
                if all(c >= 0 for c in nu) and nu not in depth:
                    depth[nu] = depth[mu] + sum(beta_s)
                    nxt.append(nu)
        frontier = nxt
    order = sorted(depth, key=lambda w: depth[w])
    lr = tuple(x + 1 for x in lam)
    norm_lr = L.form(lr, lr)
    mult: dict[Weight, int] = {lam: 1}
    for mu in order[1:]:
        total = Fraction(0)
        for beta in L.pos_roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, beta))
                dom, _ = L.dominant_rep(nu)
                if dom not in depth:
                    break
                m = mult.get(dom, 0)
                if m:
                    total += m * L.form(nu, beta)
                k += 1
        mr = tuple(x + 1 for x in mu)
        denom = norm_lr - L.form(mr, mr)
        val = 2 * total / denom
        if val.denominator != 1 or val < 0:  # pragma: no cover
            raise OracleError("Freudenthal recursion produced a non-integer")
        if val:
            mult[mu] = int(val)
    return mult


def weight_multiplicity_dynkin(cartan: Matrix, lam: Weight, mu: Weight) -> int:
    L = lie_data(tuple(map(tuple, cartan)))
    dom, _ = L.dominant_rep(mu)
    return dominant_character(L.cartan, tuple(lam)).get(dom, 0)


@lru_cache(maxsize=1024)
def full_character(cartan: Matrix, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    L = lie_data(cartan)
    out = []
    for dom, m in dominant_character(cartan, lam).items():
        for w in L.orbit(dom):
            out.append((w, m))
    return tuple(sorted(out))


def weyl_dimension(cartan: Matrix, lam: Weight) -> int:
    L = lie_data(tuple(map(tuple, cartan)))
    lr = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for beta in L.pos_roots:
        num *= L.form(lr, beta) / L.form(L.rho, beta)
    if num.denominator != 1:  # pragma: no cover
        raise OracleError("Weyl dimension is not an integer")
    return int(num)


def character_dimension(cartan: Matrix, lam: Weight) -> int:
    return sum(m for _, m in full_character(tuple(map(tuple, cartan)), tuple(lam)))


def tensor_decompose_dynkin(cartan: Matrix, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """``V_lam (x) V_mu`` by the Brauer-Klimyk rule (iterating over the smaller factor)."""
    cartan = tuple(map(tuple, cartan))
    L = lie_data(cartan)
    lam, mu = tuple(lam), tuple(mu)
    if weyl_dimension(cartan, mu) > weyl_dimension(cartan, lam):
        lam, mu = mu, lam
    out: dict[Weight, int] = defaultdict(int)
    for nu, m in full_character(cartan, mu):
        v = tuple(a + b + 1 for a, b in zip(lam, nu))
        dom, sign = L.dominant_rep(v)
        if any(c == 0 for c in dom):
            continue
        out[tuple(c - 1 for c in dom)] += sign * m
    return {k: v for k, v in sorted(out.items()) if v}


def tensor_multiplicity_dynkin(cartan: Matrix, lam: Weight, mu: Weight, kappa: Weight) -> int:
    """Multiplicity of ``V_kappa`` in ``V_lam (x) V_mu`` via the Weyl alternating sum."""
    cartan = tuple(map(tuple, cartan))
    L = lie_data(cartan)
    if weyl_dimension(cartan, lam) > weyl_dimension(cartan, mu):
        lam, mu = mu, lam
    kr = [k + 1 for k in kappa]
    lr = [x + 1 for x in lam]
    dom_mu = dominant_character(cartan, tuple(mu))
    total = 0
    for g, sign in L.weyl_group():
        wk = [sum(g[i][j] * kr[j] for j in range(L.rank)) for i in range(L.rank)]
        nu = tuple(a - b for a, b in zip(wk, lr))
        dom, _ = L.dominant_rep(nu)
        total += sign * dom_mu.get(dom, 0)
    return total


def invariant_dim_dynkin(cartan: Matrix, lams: Sequence[Weight]) -> int:
    """Dimension of ``(V_lam_1 (x) ... (x) V_lam_n)^g`` for the semisimple Lie algebra."""
    cartan = tuple(map(tuple, cartan))
    L = lie_data(cartan)
    lams = [tuple(l) for l in lams]
    if not lams:
        return 1
    if len(lams) == 1:
        return int(all(c == 0 for c in lams[0]))
    # fold factors in by increasing dimension; the largest one is matched at the end
    order = sorted(lams, key=lambda l: (weyl_dimension(cartan, l), l))
    last = L.dual_weight(order[-1])
    partial: dict[Weight, int] = {order[0]: 1}
    for lam in order[1:-2]:
        nxt: dict[Weight, int] = defaultdict(int)
        for nu, m in partial.items():
            for k, c in tensor_decompose_dynkin(cartan, nu, lam).items():
                nxt[k] += m * c
        partial = nxt
    if len(order) == 2:
        return int(order[0] == last)
    penult = order[-2]
    return sum(m * tensor_multiplicity_dynkin(cartan, nu, penult, last) for nu, m in partial.items())


# ---------------------------------------------------------------------------
# datum-level API


def _dynkin(datum: RootDatum, mu: Sequence[int]) -> Weight:
    return datum.fundamental_coordinates(mu)


def weight_multiplicity(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> int:
    if not datum.is_dominant_weight(lam):
        raise OracleError(f"{tuple(lam)} is not dominant")
    diff = [a - b for a, b in zip(lam, mu)]
    if not in_root_lattice(datum, diff):
        return 0
    return weight_multiplicity_dynkin(datum.cartan, _dynkin(datum, lam), _dynkin(datum, mu))


def tensor_decompose(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> dict[Weight, int]:
    """Decomposition keyed by Dynkin labels of the highest weights."""
    for w in (lam, mu):
        if not datum.is_dominant_weight(w):
            raise OracleError(f"{tuple(w)} is not dominant")
    return tensor_decompose_dynkin(datum.cartan, _dynkin(datum, lam), _dynkin(datum, mu))


def invariant_dim(datum: RootDatum, weights: Sequence[Sequence[int]]) -> int:
    """``dim (V_{w_1} (x) ... (x) V_{w_n})^G`` for characters ``w_i`` of ``datum``."""
    weights = [tuple(w) for w in weights]
    for w in weights:
        if not datum.is_dominant_weight(w):
            raise OracleError(f"{w} is not dominant")
    total = [sum(c) for c in zip(*weights)] if weights else [0] * datum.dim
    if not in_root_lattice(datum, total):
        return 0
    return invariant_dim_dynkin(datum.cartan, [_dynkin(datum, w) for w in weights])


def twining_rhs(datum: RootDatum, sigma: DiagramAutomorphism, weights: Sequence[Sequence[int]]) -> int:
    """``dim W^{G_sigma}`` for sigma-invariant characters of ``datum`` (the group G)."""
    f = fold(datum, sigma)
    for w in weights:
        if sigma.on_weight(w) != tuple(w):
            raise OracleError(f"{tuple(w)} is not sigma-invariant")
    folded_weights = [f.weight_to_folded(w) for w in weights]
    return invariant_dim(f.folded, folded_weights)


def clebsch_gordan_invariants(labels: Sequence[int]) -> int:
    """Closed form for SL_2: invariants in ``V_a1 (x) ... (x) V_an`` (labels = highest weights)."""
    dist = {0: 1}
    for a in labels:
        nxt: dict[int, int] = defaultdict(int)
        for b, m in dist.items():
            for k in range(min(a, b) + 1):
                nxt[a + b - 2 * k] += m
        dist = nxt
    return dist.get(0, 0)


# ---------------------------------------------------------------------------
# saturation


@dataclass(frozen=True)
class SaturationRecord:
    weights: tuple[Weight, ...]
    least_N: int | None
    factor_nonzero: bool | None

    @property
    def counterexample(self) -> bool:
        return self.least_N is not None and self.factor_nonzero is False

    def to_dict(self) -> dict:
        return {
            "weights": [list(w) for w in self.weights],
            "least_N": self.least_N,
            "factor_nonzero": self.factor_nonzero,
        }


def saturation_scan(
    datum: RootDatum,
    weight_lists: Iterable[Sequence[Sequence[int]]],
    factor: int,
    N_max: int,
) -> list[SaturationRecord]:
    """For each tuple: least ``N <= N_max`` with nonzero invariants and the factor check."""
    out = []
    for ws in weight_lists:
        ws = tuple(tuple(w) for w in ws)
        total = [sum(c) for c in zip(*ws)]
        if not in_root_lattice(datum, total):
            continue
        least = None
        for N in range(1, N_max + 1):
            if invariant_dim(datum, [tuple(N * x for x in w) for w in ws]):
                least = N
                break
        fac = None
        if least is not None:
            fac = invariant_dim(datum, [tuple(factor * x for x in w) for w in ws]) != 0
        out.append(SaturationRecord(ws, least, fac))
    return out


def dominant_weight_box(datum: RootDatum, max_coeff: int) -> list[tuple[int, ...]]:
    """Characters with Dynkin labels in ``[0, max_coeff]`` (fundamental weights must exist)."""
    fw = datum.fundamental_weights()
    out = []
    for coeffs in product(range(max_coeff + 1), repeat=datum.rank):
        out.append(tuple(sum(c * w[k] for c, w in zip(coeffs, fw)) for k in range(datum.dim)))
    return out
