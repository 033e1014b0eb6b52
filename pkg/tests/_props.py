"""Randomized property checks shared by the property tests and the acceptance script.

Every checker returns ``(instances, failures)`` where ``failures`` lists
short descriptions of the failing instances.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from tropfold.confspace import TropConfPoint, add_points, sigma_trop_conf
from tropfold.matrixgroup import FoldedPinning, Pinning
from tropfold.plmoves import TropLusztigData, apply_move, expand, transport
from tropfold.ratfun import RatFun, det, mat_inv, mat_mul, valuation
from tropfold.rootdata import build_root_datum, fold, standard_automorphism
from tropfold.tropeval import get_chart
from tropfold.weylwords import available_moves, longest_word, reduced_words

SIGMA_CHARTS = [("SL", 3, 3), ("SL", 4, 3), ("SL", 5, 3), ("GL", 3, 3), ("SL", 3, 4)]
PAIR_CHARTS = [("SL", 3, 3), ("GL", 3, 3), ("SL", 4, 3), ("PGL", 3, 3), ("SL", 2, 4), ("SL", 3, 3, True)]


def _point(chart, rng, lo=-6, hi=6):
    return tuple(rng.randint(lo, hi) for _ in range(chart.coweight_dim * (chart.n - 1) + chart.u_dim))


# ---------------------------------------------------------------------------
# PL transport


def _minor_valuations(word, coords):
    """Valuations of all minors of ``x_word(t**coords)``: a chart-free tropical invariant."""
    m = max(word) + 1
    p = Pinning(m, "GL", RatFun.const(1))
    u = p.x_word(word, [RatFun.monomial(c) for c in coords])
    out = []
    for k in range(1, m):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(m), k):
                out.append(valuation(det([[u[r][c] for c in cols] for r in rows])))
    return out


def transport_chart_independence(samples_per_pair: int = 4, seed: int = 0, matrix_checks: int = 40):
    """Exhaustive over pairs of reduced words of w0 for A2 and A3.

    For each pair, transport along the BFS path is compared with transport
    along random walks in the word graph, and the round trip is checked.  A
    subset is compared with minors of the actual unipotent matrices.
    """
    rng = random.Random(seed)
    n, bad = 0, []
    for name in ("A2", "A3"):
        datum = build_root_datum(name)
        words = reduced_words(datum, longest_word(datum))
        for w1, w2 in itertools.product(words, repeat=2):
            for _ in range(samples_per_pair):
                d = TropLusztigData(w1, tuple(rng.randint(-8, 8) for _ in w1))
                direct = transport(d, w2, datum.cartan)
                walk = d
                for _ in range(rng.randint(0, 12)):
                    walk = apply_move(walk, rng.choice(available_moves(datum.cartan, walk.word)))
                via = transport(walk, w2, datum.cartan)
                back = transport(direct, w1, datum.cartan)
                n += 1
                if via != direct or back != d:
                    bad.append(f"{name} {w1}->{w2} {d.coords}")
    for _ in range(matrix_checks):
        datum = build_root_datum(rng.choice(["A2", "A3"]))
        words = reduced_words(datum, longest_word(datum))
        w1, w2 = rng.choice(words), rng.choice(words)
        d = TropLusztigData(w1, tuple(rng.randint(-4, 4) for _ in w1))
        e = transport(d, w2, datum.cartan)
        n += 1
        if _minor_valuations(w1, d.coords) != _minor_valuations(w2, e.coords):
            bad.append(f"minors {w1}->{w2} {d.coords}")
    return n, bad


# ---------------------------------------------------------------------------
# sigma invariance / equivariance


def sigma_invariance(samples: int = 250, seed: int = 1, exact_checks: int = 5):
    rng = random.Random(seed)
    n, bad = 0, []
    for key in SIGMA_CHARTS:
        chart = get_chart(*key)
        cf = chart.compiled
        for k in range(samples):
            p = TropConfPoint.from_flat(chart, _point(chart, rng))
            q = sigma_trop_conf(chart, p)
            x, y = p.flat(), q.flat()
            n += 1
            ok = cf.W_trop(y) == cf.W_trop(x)
            ok &= cf.Ed1(y) == chart.sigma.on_coweight(cf.Ed1(x))
            ok &= list(q.h_part) == [chart.sigma.on_coweight(h) for h in p.h_part]
            if k < exact_checks:
                w1, e1 = chart.trop_value(p.h_part, [u.coords for u in p.u_part])
                w2, e2 = chart.trop_value(q.h_part, [u.coords for u in q.u_part])
                ok &= w1 == w2 and e2 == [chart.sigma.on_coweight(e) for e in e1]
            if not ok:
                bad.append(f"{chart.key} {x}")
    return n, bad


# ---------------------------------------------------------------------------
# superadditivity and Ed additivity


def superadditivity(samples: int = 200, seed: int = 2, exact_checks: int = 4):
    rng = random.Random(seed)
    n, bad = 0, []
    for key in PAIR_CHARTS:
        chart = get_chart(*key)
        cf = chart.compiled
        for k in range(samples):
            p = TropConfPoint.from_flat(chart, _point(chart, rng))
            q = TropConfPoint.from_flat(chart, _point(chart, rng))
            s = add_points(p, q)
            x, y, z = p.flat(), q.flat(), s.flat()
            n += 1
            ok = cf.W_trop(z) >= cf.W_trop(x) + cf.W_trop(y)
            ok &= cf.Ed1(z) == tuple(a + b for a, b in zip(cf.Ed1(x), cf.Ed1(y)))
            if k < exact_checks:
                hs = lambda pt: (pt.h_part, [u.coords for u in pt.u_part])
                wx, ex = chart.trop_value(*hs(p))
                wy, ey = chart.trop_value(*hs(q))
                wz, ez = chart.trop_value(*hs(s))
                ok &= wz >= wx + wy
                ok &= ez == [tuple(a + b for a, b in zip(u, v)) for u, v in zip(ex, ey)]
            if not ok:
                bad.append(f"{chart.key} {x} + {y}")
    return n, bad


# ---------------------------------------------------------------------------
# kappa identity


def kappa_identity(samples: int = 350, seed: int = 3):
    """``(chi o iota)^t = chi_sigma^t`` on folded Lusztig data, plus the kappa constants."""
    rng = random.Random(seed)
    n, bad = 0, []
    for m in (3, 4, 5):
        base = Pinning(m, "SL", RatFun.const(1))
        fp = FoldedPinning(base)
        fbase = FoldedPinning(Pinning(m, "SL"))
        amb = build_root_datum(f"A{m - 1}")
        folded = fold(amb, standard_automorphism(amb))
        word = longest_word(folded.folded)
        for k in range(samples):
            e = tuple(rng.randint(-6, 6) for _ in word)
            n += 1
            # combinatorial: chi^t of the inflated Lusztig datum is its minimum entry
            d = expand(TropLusztigData(word, e), folded)
            ok = min(d.coords) == min(e)
            if k < 40:
                u = fp.x_word(word, [RatFun.monomial(c, Fraction(rng.randint(1, 5))) for c in e])
                ok &= valuation(base.chi(u)) == valuation(fp.chi_sigma(u)) == min(e)
            eta = rng.randint(1, len(folded.orbits))
            a = Fraction(rng.randint(1, 50), rng.randint(1, 50))
            g = fbase.x_eta(eta, a)
            ok &= fbase.base.chi(g) == fbase.kappa(eta) * fbase.chi_sigma(g)
            if not ok:
                bad.append(f"m={m} e={e}")
    return n, bad


# ---------------------------------------------------------------------------
# pinning identities


def pinning_identities(samples: int = 1000, seed: int = 4):
    rng = random.Random(seed)
    pins = {m: Pinning(m, "SL") for m in range(2, 7)}
    folded = {m: FoldedPinning(pins[m]) for m in range(3, 7)}
    n, bad = 0, []
    for _ in range(samples):
        m = rng.randint(2, 6)
        p = pins[m]
        i = rng.randint(1, m - 1)
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        n += 1
        s = p.sbar(i)
        ok = mat_mul(mat_mul(s, p.x(i, a)), mat_inv(s)) == p.y(i, -a)
        ok &= mat_mul(s, s) == p.coroot(i, -1)
        ok &= mat_mul(p.s_G, p.s_G) == p.eye()
        ok &= mat_mul(p.w0bar, p.w0bar) == p.s_G
        ok &= p.sigma(p.x(i, a)) == p.x(m - i, a) and p.sigma(p.y(i, a)) == p.y(m - i, a)
        ok &= p.chi(p.x(i, a)) == a
        if m >= 3:
            fp = folded[m]
            eta = rng.randint(1, len(fp.orbits))
            ok &= p.sigma(fp.x_eta(eta, a)) == fp.x_eta(eta, a)
            ok &= p.sigma(fp.y_eta(eta, a)) == fp.y_eta(eta, a)
            ok &= fp.chi_sigma(fp.x_eta(eta, a)) == a
            ok &= fp.s_hat[eta] == mat_mul(p.diag(fp.h_eta(eta)), fp.sbar_eta(eta))
        if not ok:
            bad.append(f"m={m} i={i} a={a}")
    return n, bad


ALL = {
    "PL transport chart-independence (A2, A3 exhaustive)": transport_chart_independence,
    "W^t sigma-invariance and Ed^t sigma-equivariance": sigma_invariance,
    "superadditivity of W^t and additivity of Ed^t": superadditivity,
    "kappa identity (chi o iota)^t = chi_sigma^t": kappa_identity,
    "s_G^2 = 1 and pinning identities": pinning_identities,
}
