"""Tropical Lusztig coordinates on U_* and the piecewise-linear chart changes.

A point of ``U_*(Z^t)`` in the chart of a reduced word ``i = (i_1, ..., i_N)``
of ``w_0`` is an integer vector ``m`` read off from
``x_{i_1}(t^{m_1}) ... x_{i_N}(t^{m_N})``.  Changing the reduced word by a
commutation swaps two coordinates; a short braid move acts by the
tropicalization of

    x_j(a) x_i(b) x_j(c) = x_i(bc/(a+c)) x_j(a+c) x_i(ab/(a+c)).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .rootdata import DiagramAutomorphism, FoldedDatum, c_sigma
from .weylwords import BraidMove, Word, braid_path, inflate_letter, longest_word


class ChartError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TropLusztigData:
    word: Word
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.word) != len(self.coords):
            raise ChartError("coordinate count does not match word length")

    def to_dict(self) -> dict:
        return {"word": list(self.word), "coords": list(self.coords)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "TropLusztigData":
        return cls(tuple(d["word"]), tuple(d["coords"]))


def braid_pl(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Tropical short braid move; it is an involution."""
    m = min(a, c)
    return (b + c - m, m, a + b - m)


def apply_move(d: TropLusztigData, mv: BraidMove) -> TropLusztigData:
    p, w = mv.position, d.word
    if p < 0 or p + mv.width > len(w):
        raise ChartError("move out of range")
    coords = list(d.coords)
    if mv.kind == "commutation":
        if w[p] == w[p + 1]:
            raise ChartError("commutation needs distinct letters")
        coords[p], coords[p + 1] = coords[p + 1], coords[p]
    elif mv.kind == "braid":
        if not (w[p] == w[p + 2] != w[p + 1]):
            raise ChartError("braid move needs a window (i, j, i)")
        coords[p : p + 3] = braid_pl(*coords[p : p + 3])
    else:
        raise ChartError(f"unknown move kind {mv.kind!r}")
    return TropLusztigData(mv.apply(w), tuple(coords))


def transport(d: TropLusztigData, target_word: Sequence[int], cartan) -> TropLusztigData:
    """Rewrite ``d`` in the chart of ``target_word`` along a shortest braid path."""
    target_word = tuple(target_word)
    if target_word == d.word:
        return d
    for mv in _cached_path(tuple(map(tuple, cartan)), d.word, target_word):
        d = apply_move(d, mv)
    return d


@lru_cache(maxsize=None)
def _cached_path(cartan, w1, w2) -> tuple[BraidMove, ...]:
    return tuple(braid_path(cartan, w1, w2))


def relabel(d: TropLusztigData, sigma: DiagramAutomorphism) -> TropLusztigData:
    return TropLusztigData(tuple(sigma.node(i) for i in d.word), d.coords)


def sigma_trop_U(d: TropLusztigData, sigma: DiagramAutomorphism) -> TropLusztigData:
    """``sigma^t`` on ``U_*(Z^t)`` expressed in the chart of ``d.word``."""
    return transport(relabel(d, sigma), d.word, sigma.datum.cartan)


def orbit_blocks(folded: FoldedDatum, j: Sequence[int]) -> list[int]:
    """Block sizes of the inflated word of the folded word ``j``."""
    return [len(inflate_letter(folded, eta)) for eta in j]


def _check_inflated(d: TropLusztigData, folded: FoldedDatum, j: Sequence[int]) -> list[int]:
    blocks = orbit_blocks(folded, j)
    word = tuple(x for eta in j for x in inflate_letter(folded, eta))
    if word != d.word:
        raise ChartError("coordinates are not on the inflated word")
    return blocks


def is_sigma_fixed(d: TropLusztigData, folded: FoldedDatum, j: Sequence[int] | None = None) -> bool:
    """Fixed-point criterion: coordinates constant on every orbit block."""
    if j is None:
        j = longest_word(folded.folded)
    blocks = _check_inflated(d, folded, j)
    pos = 0
    for size in blocks:
        if len(set(d.coords[pos : pos + size])) != 1:
            return False
        pos += size
    return True


def collapse(d: TropLusztigData, folded: FoldedDatum, j: Sequence[int] | None = None) -> TropLusztigData:
    """Tropical ``iota^{-1}``: a fixed point on the inflated word to the folded chart ``j``."""
    if j is None:
        j = longest_word(folded.folded)
    if not is_sigma_fixed(d, folded, j):
        raise ChartError("point is not sigma-fixed")
    blocks = orbit_blocks(folded, j)
    out, pos = [], 0
    for size in blocks:
        out.append(d.coords[pos])
        pos += size
    return TropLusztigData(tuple(j), tuple(out))


def expand(e: TropLusztigData, folded: FoldedDatum) -> TropLusztigData:
    """Tropical ``iota``: repeat each folded coordinate over its block."""
    word, coords = [], []
    for eta, m in zip(e.word, e.coords):
        letters = inflate_letter(folded, eta)
        word.extend(letters)
        coords.extend([m] * len(letters))
    return TropLusztigData(tuple(word), tuple(coords))


def add(d1: TropLusztigData, d2: TropLusztigData) -> TropLusztigData:
    """Chart-relative sum ``+_i``; both points must live on the same word."""
    if d1.word != d2.word:
        raise ChartError("+_i needs both points in the same chart")
    return TropLusztigData(d1.word, tuple(a + b for a, b in zip(d1.coords, d2.coords)))


def s_sum_U(d: TropLusztigData, sigma: DiagramAutomorphism) -> TropLusztigData:
    """The summation ``S_i(l)`` in the chart of ``d.word``."""
    c = c_sigma(sigma)
    st = lambda x: sigma_trop_U(x, sigma)
    if c == 1:
        return d
    if c == 2:
        return add(d, st(d))
    if c == 3:
        s1 = st(d)
        return add(add(d, s1), st(s1))
    first = add(d, st(d))
    return add(first, st(first))
