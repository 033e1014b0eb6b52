"""Words in simple reflections, the longest element and braid moves.

A word is a tuple of 1-based node indices.  Weyl group elements are
represented by their action on the simple-root coordinates of the weight
lattice, so everything here depends only on the Cartan matrix.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootdata import FoldedDatum, Matrix, RootDatum, positive_roots

Word = tuple[int, ...]

ORBIT_ORDER = "ascending"


class WordError(ValueError):
    pass


def _cartan(obj) -> Matrix:
    if isinstance(obj, RootDatum):
        return obj.cartan
    return tuple(tuple(r) for r in obj)


def reflect_weight(cartan: Matrix, i: int, mu: Sequence[int]) -> tuple[int, ...]:
    """``s_i`` on a weight in fundamental-weight coordinates (1-based ``i``)."""
    k = mu[i - 1]
    # s_i(mu) = mu - <alpha_i^vee, mu> alpha_i, and alpha_i = column (i) of A in omega coords
    return tuple(m - k * cartan[j][i - 1] for j, m in enumerate(mu))


def act(cartan: Matrix, word: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    """``s_{i_1} ... s_{i_k}`` applied to ``mu`` (rightmost letter first)."""
    for i in reversed(word):
        mu = reflect_weight(cartan, i, mu)
    return tuple(mu)


def element_key(cartan: Matrix, word: Sequence[int]) -> tuple[int, ...]:
    """A faithful invariant of the Weyl element: its image of a regular weight."""
    n = len(cartan)
    return act(cartan, word, (1,) * n)


def length(cartan: Matrix, word: Sequence[int]) -> int:
    """Coxeter length of the element represented by ``word``."""
    mu = element_key(cartan, word)
    # l(w) = number of positive roots beta with <beta^vee, w rho> < 0
    a = cartan
    n = len(a)
    # coroot of beta in simple-coroot coordinates: use the transpose Cartan matrix
    at = tuple(tuple(a[j][i] for j in range(n)) for i in range(n))
    count = 0
    for beta in positive_roots(at):
        if sum(b * m for b, m in zip(beta, mu)) < 0:
            count += 1
    return count


def is_reduced(obj, word: Sequence[int]) -> bool:
    return length(_cartan(obj), word) == len(word)


def _left_descents(cartan: Matrix, key: Sequence[int]) -> list[int]:
    # i is a left descent of w iff <alpha_i^vee, w rho> < 0
    return [i + 1 for i, m in enumerate(key) if m < 0]


def longest_word(obj) -> Word:
    """Lexicographically smallest reduced word of ``w_0``.

    Built greedily: ``w_0 = s_i w'`` with ``i`` the smallest left descent.
    """
    a = _cartan(obj)
    npos = len(positive_roots(a))
    word = []
    mu = tuple(-1 for _ in a)  # w0(rho) = -rho
    while any(m < 0 for m in mu):
        i = _left_descents(a, mu)[0]
        word.append(i)
        mu = reflect_weight(a, i, mu)
    if len(word) != npos:  # pragma: no cover
        raise WordError("greedy construction failed")
    return tuple(word)


def reduced_words(obj, word: Sequence[int]) -> list[Word]:
    """All reduced words of the element represented by ``word`` (sorted)."""
    a = _cartan(obj)
    if not is_reduced(a, word):
        raise WordError("word is not reduced")
    key = element_key(a, word)
    out: list[Word] = []

    def rec(mu, prefix):
        if all(m > 0 for m in mu):
            out.append(tuple(prefix))
            return
        for i in _left_descents(a, mu):
            rec(reflect_weight(a, i, mu), prefix + [i])

    rec(key, [])
    return sorted(out)


def inflate_letter(folded: FoldedDatum, eta_index: int) -> Word:
    """Expansion of ``s_eta`` into ambient simple reflections (ascending order)."""
    orb = folded.orbits[eta_index - 1]
    if folded.adjacent[eta_index - 1]:
        i, j = orb
        return (i, j, i)
    return tuple(orb)


def inflate_folded_word(folded: FoldedDatum, j: Sequence[int]) -> Word:
    """Reduced word in W obtained by replacing each ``s_eta`` by its expansion."""
    if not is_reduced(folded.folded, j):
        raise WordError("folded word is not reduced")
    out: list[int] = []
    for eta in j:
        out.extend(inflate_letter(folded, eta))
    word = tuple(out)
    if not is_reduced(folded.ambient, word):  # pragma: no cover - guaranteed by theory
        raise WordError("inflated word is not reduced")
    return word


def standard_word(datum: RootDatum, folded: FoldedDatum | None = None) -> Word:
    """The reduced word of ``w_0`` used for charts.

    Without folding this is the lex-min word.  With folding it is the
    inflation of the lex-min word of the folded longest element.
    """
    if folded is None or folded.sigma.is_identity():
        return longest_word(datum)
    return inflate_folded_word(folded, longest_word(folded.folded))


@dataclass(frozen=True)
class BraidMove:
    """A commutation (length 2) or short braid (length 3) at ``position`` (0-based)."""

    position: int
    kind: str  # "commutation" | "braid"

    @property
    def width(self) -> int:
        return 2 if self.kind == "commutation" else 3

    def apply(self, word: Sequence[int]) -> Word:
        p, w = self.position, list(word)
        if self.kind == "commutation":
            w[p], w[p + 1] = w[p + 1], w[p]
        else:
            a, b, _ = w[p : p + 3]
            w[p : p + 3] = [b, a, b]
        return tuple(w)

    def to_dict(self) -> dict:
        return {"position": self.position, "kind": self.kind}


def available_moves(cartan: Matrix, word: Sequence[int]) -> list[BraidMove]:
    moves = []
    for p in range(len(word) - 1):
        i, j = word[p], word[p + 1]
        if i != j and cartan[i - 1][j - 1] == 0:
            moves.append(BraidMove(p, "commutation"))
        if (
            p + 2 < len(word)
            and i != j
            and word[p + 2] == i
            and cartan[i - 1][j - 1] == -1
            and cartan[j - 1][i - 1] == -1
        ):
            moves.append(BraidMove(p, "braid"))
    return moves


def _simply_laced(cartan: Matrix) -> bool:
    n = len(cartan)
    return all(cartan[i][j] in (0, -1) for i in range(n) for j in range(n) if i != j)


def braid_path(obj, w1: Sequence[int], w2: Sequence[int]) -> list[BraidMove]:
    """Shortest sequence of braid moves turning ``w1`` into ``w2`` (BFS)."""
    a = _cartan(obj)
    if not _simply_laced(a):
        raise WordError("braid paths are only implemented for simply-laced types")
    w1, w2 = tuple(w1), tuple(w2)
    if not (is_reduced(a, w1) and is_reduced(a, w2)):
        raise WordError("words must be reduced")
    if element_key(a, w1) != element_key(a, w2):
        raise WordError("words represent different elements")
    prev: dict[Word, tuple[Word, BraidMove] | None] = {w1: None}
    queue = deque([w1])
    while queue:
        w = queue.popleft()
        if w == w2:
            break
        for mv in available_moves(a, w):
            nxt = mv.apply(w)
            if nxt not in prev:
                prev[nxt] = (w, mv)
                queue.append(nxt)
    if w2 not in prev:  # pragma: no cover - Matsumoto's theorem
        raise WordError("no braid path found")
    path = []
    cur = w2
    while prev[cur] is not None:
        cur, mv = prev[cur]
        path.append(mv)
    return path[::-1]


def replay(word: Sequence[int], moves: Iterable[BraidMove]) -> Word:
    w = tuple(word)
    for mv in moves:
        w = mv.apply(w)
    return w


def word_to_json(word: Sequence[int]) -> str:
    return json.dumps(list(word))


def word_from_json(text: str) -> Word:
    return tuple(int(x) for x in json.loads(text))
