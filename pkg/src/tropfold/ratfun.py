"""Exact univariate rational functions over Q and field-generic linear algebra.

:class:`RatFun` stores ``num/den`` as coefficient tuples (lowest degree
first) with ``gcd(num, den) = 1`` and ``den`` monic.  The valuation at
``t = 0`` is what tropical evaluation reads off.

The matrix helpers at the bottom only use ``+ - * /`` and comparison with
zero, so they work for Fraction, RatFun or any other exact field type.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

INF = float("inf")
DEFAULT_DEGREE_CAP = 4000

Poly = tuple[Fraction, ...]


class DegreeCapExceeded(ArithmeticError):
    """Raised when an intermediate polynomial grows beyond the configured cap."""


class SingularMatrixError(ArithmeticError):
    """The matrix is singular (or a required leading minor vanishes)."""


class InconsistentSystemError(ArithmeticError):
    """The linear system has no solution."""


# ---------------------------------------------------------------------------
# dense polynomial helpers over Fraction


def _trim(p: list) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _psub(p: Poly, q: Poly) -> Poly:
    out = list(p) + [Fraction(0)] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] -= c
    return _trim(out)


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pscale(p: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [Fraction(0)] * max(0, len(p) - dq)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quo[k] = c
        if c:
            for i, b in enumerate(q):
                r[k + i] -= c * b
    return _trim(quo), _trim(r[:dq] if dq else [])


def _pmonic(p: Poly) -> Poly:
    return _pscale(p, 1 / Fraction(p[-1])) if p else p


def _pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p)


def _ord0(p: Poly) -> int:
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("order of the zero polynomial")


# ---------------------------------------------------------------------------


class RatFun:
    """An element of Q(t)."""

    __slots__ = ("num", "den")
    degree_cap = DEFAULT_DEGREE_CAP

    def __init__(self, num: Sequence = (), den: Sequence = (1,), _reduced: bool = False):
        n = _trim([Fraction(c) for c in num])
        d = _trim([Fraction(c) for c in den])
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not n:
                d = (Fraction(1),)
            else:
                # pull out common powers of t cheaply before the Euclidean gcd
                k = min(_ord0(n), _ord0(d))
                if k:
                    n, d = n[k:], d[k:]
                g = _pgcd(n, d)
                if len(g) > 1:
                    n = _pdivmod(n, g)[0]
                    d = _pdivmod(d, g)[0]
                lead = d[-1]
                if lead != 1:
                    n = _pscale(n, 1 / lead)
                    d = _pscale(d, 1 / lead)
        if max(len(n), len(d)) - 1 > RatFun.degree_cap:
            raise DegreeCapExceeded(
                f"degree {max(len(n), len(d)) - 1} exceeds cap {RatFun.degree_cap}"
            )
        self.num = n
        self.den = d

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFun":
        return cls((c,), (1,), _reduced=True) if c else cls((), (1,), _reduced=True)

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "RatFun":
        """``coeff * t**exponent`` for any integer exponent."""
        c = Fraction(coeff)
        if c == 0:
            return cls.const(0)
        if exponent >= 0:
            return cls((0,) * exponent + (c,), (1,), _reduced=True)
        return cls((c,), (0,) * (-exponent) + (1,), _reduced=True)

    @staticmethod
    def _coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFun.const(x)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFun(_padd(self.num, o.num), self.den)
        return RatFun(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun(tuple(-c for c in self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFun.const(0)
        return RatFun(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self) -> "RatFun":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = RatFun.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    # valuation ----------------------------------------------------------
    def valuation(self):
        """Order of vanishing at ``t = 0``; ``inf`` for zero."""
        if not self.num:
            return INF
        return _ord0(self.num) - _ord0(self.den)

    def leading_coefficient(self) -> Fraction:
        """Coefficient of ``t**valuation`` in the Laurent expansion at 0."""
        if not self.num:
            return Fraction(0)
        return self.num[_ord0(self.num)] / self.den[_ord0(self.den)]

    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def __call__(self, t) -> Fraction:
        def ev(p):
            acc = Fraction(0)
            for c in reversed(p):
                acc = acc * t + c
            return acc

        return ev(self.num) / ev(self.den)

    def __repr__(self):
        def show(p):
            terms = [f"{c}*t^{i}" if i else f"{c}" for i, c in enumerate(p) if c]
            return " + ".join(terms) or "0"

        if self.den == (1,):
            return f"RatFun({show(self.num)})"
        return f"RatFun(({show(self.num)}) / ({show(self.den)}))"


def valuation(f) -> int | float:
    return f.valuation()


# ---------------------------------------------------------------------------
# field-generic dense linear algebra


def _zero_like(x):
    return x * 0


def identity(m: int, one) -> list[list]:
    zero = one * 0
    return [[one if i == j else zero for j in range(m)] for i in range(m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for r in range(k):
                x, y = a[i][r], b[r][j]
                if _is_zero(x) or _is_zero(y):
                    continue
                acc = x * y if acc is None else acc + x * y
            row.append(acc if acc is not None else _zero_like(a[i][0]))
        out.append(row)
    return out


def _is_zero(x) -> bool:
    return x == 0


def mat_inv(a: Sequence[Sequence]) -> list[list]:
    """Gauss-Jordan inverse with pivot search; raises :class:`SingularMatrixError`."""
    m = len(a)
    one = _one_like(a)
    aug = [list(row) + identity(m, one)[i] for i, row in enumerate(a)]
    for col in range(m):
        piv = next((r for r in range(col, m) if not _is_zero(aug[r][col])), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(m):
            if r != col and not _is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


def _one_like(a):
    for row in a:
        for x in row:
            return x * 0 + 1
    raise ValueError("empty matrix")


def det(a: Sequence[Sequence]):
    """Determinant by fraction-producing elimination with pivot search."""
    m = len(a)
    if m == 0:
        return 1
    rows = [list(r) for r in a]
    sign = 1
    result = None
    for col in range(m):
        piv = next((r for r in range(col, m) if not _is_zero(rows[r][col])), None)
        if piv is None:
            return rows[0][0] * 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        p = rows[col][col]
        result = p if result is None else result * p
        for r in range(col + 1, m):
            if not _is_zero(rows[r][col]):
                f = rows[r][col] / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return result if sign == 1 else -result


def lu(a: Sequence[Sequence]) -> tuple[list[list], list[list]]:
    """``a = L U`` with ``L`` unit lower triangular and no pivoting.

    A vanishing pivot means a leading principal minor is zero, which is a
    genericity failure for the callers; it raises :class:`SingularMatrixError`.
    """
    m = len(a)
    one = _one_like(a)
    zero = one * 0
    u = [list(r) for r in a]
    low = identity(m, one)
    for col in range(m):
        p = u[col][col]
        if _is_zero(p):
            raise SingularMatrixError(f"leading minor {col + 1} vanishes")
        for r in range(col + 1, m):
            if not _is_zero(u[r][col]):
                f = u[r][col] / p
                low[r][col] = f
                u[r] = [x - f * y for x, y in zip(u[r], u[col])]
                u[r][col] = zero
    return low, u


def rref(a: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in a]
    if not rows:
        return rows, []
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(nr):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list:
    """Solve the square system ``a x = b``.

    Raises :class:`SingularMatrixError` for a singular ``a`` even when the
    system happens to be consistent, and :class:`InconsistentSystemError`
    only for non-square systems without a solution.
    """
    nr = len(a)
    nc = len(a[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if nc in pivots:
        if nr == nc:
            raise SingularMatrixError("singular system (inconsistent)")
        raise InconsistentSystemError("system has no solution")
    if len(pivots) < nc:
        raise SingularMatrixError("singular system (solution not unique)")
    return [red[i][nc] for i in range(nc)]
