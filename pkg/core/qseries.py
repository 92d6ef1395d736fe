"""QWindowSeries: truncated Laurent series in one variable over Python integers.

A value is either an exact Laurent polynomial (``window_end is None``) or a
series known modulo ``q**window_end``. Coefficients are stored densely from
``min_exp``; no coefficient at an exponent >= window_end is ever kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple, Union

from core.errors import InexactDivision, NotAUnit, WindowRequired

Window = Optional[int]


def min_window(a: Window, b: Window) -> Window:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def shift_window(w: Window, e: int) -> Window:
    return None if w is None else w + e


@dataclass(frozen=True)
class QWindowSeries:
    min_exp: int
    coeffs: Tuple[int, ...]
    window_end: Window = None

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @classmethod
    def build(cls, min_exp: int, coeffs, window_end: Window = None) -> "QWindowSeries":
        cs = list(coeffs)
        if window_end is not None:
            keep = max(0, window_end - min_exp)
            del cs[keep:]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return cls.zero(window_end)
        return cls(min_exp + lo, tuple(cs[lo:hi]), window_end)

    @classmethod
    def zero(cls, window_end: Window = None) -> "QWindowSeries":
        return cls(0 if window_end is None else window_end, (), window_end)

    @classmethod
    def one(cls, window_end: Window = None) -> "QWindowSeries":
        return cls.monomial(0, 1, window_end)

    @classmethod
    def monomial(cls, e: int, c: int = 1, window_end: Window = None) -> "QWindowSeries":
        return cls.build(e, [c], window_end)

    @classmethod
    def from_dict(cls, terms: Dict[int, int], window_end: Window = None) -> "QWindowSeries":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls.zero(window_end)
        lo, hi = min(terms), max(terms)
        return cls.build(lo, [terms.get(e, 0) for e in range(lo, hi + 1)], window_end)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.window_end is None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def valuation(self) -> Optional[int]:
        """Lowest exponent that may carry a nonzero coefficient (None for exact zero)."""
        if self.coeffs:
            return self.min_exp
        return self.window_end

    def coeff(self, e: int) -> int:
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def items(self) -> Iterator[Tuple[int, int]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + i, c

    def to_dict(self) -> Dict[int, int]:
        return dict(self.items())

    def value_at_one(self) -> int:
        if not self.exact:
            raise WindowRequired("evaluation at q=1 needs an exact polynomial")
        return sum(self.coeffs)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def __neg__(self) -> "QWindowSeries":
        return QWindowSeries(self.min_exp, tuple(-c for c in self.coeffs), self.window_end)

    def __add__(self, other: Union["QWindowSeries", int]) -> "QWindowSeries":
        if isinstance(other, int):
            other = QWindowSeries.monomial(0, other)
        w = min_window(self.window_end, other.window_end)
        if self.is_zero:
            return other.truncate(w)
        if other.is_zero:
            return self.truncate(w)
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp - lo + i] += c
        return QWindowSeries.build(lo, out, w)

    __radd__ = __add__

    def __sub__(self, other: Union["QWindowSeries", int]) -> "QWindowSeries":
        return self + (-other)

    def __rsub__(self, other: int) -> "QWindowSeries":
        return (-self) + other

    def __mul__(self, other: Union["QWindowSeries", int]) -> "QWindowSeries":
        if isinstance(other, int):
            return QWindowSeries.build(self.min_exp, [c * other for c in self.coeffs], self.window_end)
        f, g = self, other
        if (f.is_zero and f.exact) or (g.is_zero and g.exact):
            return QWindowSeries.zero()
        w = min_window(shift_window(f.window_end, g.valuation()), shift_window(g.window_end, f.valuation()))
        if f.is_zero or g.is_zero:
            return QWindowSeries.zero(w)
        lo = f.min_exp + g.min_exp
        limit = len(f.coeffs) + len(g.coeffs) - 1
        if w is not None:
            limit = min(limit, w - lo)
        if limit <= 0:
            return QWindowSeries.zero(w)
        out = [0] * limit
        gc = g.coeffs
        ng = len(gc)
        for i, a in enumerate(f.coeffs):
            if i >= limit:
                break
            if not a:
                continue
            for j in range(min(ng, limit - i)):
                b = gc[j]
                if b:
                    out[i + j] += a * b
        return QWindowSeries.build(lo, out, w)

    __rmul__ = __mul__

    # ------------------------------------------------------------------
    # exponent bookkeeping
    # ------------------------------------------------------------------
    def shift(self, e: int) -> "QWindowSeries":
        """Multiply by q**e."""
        if self.is_zero:
            return QWindowSeries.zero(shift_window(self.window_end, e))
        return QWindowSeries(self.min_exp + e, self.coeffs, shift_window(self.window_end, e))

    def truncate(self, window_end: Window) -> "QWindowSeries":
        w = min_window(self.window_end, window_end)
        if w == self.window_end:
            return self
        return QWindowSeries.build(self.min_exp, self.coeffs, w)

    def substitute_power(self, k: int) -> "QWindowSeries":
        """q -> q**k for k >= 1."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        if k == 1:
            return self
        w = None if self.window_end is None else self.window_end * k
        return QWindowSeries.from_dict({e * k: c for e, c in self.items()}, w)

    def compress_exponents(self, m: int) -> Optional["QWindowSeries"]:
        """Inverse of substitute_power(m); None when an exponent is not divisible by m."""
        if any(e % m for e, _ in self.items()):
            return None
        w = None if self.window_end is None else -(-self.window_end // m)
        return QWindowSeries.from_dict({e // m: c for e, c in self.items()}, w)

    # ------------------------------------------------------------------
    # division
    # ------------------------------------------------------------------
    def exact_div_int(self, k: int) -> "QWindowSeries":
        if k == 0:
            raise ZeroDivisionError("division of a series by 0")
        for e, c in self.items():
            if c % k:
                raise InexactDivision(f"coefficient {c} at q^{e} is not divisible by {k}")
        return QWindowSeries(self.min_exp, tuple(c // k for c in self.coeffs), self.window_end)

    def invert_unit(self, window_end: Window = None) -> "QWindowSeries":
        if self.is_zero:
            raise NotAUnit("zero is not a unit")
        u0 = self.coeffs[0]
        if u0 not in (1, -1):
            raise NotAUnit(f"lowest coefficient {u0} at q^{self.min_exp} is not +-1")
        a = self.min_exp
        if len(self.coeffs) == 1 and self.exact:
            return QWindowSeries.monomial(-a, u0, window_end)
        w = shift_window(self.window_end, -2 * a)
        w = min_window(w, window_end)
        if w is None:
            raise WindowRequired("inverse of a non-monomial polynomial needs a window")
        n = w + a
        if n <= 0:
            return QWindowSeries.zero(w)
        u = self.coeffs
        nu = len(u)
        g = [0] * n
        g[0] = u0
        for k in range(1, n):
            acc = 0
            for i in range(1, min(k, nu - 1) + 1):
                ui = u[i]
                if ui:
                    acc += ui * g[k - i]
            g[k] = -u0 * acc
        return QWindowSeries.build(-a, g, w)

    def exact_div(self, other: "QWindowSeries") -> "QWindowSeries":
        if not (self.exact and other.exact):
            raise InexactDivision("exact division needs two exact polynomials")
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return QWindowSeries.zero()
        num = list(self.coeffs)
        den = other.coeffs
        nq = len(num) - len(den) + 1
        if nq <= 0:
            raise InexactDivision(f"{self} is not divisible by {other}")
        lead = den[-1]
        quot = [0] * nq
        for i in range(nq - 1, -1, -1):
            c = num[i + len(den) - 1]
            if c % lead:
                raise InexactDivision(f"{self} is not divisible by {other}")
            qc = c // lead
            quot[i] = qc
            if qc:
                for j, d in enumerate(den):
                    num[i + j] -= qc * d
        if any(num):
            raise InexactDivision(f"{self} is not divisible by {other}")
        return QWindowSeries.build(self.min_exp - other.min_exp, quot)

    # ------------------------------------------------------------------
    # comparison to a window
    # ------------------------------------------------------------------
    def first_difference(self, other: "QWindowSeries") -> Optional[Tuple[int, int, int]]:
        """(exponent, self coefficient, other coefficient) of the lowest disagreement
        below the common window, or None."""
        w = min_window(self.window_end, other.window_end)
        exps = sorted(set(self.to_dict()) | set(other.to_dict()))
        for e in exps:
            if w is not None and e >= w:
                break
            a, b = self.coeff(e), other.coeff(e)
            if a != b:
                return e, a, b
        return None

    def agrees_with(self, other: "QWindowSeries") -> bool:
        return self.first_difference(other) is None

    def __str__(self) -> str:
        from core.utils_format import fmt_laurent

        return fmt_laurent(self, "q")


def q_add(f: QWindowSeries, g: QWindowSeries) -> QWindowSeries:
    return f + g


def q_mul(f: QWindowSeries, g: QWindowSeries) -> QWindowSeries:
    return f * g


def q_neg(f: QWindowSeries) -> QWindowSeries:
    return -f


def q_invert_unit(f: QWindowSeries, window_end: Window = None) -> QWindowSeries:
    return f.invert_unit(window_end)


def q_exact_div(f: QWindowSeries, g: QWindowSeries) -> QWindowSeries:
    return f.exact_div(g)


def geometric_inverse(d: int, window_end: int) -> QWindowSeries:
    """1/(1 - q**d) to the window."""
    return (QWindowSeries.one() - QWindowSeries.monomial(d)).invert_unit(window_end)
