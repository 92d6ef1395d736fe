"""Truncated power series in x with AQCoeff coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from core.errors import NonUnitConstant
from core.graded import AQCoeff
from core.qseries import Window

Discrepancy = Tuple[int, int, int, int, int]

_ZERO = AQCoeff()
_ONE = AQCoeff.constant(1)


@dataclass(frozen=True)
class XSeries:
    x_order: int
    coeffs: Tuple[AQCoeff, ...]

    def __post_init__(self):
        if self.x_order < 0:
            raise ValueError("x_order must be non-negative")
        if len(self.coeffs) != self.x_order:
            raise ValueError(f"expected {self.x_order} coefficients, got {len(self.coeffs)}")

    @classmethod
    def build(cls, coeffs: Iterable[AQCoeff], x_order: int) -> "XSeries":
        cs = list(coeffs)[:x_order]
        cs += [_ZERO] * (x_order - len(cs))
        return cls(x_order, tuple(cs))

    @classmethod
    def zero(cls, x_order: int) -> "XSeries":
        return cls.build([], x_order)

    @classmethod
    def one(cls, x_order: int) -> "XSeries":
        return cls.build([_ONE], x_order)

    @classmethod
    def monomial(cls, l: int, c: AQCoeff, x_order: int) -> "XSeries":
        return cls.build([_ZERO] * l + [c], x_order)

    def __getitem__(self, l: int) -> AQCoeff:
        return self.coeffs[l] if 0 <= l < self.x_order else _ZERO

    @property
    def q_window(self) -> Window:
        w = None
        for c in self.coeffs:
            if c.window_end is not None:
                w = c.window_end if w is None else min(w, c.window_end)
        return w

    # -- ring operations --------------------------------------------------
    def __neg__(self) -> "XSeries":
        return XSeries(self.x_order, tuple(-c for c in self.coeffs))

    def __add__(self, other: "XSeries") -> "XSeries":
        L = min(self.x_order, other.x_order)
        return XSeries(L, tuple(self.coeffs[l] + other.coeffs[l] for l in range(L)))

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + (-other)

    def __mul__(self, other: Union["XSeries", AQCoeff, int]) -> "XSeries":
        if not isinstance(other, XSeries):
            return XSeries(self.x_order, tuple(c * other for c in self.coeffs))
        L = min(self.x_order, other.x_order)
        out: List[AQCoeff] = []
        for l in range(L):
            acc = _ZERO
            for i in range(l + 1):
                fi, gj = self.coeffs[i], other.coeffs[l - i]
                if fi.is_zero and fi.exact or gj.is_zero and gj.exact:
                    continue
                acc = acc + fi * gj
            out.append(acc)
        return XSeries(L, tuple(out))

    __rmul__ = __mul__

    # -- substitutions ----------------------------------------------------
    def qshift(self, e: int) -> "XSeries":
        """x -> q**e x."""
        if e == 0:
            return self
        return XSeries(self.x_order, tuple(c.shift_q(e * l) for l, c in enumerate(self.coeffs)))

    def x_scale(self, c: Union[AQCoeff, int]) -> "XSeries":
        """x -> c x."""
        out = []
        p: Union[AQCoeff, int] = 1
        for l, f in enumerate(self.coeffs):
            out.append(f * p)
            p = p * c
        return XSeries(self.x_order, tuple(out))

    def shift_x(self, k: int) -> "XSeries":
        """Multiply by x**k (k >= 0), keeping x_order."""
        if k < 0:
            raise ValueError("negative x powers are not representable")
        return XSeries.build([_ZERO] * k + list(self.coeffs), self.x_order)

    def times_q(self, e: int) -> "XSeries":
        """Multiply every coefficient by q**e."""
        return XSeries(self.x_order, tuple(c.shift_q(e) for c in self.coeffs))

    def truncate_q(self, window_end: Window) -> "XSeries":
        return XSeries(self.x_order, tuple(c.truncate(window_end) for c in self.coeffs))

    # -- inverse and exponential -----------------------------------------
    def x_invert(self) -> "XSeries":
        if self.x_order == 0:
            return self
        c0 = self.coeffs[0]
        if not (c0 - _ONE).is_zero:
            raise NonUnitConstant(f"constant term {c0} is not 1")
        g: List[AQCoeff] = [c0]
        for l in range(1, self.x_order):
            acc = _ZERO
            for i in range(1, l + 1):
                fi = self.coeffs[i]
                if fi.is_zero and fi.exact:
                    continue
                acc = acc + fi * g[l - i]
            g.append(-acc)
        return XSeries(self.x_order, tuple(g))

    def log_derivative_form(self) -> "XSeries":
        """x d/dx applied coefficient-wise: [x^l] -> l*[x^l]."""
        return XSeries(self.x_order, tuple(c * l for l, c in enumerate(self.coeffs)))

    def x_exp(self) -> "XSeries":
        if self.x_order and not self.coeffs[0].is_zero:
            raise NonUnitConstant("x_exp needs a series without constant term")
        return x_exp_from_log_derivative(self.log_derivative_form())

    # -- comparison -------------------------------------------------------
    def first_discrepancy(self, other: "XSeries") -> Optional[Discrepancy]:
        """(x power, a power, q power, self coefficient, other coefficient)."""
        L = min(self.x_order, other.x_order)
        for l in range(L):
            d = self.coeffs[l].first_difference(other.coeffs[l])
            if d is not None:
                return (l,) + d
        return None

    def agrees_with(self, other: "XSeries") -> bool:
        return self.first_discrepancy(other) is None

    def totals(self) -> List[int]:
        """Coefficients at a = q = 1 (exact coefficients only)."""
        return [c.value_at_one() for c in self.coeffs]

    def __str__(self) -> str:
        from core.utils_format import fmt_xseries

        return fmt_xseries(self)


def x_exp_from_log_derivative(g: XSeries) -> XSeries:
    """exp(F) from G = x F'; E_0 = 1 and k E_k = sum_{j=1..k} G_j E_{k-j}."""
    if g.x_order == 0:
        return g
    e: List[AQCoeff] = [_ONE]
    for k in range(1, g.x_order):
        acc = _ZERO
        for j in range(1, k + 1):
            gj = g.coeffs[j]
            if gj.is_zero and gj.exact:
                continue
            acc = acc + gj * e[k - j]
        e.append(acc.exact_div_int(k))
    return XSeries(g.x_order, tuple(e))


def discrepancy_record(d: Optional[Discrepancy], **where) -> Optional[dict]:
    """Report-friendly form of a first discrepancy; None passes through."""
    if d is None:
        return None
    x, a, q, expected, got = d
    out = dict(where)
    out.update({"x": x, "a": a, "q": q, "expected": str(expected), "got": str(got)})
    return out


def x_add(f: XSeries, g: XSeries) -> XSeries:
    return f + g


def x_mul(f: XSeries, g: XSeries) -> XSeries:
    return f * g


def qshift(f: XSeries, e: int) -> XSeries:
    return f.qshift(e)


def x_scale(f: XSeries, c: Union[AQCoeff, int]) -> XSeries:
    return f.x_scale(c)


def x_invert(f: XSeries) -> XSeries:
    return f.x_invert()


def x_exp(f: XSeries) -> XSeries:
    return f.x_exp()


def truncate_q(f: XSeries, window_end: Window) -> XSeries:
    return f.truncate_q(window_end)


def first_discrepancy(expected: XSeries, got: XSeries) -> Optional[Discrepancy]:
    return expected.first_discrepancy(got)


def product(factors: Sequence[XSeries], x_order: int) -> XSeries:
    out = XSeries.one(x_order)
    for f in factors:
        out = out * f
    return out
