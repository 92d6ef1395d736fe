"""Laurent polynomials in an outer variable with QWindowSeries coefficients.

``AQCoeff`` is a polynomial in ``a`` (the colour/diagonal-step variable) and
``NuTSeries`` a Laurent polynomial in ``u = nu**(1/2)`` whose inner series live on
the ``sigma = t**(1/(2m))`` grid. Both keep one q-window for every component, so
a component that vanished to the window is still known only to the window.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from core.errors import GridViolation
from core.qseries import QWindowSeries, Window, min_window, shift_window

Scalar = Union[int, QWindowSeries]


class GradedSeries:
    """Immutable map outer exponent -> QWindowSeries with a uniform window."""

    outer_name = "a"
    __slots__ = ("_terms", "window_end")

    def __init__(self, terms: Optional[Mapping[int, QWindowSeries]] = None, window_end: Window = None):
        terms = dict(terms or {})
        w = window_end
        for s in terms.values():
            w = min_window(w, s.window_end)
        clean: Dict[int, QWindowSeries] = {}
        for e in sorted(terms):
            s = terms[e].truncate(w)
            if not s.is_zero:
                clean[e] = s
        self._terms = clean
        self.window_end = w

    # -- same-kind construction (subclasses carry extra attributes) ------
    def _like(self, terms: Mapping[int, QWindowSeries], window_end: Window):
        return type(self)(terms, window_end)

    def _check_compatible(self, other: "GradedSeries") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    @classmethod
    def monomial(cls, outer: int, inner: Optional[QWindowSeries] = None, window_end: Window = None, **kw):
        inner = QWindowSeries.one() if inner is None else inner
        return cls({outer: inner}, window_end, **kw)

    @classmethod
    def constant(cls, c: int = 1, window_end: Window = None, **kw):
        return cls({0: QWindowSeries.monomial(0, c)}, window_end, **kw)

    # -- inspection -------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.window_end is None

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def component(self, e: int) -> QWindowSeries:
        s = self._terms.get(e)
        if s is None:
            return QWindowSeries.zero(self.window_end)
        return s

    def items(self) -> Iterator[Tuple[int, QWindowSeries]]:
        return iter(self._terms.items())

    def outer_exponents(self) -> Tuple[int, ...]:
        return tuple(self._terms)

    def q_valuation(self) -> Optional[int]:
        if self._terms:
            return min(s.min_exp for s in self._terms.values())
        return self.window_end

    def coefficients(self) -> Iterator[Tuple[int, int, int]]:
        """(outer exponent, inner exponent, coefficient) in lexicographic order."""
        for e, s in self._terms.items():
            for k, c in s.items():
                yield e, k, c

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries) or type(other) is not type(self):
            return NotImplemented
        return self.window_end == other.window_end and self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, self.window_end, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._terms!r}, window_end={self.window_end!r})"

    def __str__(self) -> str:
        from core.utils_format import fmt_graded

        return fmt_graded(self)

    # -- ring operations --------------------------------------------------
    def __neg__(self):
        return self._like({e: -s for e, s in self._terms.items()}, self.window_end)

    def __add__(self, other):
        if isinstance(other, int):
            other = self._like({0: QWindowSeries.monomial(0, other)}, None)
        self._check_compatible(other)
        w = min_window(self.window_end, other.window_end)
        out = dict(self._terms)
        for e, s in other._terms.items():
            out[e] = out[e] + s if e in out else s
        return self._like(out, w)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({e: s * other for e, s in self._terms.items()}, self.window_end)
        if isinstance(other, QWindowSeries):
            return self.scale_inner(other)
        self._check_compatible(other)
        f, g = self, other
        if (f.is_zero and f.exact) or (g.is_zero and g.exact):
            return self._like({}, None)
        w = min_window(shift_window(f.window_end, g.q_valuation()), shift_window(g.window_end, f.q_valuation()))
        out: Dict[int, QWindowSeries] = {}
        for e1, s1 in f._terms.items():
            for e2, s2 in g._terms.items():
                p = (s1 * s2).truncate(w)
                if p.is_zero:
                    continue
                e = e1 + e2
                out[e] = out[e] + p if e in out else p
        return self._like(out, w)

    __rmul__ = __mul__

    def scale_inner(self, s: QWindowSeries):
        """Multiply every component by the same q-series."""
        if s.is_zero and s.exact:
            return self._like({}, None)
        w = min_window(shift_window(self.window_end, s.valuation()), shift_window(s.window_end, self.q_valuation()))
        return self._like({e: (c * s).truncate(w) for e, c in self._terms.items()}, w)

    # -- exponent bookkeeping --------------------------------------------
    def shift_q(self, e: int):
        return self._like({k: s.shift(e) for k, s in self._terms.items()}, shift_window(self.window_end, e))

    def shift_outer(self, k: int):
        return self._like({e + k: s for e, s in self._terms.items()}, self.window_end)

    def truncate(self, window_end: Window):
        return self._like(self._terms, min_window(self.window_end, window_end))

    def map_outer(self, fn: Callable[[int], int]):
        out: Dict[int, QWindowSeries] = {}
        for e, s in self._terms.items():
            ne = fn(e)
            out[ne] = out[ne] + s if ne in out else s
        return self._like(out, self.window_end)

    def exact_div_int(self, k: int):
        return self._like({e: s.exact_div_int(k) for e, s in self._terms.items()}, self.window_end)

    # -- agreement --------------------------------------------------------
    def first_difference(self, other) -> Optional[Tuple[int, int, int, int]]:
        """(outer exponent, q exponent, self coefficient, other coefficient) of the
        lexicographically first disagreement below the common window."""
        self._check_compatible(other)
        w = min_window(self.window_end, other.window_end)
        for e in sorted(set(self._terms) | set(other._terms)):
            d = self.component(e).truncate(w).first_difference(other.component(e).truncate(w))
            if d is not None:
                return (e,) + d
        return None

    def agrees_with(self, other) -> bool:
        return self.first_difference(other) is None


class AQCoeff(GradedSeries):
    """Polynomial in a over q-series; a-exponents are non-negative."""

    outer_name = "a"
    __slots__ = ()

    def __init__(self, terms: Optional[Mapping[int, QWindowSeries]] = None, window_end: Window = None):
        if terms and min(terms) < 0:
            raise ValueError("a-exponents of an AQCoeff are non-negative")
        super().__init__(terms, window_end)

    @classmethod
    def from_table(cls, entries: Iterable[Tuple[int, int, int]], window_end: Window = None) -> "AQCoeff":
        """Build from (a exponent, q exponent, count) triples."""
        buckets: Dict[int, Dict[int, int]] = {}
        for ae, qe, c in entries:
            row = buckets.setdefault(ae, {})
            row[qe] = row.get(qe, 0) + c
        return cls({ae: QWindowSeries.from_dict(row) for ae, row in buckets.items()}, window_end)

    def value_at_one(self) -> int:
        return sum(s.value_at_one() for _, s in self.items())


class NuTSeries(GradedSeries):
    """Laurent polynomial in u = nu**(1/2) over series in sigma-bar = t**(-1/(2m)).

    ``grid`` is the denominator 2m of the sigma grid.
    """

    outer_name = "u"
    __slots__ = ("grid",)

    def __init__(self, terms: Optional[Mapping[int, QWindowSeries]] = None, window_end: Window = None, grid: int = 2):
        if grid < 2 or grid % 2:
            raise ValueError(f"sigma grid denominator must be an even positive integer, got {grid}")
        self.grid = grid
        super().__init__(terms, window_end)

    def _like(self, terms, window_end):
        return NuTSeries(terms, window_end, grid=self.grid)

    def _check_compatible(self, other) -> None:
        super()._check_compatible(other)
        if other.grid != self.grid:
            raise GridViolation(f"mixing sigma grids {self.grid} and {other.grid}; regrid first")

    def __eq__(self, other) -> bool:
        eq = super().__eq__(other)
        if eq is NotImplemented:
            return eq
        return eq and self.grid == other.grid

    __hash__ = GradedSeries.__hash__

    def regrid(self, factor: int) -> "NuTSeries":
        """Refine the grid: sigma -> sigma**factor, grid -> grid*factor."""
        w = None if self.window_end is None else self.window_end * factor
        return NuTSeries({e: s.substitute_power(factor) for e, s in self.items()}, w, grid=self.grid * factor)

    def coarsen(self, factor: int) -> "NuTSeries":
        """Inverse of regrid; GridViolation if some sigma exponent is off the coarse grid."""
        if self.grid % factor or (self.grid // factor) % 2:
            raise GridViolation(f"grid {self.grid} cannot be coarsened by {factor}")
        out = {}
        for e, s in self.items():
            c = s.compress_exponents(factor)
            if c is None:
                raise GridViolation(f"u^{e} component has sigma exponents off the 1/{self.grid // factor} grid")
            out[e] = c
        w = None if self.window_end is None else -(-self.window_end // factor)
        return NuTSeries(out, w, grid=self.grid // factor)

    def on_grid(self, step: int) -> bool:
        return all(k % step == 0 for _, k, _ in self.coefficients())


def aq_from_qseries(s: QWindowSeries, a_exp: int = 0) -> AQCoeff:
    return AQCoeff({a_exp: s}, s.window_end)
