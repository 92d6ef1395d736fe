"""Partitions, symmetric-group characters and Schur/power-sum conversions.

Production path: Murnaghan-Nakayama characters on beta-sets (abacus form),
memoized. Slow oracle: Jacobi-Trudi determinants in explicit t-variables via
sympy, where h_n is the coefficient of x^n in exp(sum_k t_k x^k).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Tuple

import sympy
from sympy.utilities.iterables import partitions as sympy_partitions

from core.errors import NonIntegralCoefficient, SizeCapExceeded
from core.settings import DEFAULT_SIZE_CAP

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if not text or text in ("0", "empty"):
            return cls(())
        return cls(tuple(sorted((int(p) for p in text.split(",") if p.strip()), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def scaled(self, m: int) -> "Partition":
        return Partition(tuple(p * m for p in self.parts))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def kappa(mu: Partition) -> int:
    """2 * sum over boxes (i, j) of (j - i)."""
    return 2 * sum(j - i for i, row in enumerate(mu.parts, start=1) for j in range(1, row + 1))


def partitions_of(n: int, max_part: int = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield Partition(())
        return
    if n < 0 or max_part < 1:
        return
    # sympy reuses the multiplicity dict between yields
    for mult in sympy_partitions(n, k=max_part):
        yield Partition(tuple(p for p, c in sorted(mult.items(), reverse=True) for _ in range(c)))


def z_rho(rho: Partition) -> int:
    """Centralizer order prod_i i^{m_i} m_i!."""
    out = 1
    for i in set(rho.parts):
        mi = rho.parts.count(i)
        out *= i ** mi * factorial(mi)
    return out


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama
# ---------------------------------------------------------------------------

def _beta_set(parts: Tuple[int, ...]) -> Tuple[int, ...]:
    ell = len(parts)
    return tuple(p + ell - 1 - i for i, p in enumerate(parts))


def _from_beta(beta: Tuple[int, ...]) -> Tuple[int, ...]:
    b = sorted(beta, reverse=True)
    ell = len(b)
    parts = tuple(x - (ell - 1 - i) for i, x in enumerate(b))
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=4096)
def _character(parts: Tuple[int, ...], rho: Tuple[int, ...]) -> int:
    if not rho:
        return 1 if not parts else 0
    r, rest = rho[0], rho[1:]
    beta = _beta_set(parts)
    present = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in present:
            continue
        # sign = (-1)^(leg length) = (-1)^#beta strictly between nb and b
        height = sum(1 for x in beta if nb < x < b)
        new = tuple(x if x != b else nb for x in beta)
        total += (-1) ** height * _character(_from_beta(new), rest)
    return total


def character(lam: Partition, rho: Partition) -> int:
    if lam.size != rho.size:
        raise ValueError(f"|{lam}| != |{rho}|")
    return _character(lam.parts, rho.parts)


def _cap(size: int, size_cap: int) -> None:
    if size > size_cap:
        raise SizeCapExceeded(f"partition size {size} exceeds the cap {size_cap}")


PowerSumVector = Dict[Partition, Fraction]


def schur_in_powersums(lam: Partition, size_cap: int = DEFAULT_SIZE_CAP) -> PowerSumVector:
    """s_lam = sum_rho chi^lam_rho / z_rho p_rho."""
    _cap(lam.size, size_cap)
    out: PowerSumVector = {}
    for rho in partitions_of(lam.size):
        chi = character(lam, rho)
        if chi:
            out[rho] = Fraction(chi, z_rho(rho))
    return out


def powersum_to_schur(v: PowerSumVector) -> Dict[Partition, Fraction]:
    """Inverse of schur_in_powersums: p_rho = sum_lam chi^lam_rho s_lam."""
    by_size: Dict[int, List[Tuple[Partition, Fraction]]] = {}
    for rho, c in v.items():
        if c:
            by_size.setdefault(rho.size, []).append((rho, c))
    out: Dict[Partition, Fraction] = {}
    for n, terms in sorted(by_size.items()):
        for lam in partitions_of(n):
            c = sum((coef * character(lam, rho) for rho, coef in terms), Fraction(0))
            if c:
                out[lam] = c
    return out


def adams_coeffs(lam: Partition, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> Dict[Partition, int]:
    """C^lam_{mu,m}: s_lam under p_k -> p_{km}, expanded in Schur functions."""
    if m < 1:
        raise ValueError("m must be positive")
    _cap(m * lam.size, size_cap)
    plethysm = {rho.scaled(m): c for rho, c in schur_in_powersums(lam, size_cap).items()}
    out: Dict[Partition, int] = {}
    for mu, c in powersum_to_schur(plethysm).items():
        if c.denominator != 1:
            raise NonIntegralCoefficient(f"C^{lam}_{{{mu},{m}}} = {c}")
        out[mu] = int(c)
    return out


def check_orthogonality(n: int) -> List[Tuple[Partition, Partition, Fraction]]:
    """Pairs violating sum_rho chi^lam_rho chi^mu_rho / z_rho = delta."""
    parts = list(partitions_of(n))
    bad = []
    for lam in parts:
        for mu in parts:
            ip = sum((Fraction(character(lam, r) * character(mu, r), z_rho(r)) for r in parts), Fraction(0))
            if ip != (1 if lam == mu else 0):
                bad.append((lam, mu, ip))
    return bad


# ---------------------------------------------------------------------------
# Jacobi-Trudi oracle in explicit t-variables
# ---------------------------------------------------------------------------

def t_symbols(n: int) -> Tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"t1:{n + 1}") if n else ()


def _complete_and_elementary(n: int, t) -> Tuple[List[sympy.Expr], List[sympy.Expr]]:
    h: List[sympy.Expr] = [sympy.Integer(1)]
    e: List[sympy.Expr] = [sympy.Integer(1)]
    for k in range(1, n + 1):
        h.append(sympy.expand(sum(j * t[j - 1] * h[k - j] for j in range(1, k + 1)) / k))
        e.append(sympy.expand(sum((-1) ** (j - 1) * j * t[j - 1] * e[k - j] for j in range(1, k + 1)) / k))
    return h, e


def jacobi_trudi_schur(lam: Partition, n_vars: int = None) -> sympy.Expr:
    """s_lam as a polynomial in t_1..t_N; uses the dual determinant when the
    conjugate partition is shorter."""
    n_vars = lam.size if n_vars is None else n_vars
    if lam.size == 0:
        return sympy.Integer(1)
    t = t_symbols(n_vars)
    h, e = _complete_and_elementary(lam.size, t)
    conj = lam.conjugate()
    rows, seq = (lam.parts, h) if len(lam) <= len(conj) else (conj.parts, e)
    k = len(rows)

    def entry(i: int, j: int):
        idx = rows[i] - i + j
        if idx < 0:
            return 0
        return seq[idx]

    mat = sympy.Matrix(k, k, lambda i, j: entry(i, j))
    return sympy.expand(mat.det(method="berkowitz"))


def adams_coeffs_oracle(lam: Partition, m: int) -> Dict[Partition, int]:
    """Substitute t_k -> m t_{km} into s_lam and solve for the Schur coefficients."""
    N = m * lam.size
    t = t_symbols(N)
    base = jacobi_trudi_schur(lam, lam.size)
    if lam.size:
        small = t_symbols(lam.size)
        base = sympy.expand(base.subs({small[k - 1]: m * t[k * m - 1] for k in range(1, lam.size + 1)}, simultaneous=True))
    mus = list(partitions_of(N))
    polys = [sympy.Poly(jacobi_trudi_schur(mu, N), *t) if t else None for mu in mus]
    if not t:
        return {Partition(()): int(base)}
    target = sympy.Poly(base, *t)
    monomials = sorted({mon for p in polys for mon in p.monoms()} | set(target.monoms()))
    A = sympy.Matrix([[p.coeff_monomial(mon) for p in polys] for mon in monomials])
    b = sympy.Matrix([target.coeff_monomial(mon) for mon in monomials])
    sol, params = A.gauss_jordan_solve(b)
    if params.shape[0]:
        raise NonIntegralCoefficient(f"Schur basis of degree {N} looks singular")
    out: Dict[Partition, int] = {}
    for mu, c in zip(mus, sol):
        c = sympy.nsimplify(c)
        if not c.is_integer:
            raise NonIntegralCoefficient(f"oracle C^{lam}_{{{mu},{m}}} = {c}")
        if c:
            out[mu] = int(c)
    return out
