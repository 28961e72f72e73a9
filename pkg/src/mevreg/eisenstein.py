"""Truncated q-expansions of the Eisenstein families and Siegel-unit logs.

Every series is a :class:`TauQSeries`: a finite map (alpha, m) -> coefficient
representing sum c_{alpha,m} tau^m q^alpha with exact rational exponents
alpha >= 0 (q^alpha = e(alpha tau)) and integer tau-powers m >= 0.  A series
never stores terms with alpha beyond its cutoff, and products later inherit
the smaller cutoff, so the truncation error of everything downstream is
controlled by the smallest neglected exponent.

The families:

* ``e_series``   -- weight-k series indexed by an elliptic parameter
  x = (x1, x2) in (R/Z)^2; exponents are m*n with n ≡ ±x1 (mod 1).
* ``g_series``   -- the interpolated family with exponents m*n over
  (m, n) ≡ ±x (mod 1) and coefficients m^{k-1}.
* ``gn_series``  -- the level-N integral-coefficient family in q^{1/N}.
* ``h_series``   -- the sigma-partner of ``g_series`` (integer exponents).
* ``log_siegel_series`` -- branch-fixed logarithm of the Siegel unit g_x.
* ``eichler_series``    -- primitive of 2*pi*i * E_x^{(k)} d(tau) with
  regularised value 0 at infinity.

Elliptic parameters are exact rationals stored reduced into [0, 1); the
sigma action is x -> (x2, -x1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from mevreg.specfun import (
    bernoulli_poly,
    e2pi,
    periodic_zeta,
)

__all__ = [
    "EisensteinSpec",
    "EllipticParam",
    "TauQSeries",
    "DEFAULT_CUTOFF",
    "e_series",
    "eichler_series",
    "g_series",
    "gn_series",
    "h_series",
    "log_siegel_series",
    "sigma_companion",
    "sigma_param",
    "qdump_rows",
]

TWO_PI_I = 2j * math.pi

DEFAULT_CUTOFF = Fraction(12)


# ---------------------------------------------------------------------------
# Elliptic parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class EllipticParam:
    """A point of (R/Z)^2 with exact rational coordinates in [0, 1)."""

    x1: Fraction
    x2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x1", Fraction(self.x1) % 1)
        object.__setattr__(self, "x2", Fraction(self.x2) % 1)

    @staticmethod
    def of(x1, x2) -> "EllipticParam":
        return EllipticParam(Fraction(x1), Fraction(x2))

    def __neg__(self) -> "EllipticParam":
        return EllipticParam(-self.x1, -self.x2)

    def __add__(self, other: "EllipticParam") -> "EllipticParam":
        return EllipticParam(self.x1 + other.x1, self.x2 + other.x2)

    def sigma(self) -> "EllipticParam":
        """Right action of sigma = ((0,-1),(1,0)) on the row vector: (x2, -x1)."""
        return EllipticParam(self.x2, -self.x1)

    @property
    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    @property
    def has_zero_coord(self) -> bool:
        return self.x1 == 0 or self.x2 == 0

    def level(self) -> int:
        """Smallest N with N*x integral."""
        return math.lcm(self.x1.denominator, self.x2.denominator)

    def __str__(self) -> str:
        return f"({self.x1},{self.x2})"


def sigma_param(x: EllipticParam) -> EllipticParam:
    """sigma-transformed parameter (x2, -x1) mod 1."""
    return x.sigma()


# ---------------------------------------------------------------------------
# Series container
# ---------------------------------------------------------------------------


class TauQSeries:
    """Finite sum  c_{alpha,m} tau^m q^alpha  with exact rational alpha.

    Instances are immutable after construction and freely shareable.  Zero
    coefficients and terms with alpha > cutoff are never stored.
    """

    __slots__ = ("terms", "cutoff", "level_hint")

    def __init__(
        self,
        terms: Mapping[tuple[Fraction, int], complex],
        cutoff: Fraction,
        level_hint: int = 1,
    ):
        cutoff = Fraction(cutoff)
        clean: dict[tuple[Fraction, int], complex] = {}
        for (alpha, m), c in terms.items():
            if c == 0 or alpha > cutoff:
                continue
            if alpha < 0 or m < 0:
                raise ValueError(f"invalid term exponents (alpha={alpha}, m={m})")
            clean[(alpha, m)] = complex(c)
        self.terms = clean
        self.cutoff = cutoff
        self.level_hint = max(1, int(level_hint))

    # -- basic algebra ------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[tuple[Fraction, int], complex]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, alpha, m: int = 0) -> complex:
        return self.terms.get((Fraction(alpha), m), 0.0 + 0.0j)

    def __add__(self, other: "TauQSeries") -> "TauQSeries":
        cutoff = min(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0.0) + c
        return TauQSeries(out, cutoff, max(self.level_hint, other.level_hint))

    def __sub__(self, other: "TauQSeries") -> "TauQSeries":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "TauQSeries":
        return TauQSeries(
            {key: c * v for key, v in self.terms.items()}, self.cutoff, self.level_hint
        )

    def shift_tau(self, j: int) -> "TauQSeries":
        """Multiply by tau^j (j >= 0)."""
        if j < 0:
            raise ValueError("negative tau power would leave the series ring")
        if j == 0:
            return self
        return TauQSeries(
            {(a, m + j): c for (a, m), c in self.terms.items()},
            self.cutoff,
            self.level_hint,
        )

    def derivative(self) -> "TauQSeries":
        """d/d(tau): tau^m q^alpha -> m tau^{m-1} q^alpha + 2 pi i alpha tau^m q^alpha."""
        out: dict[tuple[Fraction, int], complex] = {}
        for (a, m), c in self.terms.items():
            if m >= 1:
                key = (a, m - 1)
                out[key] = out.get(key, 0.0) + m * c
            if a != 0:
                key = (a, m)
                out[key] = out.get(key, 0.0) + TWO_PI_I * float(a) * c
        return TauQSeries(out, self.cutoff, self.level_hint)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def rescale_exponents(self, factor: Fraction) -> "TauQSeries":
        """Substitute tau -> factor*tau on pure q-series (no tau-powers beyond m=0... ).

        Each term c tau^m q^alpha becomes c (factor*tau)^m q^{alpha*factor}.
        """
        factor = Fraction(factor)
        out = {
            (a * factor, m): c * float(factor) ** m for (a, m), c in self.terms.items()
        }
        return TauQSeries(out, self.cutoff * factor, self.level_hint)

    def __repr__(self) -> str:
        return f"TauQSeries({len(self.terms)} terms, cutoff={self.cutoff})"


# ---------------------------------------------------------------------------
# Family specs and sigma metadata
# ---------------------------------------------------------------------------

_FAMILIES = ("E", "G", "H", "logSiegel")


@dataclass(frozen=True)
class EisensteinSpec:
    """Which family/weight/parameter generated a series."""

    family: str
    weight: int
    param: EllipticParam

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.weight < 1:
            raise ValueError("weight must be >= 1")
        if self.family == "E" and self.weight == 2 and self.param.is_zero:
            raise ValueError("E with k = 2 requires a nonzero parameter")
        if self.family == "H" and self.weight == 2 and self.param.x1 == 0:
            raise ValueError("H with k = 2 requires x1 != 0")
        if self.family == "logSiegel" and self.param.is_zero:
            raise ValueError("the Siegel-unit log requires a nonzero parameter")

    def __str__(self) -> str:
        return f"{self.family}^({self.weight})_{self.param}"


def sigma_companion(spec: EisensteinSpec) -> tuple[EisensteinSpec, int]:
    """(companion, sign) with  f(-1/tau) = sign * tau^k * f_companion(tau).

    E transforms into E at the sigma-moved parameter; G and H swap, with
    G picking up (-1)^k (G|sigma^2 = G|(-I) forces the sign).
    """
    k, x = spec.weight, spec.param
    if spec.family == "E":
        return EisensteinSpec("E", k, x.sigma()), 1
    if spec.family == "G":
        return EisensteinSpec("H", k, x), (-1) ** k
    if spec.family == "H":
        return EisensteinSpec("G", k, x), 1
    raise ValueError(f"no function-level sigma data for family {spec.family!r}")


def series_for(spec: EisensteinSpec, cutoff: Fraction = DEFAULT_CUTOFF) -> TauQSeries:
    if spec.family == "E":
        return e_series(spec.weight, spec.param, cutoff)
    if spec.family == "G":
        return g_series(spec.weight, spec.param, cutoff)
    if spec.family == "H":
        return h_series(spec.weight, spec.param, cutoff)
    return log_siegel_series(spec.param, cutoff)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _cot_factor(x: Fraction) -> complex:
    """(1 + e(x)) / (1 - e(x)) = i cot(pi x), x != 0 mod 1."""
    return complex(0.0, 1.0 / math.tan(math.pi * float(x % 1)))


@lru_cache(maxsize=4096)
def e_series(
    k: int, x: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> TauQSeries:
    """Weight-k series at parameter x.

    Constant term: {x1} - 1/2 (k = 1, x1 != 0); -(1/2)(1+e(x2))/(1-e(x2))
    (k = 1, x1 = 0, x2 != 0); 0 at the origin; B_k({x1})/k for k >= 2.
    Tails: - sum e(m x2) n^{k-1} q^{mn} over n ≡ x1 (mod 1) plus
    (-1)^{k+1} times the mirrored sum over n ≡ -x1.
    """
    if k < 1:
        raise ValueError("weight must be >= 1")
    if k == 2 and x.is_zero:
        raise ValueError("weight 2 at the origin is excluded (not holomorphic)")
    cutoff = Fraction(cutoff)
    terms: dict[tuple[Fraction, int], complex] = {}
    if k == 1:
        if x.x1 != 0:
            a0 = complex(float(x.x1) - 0.5)
        elif x.x2 != 0:
            a0 = -0.5 * _cot_factor(x.x2)
        else:
            a0 = 0.0 + 0.0j
    else:
        a0 = complex(bernoulli_poly(k, x.x1) / k)
    if a0 != 0:
        terms[(Fraction(0), 0)] = a0
    _accumulate_e_branch(terms, k, x.x1, x.x2, cutoff, -1.0 + 0.0j, conj=False)
    _accumulate_e_branch(
        terms, k, -x.x1 % 1, x.x2, cutoff, complex((-1) ** (k + 1)), conj=True
    )
    return TauQSeries(terms, cutoff, x.level())


def _accumulate_e_branch(terms, k, n_res, x2, cutoff, sign, conj):
    """Add sign * e(±m x2) n^{k-1} q^{mn} over n ≡ n_res (mod 1), n > 0, m >= 1."""
    n = n_res if n_res != 0 else Fraction(1)
    while n <= cutoff:
        nk = float(n) ** (k - 1)
        mmax = int(cutoff / n)
        for m in range(1, mmax + 1):
            phase = e2pi(-m * x2 if conj else m * x2)
            key = (m * n, 0)
            terms[key] = terms.get(key, 0.0) + sign * phase * nk
        n += 1


@lru_cache(maxsize=4096)
def g_series(
    k: int, x: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> TauQSeries:
    """Interpolated family: m^{k-1} q^{mn} over (m, n) ≡ ±x (mod 1), m, n > 0.

    Constant term: -B_1({x2}) / -B_1({x1}) in the single-zero-coordinate
    k = 1 cases, -B_k({x1})/k when k >= 2 and x2 = 0, else 0.
    """
    if k < 1:
        raise ValueError("weight must be >= 1")
    cutoff = Fraction(cutoff)
    terms: dict[tuple[Fraction, int], complex] = {}
    if k == 1:
        if x.x1 == 0 and x.x2 != 0:
            a0 = -bernoulli_poly(1, x.x2)
        elif x.x1 != 0 and x.x2 == 0:
            a0 = -bernoulli_poly(1, x.x1)
        else:
            a0 = 0.0
    else:
        a0 = -bernoulli_poly(k, x.x1) / k if x.x2 == 0 else 0.0
    if a0 != 0:
        terms[(Fraction(0), 0)] = complex(a0)
    _accumulate_g_branch(terms, k, x.x1, x.x2, cutoff, 1.0)
    _accumulate_g_branch(terms, k, -x.x1 % 1, -x.x2 % 1, cutoff, float((-1) ** k))
    return TauQSeries(terms, cutoff, x.level())


def _accumulate_g_branch(terms, k, m_res, n_res, cutoff, sign):
    m = m_res if m_res != 0 else Fraction(1)
    n0 = n_res if n_res != 0 else Fraction(1)
    while m * n0 <= cutoff:
        mk = sign * float(m) ** (k - 1)
        n = n0
        while m * n <= cutoff:
            key = (m * n, 0)
            terms[key] = terms.get(key, 0.0) + mk
            n += 1
        m += 1


@lru_cache(maxsize=4096)
def gn_series(
    k: int,
    level: int,
    xbar: tuple[int, int],
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> TauQSeries:
    """Level-N family in q^{1/N}: m^{k-1} q^{mn/N} over integer (m, n) ≡ xbar mod N.

    Satisfies  N^{k-1} * g_series(k, xbar/N)(q -> q^{1/N} rescale)  exactly.
    """
    if k < 1 or level < 1:
        raise ValueError("weight and level must be >= 1")
    n_lv = level
    a, b = xbar[0] % n_lv, xbar[1] % n_lv
    cutoff = Fraction(cutoff)
    terms: dict[tuple[Fraction, int], complex] = {}
    if k == 1:
        if a == 0 and b != 0:
            a0 = -bernoulli_poly(1, Fraction(b, n_lv))
        elif a != 0 and b == 0:
            a0 = -bernoulli_poly(1, Fraction(a, n_lv))
        else:
            a0 = 0.0
    else:
        a0 = -(n_lv ** (k - 1)) * bernoulli_poly(k, Fraction(a, n_lv)) / k if b == 0 else 0.0
    if a0 != 0:
        terms[(Fraction(0), 0)] = complex(a0)
    for m_res, n_res, sign in (
        (a, b, 1.0),
        ((-a) % n_lv, (-b) % n_lv, float((-1) ** k)),
    ):
        m = m_res if m_res != 0 else n_lv
        n_start = n_res if n_res != 0 else n_lv
        while Fraction(m * n_start, n_lv) <= cutoff:
            mk = sign * float(m) ** (k - 1)
            n = n_start
            while Fraction(m * n, n_lv) <= cutoff:
                key = (Fraction(m * n, n_lv), 0)
                terms[key] = terms.get(key, 0.0) + mk
                n += n_lv
            m += n_lv
    return TauQSeries(terms, cutoff, n_lv)


@lru_cache(maxsize=4096)
def h_series(
    k: int, x: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> TauQSeries:
    """sigma-partner family with integer exponents:

    sum_{m,n>=1} (e(m x1 + n x2) + (-1)^k e(-m x1 - n x2)) n^{k-1} q^{mn},
    with the four-case cotangent constant term at k = 1 and
    (-1)^k * periodic_zeta(-x2, 1-k) for k >= 2.
    """
    if k < 1:
        raise ValueError("weight must be >= 1")
    if k == 2 and x.x1 == 0:
        raise ValueError("H with k = 2 requires x1 != 0")
    cutoff = Fraction(cutoff)
    terms: dict[tuple[Fraction, int], complex] = {}
    if k == 1:
        if x.is_zero:
            a0 = 0.0 + 0.0j
        elif x.x1 == 0:
            a0 = 0.5 * _cot_factor(x.x2)
        elif x.x2 == 0:
            a0 = 0.5 * _cot_factor(x.x1)
        else:
            a0 = 0.5 * (_cot_factor(x.x1) + _cot_factor(x.x2))
    else:
        a0 = (-1) ** k * periodic_zeta(-x.x2, 1 - k)
    if a0 != 0:
        terms[(Fraction(0), 0)] = complex(a0)
    sign = float((-1) ** k)
    mmax = int(cutoff)
    for m in range(1, mmax + 1):
        for n in range(1, int(cutoff / m) + 1):
            phase = e2pi(m * x.x1 + n * x.x2)
            c = (phase + sign * phase.conjugate()) * float(n) ** (k - 1)
            key = (Fraction(m * n), 0)
            terms[key] = terms.get(key, 0.0) + c
    return TauQSeries(terms, cutoff, x.level())


@lru_cache(maxsize=4096)
def log_siegel_series(
    x: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> TauQSeries:
    """Branch-fixed logarithm of the Siegel unit g_x, x != 0:

        pi i B_2({x1}) tau  +  log(1 - e(x2)) [x1 = 0 only]
        - sum e(m x2)/m q^{mn}   (n ≡ x1 mod 1)
        - sum e(-m x2)/m q^{mn}  (n ≡ -x1 mod 1),

    with log(1 - e(x2)) = log|1 - e(x2)| + pi i ({x2} - 1/2).  Its tau
    derivative is 2 pi i times ``e_series(2, x)``, coefficient by coefficient.
    """
    if x.is_zero:
        raise ValueError("the Siegel-unit log requires a nonzero parameter")
    cutoff = Fraction(cutoff)
    terms: dict[tuple[Fraction, int], complex] = {}
    terms[(Fraction(0), 1)] = complex(math.pi * bernoulli_poly(2, x.x1)) * 1j
    if x.x1 == 0:
        t = float(x.x2)
        terms[(Fraction(0), 0)] = complex(
            math.log(2.0 * math.sin(math.pi * t)), math.pi * (t - 0.5)
        )
    for n_res, conj in ((x.x1, False), (-x.x1 % 1, True)):
        n = n_res if n_res != 0 else Fraction(1)
        while n <= cutoff:
            for m in range(1, int(cutoff / n) + 1):
                phase = e2pi(-m * x.x2 if conj else m * x.x2)
                key = (m * n, 0)
                terms[key] = terms.get(key, 0.0) - phase / m
            n += 1
    return TauQSeries(terms, cutoff, x.level())


@lru_cache(maxsize=4096)
def eichler_series(
    k: int, x: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> TauQSeries:
    """Primitive of 2 pi i E^(k)_x d(tau) with regularised value 0 at infinity.

    Term-wise: the constant a0 lifts to 2 pi i a0 tau, and c q^alpha lifts
    to (c/alpha) q^alpha; no constant of integration is introduced.
    """
    if k < 2:
        raise ValueError("Eichler integrals are taken for weight >= 2")
    base = e_series(k, x, cutoff)
    terms: dict[tuple[Fraction, int], complex] = {}
    for (alpha, m), c in base:
        if alpha == 0:
            terms[(alpha, m + 1)] = TWO_PI_I * c
        else:
            terms[(alpha, m)] = c / float(alpha)
    return TauQSeries(terms, base.cutoff, base.level_hint)


# ---------------------------------------------------------------------------
# q-expansion dump (CLI-facing format)
# ---------------------------------------------------------------------------


def qdump_rows(series: TauQSeries) -> list[str]:
    """CSV rows ``alpha_num,alpha_den,tau_power,coeff_re,coeff_im`` sorted by
    (alpha, tau_power)."""
    rows = []
    for (alpha, m) in sorted(series.terms):
        c = series.terms[(alpha, m)]
        rows.append(
            f"{alpha.numerator},{alpha.denominator},{m},{c.real!r},{c.imag!r}"
        )
    return rows
