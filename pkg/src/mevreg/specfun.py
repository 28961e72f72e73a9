"""Scalar special functions used by every closed-form evaluation.

Pure, stateless, reentrant.  All functions target ~1e-12 relative accuracy
in double precision; the module-level constants below pin the working
parameters (they are not per-call options).

Conventions
-----------
* ``hurwitz_zeta(y, s)`` is the sum over n > 0 with n ≡ y (mod 1) of n^{-s},
  i.e. the classical Hurwitz zeta ``zeta_H(s, a)`` with a = {y} (a = 1 when
  y ≡ 0), analytically continued to all s != 1.
* ``periodic_zeta(y, s)`` is the sum over n >= 1 of e(ny) n^{-s} with
  e(t) = exp(2*pi*i*t), continued to all s (all s != 1 when y ≡ 0).
* ``bloch_wigner(z)`` is the single-valued dilogarithm
  D(z) = Im Li2(z) + arg(1-z) log|z| on the whole Riemann sphere.
* ``upper_incomplete_gamma(s, x)`` is Gamma(s, x) for complex s and real
  x > 0.
"""

from __future__ import annotations

import cmath
import math
import os
from fractions import Fraction
from functools import lru_cache

import mpmath
from scipy.special import digamma as _digamma
from scipy.special import exp1 as _exp1
from scipy.special import gamma as _gamma

__all__ = [
    "PoleError",
    "PrecisionError",
    "ZETA3",
    "ZETA_PRIME_MINUS2",
    "bernoulli_number",
    "bernoulli_poly",
    "bloch_wigner",
    "e2pi",
    "gamma_fn",
    "hurwitz_zeta",
    "hurwitz_zeta_laurent_at_1",
    "periodic_zeta",
    "upper_incomplete_gamma",
    "upper_incomplete_gamma_ex",
]


class PoleError(ZeroDivisionError):
    """Evaluation requested exactly at a pole."""


class PrecisionError(ArithmeticError):
    """A result could not be produced within the accuracy budget."""


TWO_PI = 2.0 * math.pi

# zeta(3) and zeta'(-2) = -zeta(3)/(4 pi^2), to 30+ digits.  They gate the
# 1e-7 end-to-end budget of the regulator comparisons, so they are pinned
# here rather than recomputed.
ZETA3 = 1.202056903159594285399738161511
ZETA_PRIME_MINUS2 = -ZETA3 / (4.0 * math.pi**2)

# Euler-Maclaurin working parameters: split point and number of Bernoulli
# correction terms.  With M = 30 the first omitted correction is below
# 1e-15 relative throughout |Im s| <= 20, Re s >= 1/2.
_EM_SPLIT = 30
_EM_TERMS = 12

# B_2, B_4, ..., B_26 (B_1 = -1/2 convention plays no role here).
_BERNOULLI_EVEN = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
)

_MP_DPS = int(os.environ.get("MEVREG_PRECISION", "30"))


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n for 0 <= n <= 26."""
    if n < 0 or n > 26:
        raise ValueError(f"Bernoulli number B_{n} not tabulated")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return _BERNOULLI_EVEN[n // 2 - 1]


@lru_cache(maxsize=None)
def _bernoulli_poly_coeffs(k: int) -> tuple[Fraction, ...]:
    """Coefficients of B_k(t) in ascending powers, exact."""
    return tuple(
        Fraction(math.comb(k, j)) * bernoulli_number(k - j) for j in range(k + 1)
    )


def bernoulli_poly(k: int, t: float | Fraction) -> float:
    """Value of the k-th Bernoulli polynomial B_k(t), 1 <= k <= 6."""
    if not 1 <= k <= 6:
        raise ValueError(f"bernoulli_poly supports 1 <= k <= 6, got {k}")
    return _bernoulli_poly_any(k, t)


def _bernoulli_poly_any(k: int, t: float | Fraction) -> float:
    tf = float(t)
    acc = 0.0
    for c in reversed(_bernoulli_poly_coeffs(k)):
        acc = acc * tf + float(c)
    return acc


def e2pi(x: Fraction | float) -> complex:
    """Root of unity / unit-circle point e(x) = exp(2*pi*i*x), x taken mod 1."""
    if isinstance(x, Fraction):
        x = x % 1
        if x == 0:
            return 1.0 + 0.0j
        if 2 * x == 1:
            return -1.0 + 0.0j
        if 4 * x == 1:
            return 1.0j
        if 4 * x == 3:
            return -1.0j
    t = float(x) % 1.0
    return cmath.exp(2j * math.pi * t)


def gamma_fn(s: complex) -> complex:
    """Euler Gamma for complex argument (scipy backend)."""
    return complex(_gamma(complex(s)))


# ---------------------------------------------------------------------------
# Hurwitz and periodic zeta
# ---------------------------------------------------------------------------


def _frac_mod1(y: Fraction | int) -> Fraction:
    return Fraction(y) % 1


def _is_nonpositive_int(s: complex, tol: float = 0.0) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == round(s.real)


def _hurwitz_em(s: complex, a: float) -> complex:
    """Euler-Maclaurin evaluation of zeta_H(s, a); stable for Re(s) >= 1/2."""
    M = _EM_SPLIT
    total = 0.0 + 0.0j
    for n in range(M):
        total += (n + a) ** (-s)
    w = M + a
    total += w ** (1 - s) / (s - 1)
    total += 0.5 * w ** (-s)
    # Correction terms B_{2j}/(2j)! * (s)_{2j-1} * w^{-s-2j+1}.
    poch = s
    wpow = w ** (-s - 1)
    winv2 = 1.0 / (w * w)
    fact = 2.0
    for j in range(1, _EM_TERMS + 1):
        b2j = float(_BERNOULLI_EVEN[j - 1])
        total += (b2j / fact) * poch * wpow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        wpow *= winv2
        fact *= (2 * j + 1) * (2 * j + 2)
    return total


def _hurwitz_core(s: complex, a: Fraction) -> complex:
    """zeta_H(s, a) for a in (0, 1], all s != 1."""
    if s == 1:
        raise PoleError("Hurwitz zeta has a simple pole at s = 1")
    if _is_nonpositive_int(s):
        n = int(-s.real)
        return complex(-_bernoulli_poly_any(n + 1, a) / (n + 1))
    if s.real >= 0.5:
        return _hurwitz_em(s, float(a))
    # Reflection to Re(1-s) > 1/2 through the classical Hurwitz formula,
    # with the periodic zeta expanded into a finite combination of Hurwitz
    # zetas (a is rational, a = p/q):
    #   zeta_H(s, p/q) = Gamma(1-s) (2 pi)^{s-1}
    #       * [ e^{-i pi (1-s)/2} F(p/q, 1-s) + e^{i pi (1-s)/2} F(-p/q, 1-s) ]
    # where F(x, z) = sum_{n>=1} e(nx) n^{-z}.
    s2 = 1 - s
    p, q = a.numerator, a.denominator
    fp = _periodic_sum(p, q, s2)
    fm = _periodic_sum((-p) % q if q > 1 else 0, q, s2)
    pref = gamma_fn(s2) * (2.0 * math.pi) ** (-s2)
    em = cmath.exp(-0.5j * math.pi * s2)
    ep = cmath.exp(0.5j * math.pi * s2)
    return pref * (em * fp + ep * fm)


def _periodic_sum(p: int, q: int, s: complex) -> complex:
    """F(p/q, s) = sum_{n>=1} e(np/q) n^{-s} as q^{-s} sum_j e(jp/q) zeta_H(s, j/q)."""
    total = 0.0 + 0.0j
    for j in range(1, q + 1):
        total += e2pi(Fraction(j * p, q)) * _hurwitz_em_or_exact(s, Fraction(j, q))
    return q ** (-complex(s)) * total


def _hurwitz_em_or_exact(s: complex, a: Fraction) -> complex:
    if _is_nonpositive_int(s):
        n = int(-s.real)
        return complex(-_bernoulli_poly_any(n + 1, a) / (n + 1))
    return _hurwitz_em(s, float(a))


def hurwitz_zeta(y: Fraction | int, s: complex) -> complex:
    """sum_{n>0, n ≡ y mod 1} n^{-s}, continued to all s != 1.

    ``y`` is an exact rational, interpreted mod 1; y ≡ 0 gives the Riemann
    zeta function.  Raises :class:`PoleError` at s = 1.
    """
    yy = _frac_mod1(y)
    a = yy if yy != 0 else Fraction(1)
    value = _hurwitz_core(complex(s), a)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise PrecisionError(f"hurwitz_zeta({y}, {s}) did not evaluate finitely")
    return value


def hurwitz_zeta_laurent_at_1(y: Fraction | int) -> tuple[float, float]:
    """(residue, constant term) of the Laurent expansion of zeta(y, s) at s = 1.

    The residue is 1; the constant term is -psi({y}) (digamma), with the
    y ≡ 0 case giving Euler's constant.
    """
    yy = _frac_mod1(y)
    a = float(yy) if yy != 0 else 1.0
    return 1.0, float(-_digamma(a))


def periodic_zeta(y: Fraction | int, s: complex) -> complex:
    """sum_{n>=1} e(ny) n^{-s}, continued to all s (s != 1 when y ≡ 0)."""
    yy = _frac_mod1(y)
    s = complex(s)
    if yy == 0:
        return hurwitz_zeta(0, s)  # Riemann zeta; PoleError at s = 1
    if s == 1:
        # -log(1 - e(y)) with the principal branch:
        # log(1-e(y)) = log|1-e(y)| + i pi ({y} - 1/2).
        t = float(yy)
        return complex(-math.log(2.0 * math.sin(math.pi * t)), -math.pi * (t - 0.5))
    value = _periodic_sum_general(yy, s)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise PrecisionError(f"periodic_zeta({y}, {s}) did not evaluate finitely")
    return value


def _periodic_sum_general(yy: Fraction, s: complex) -> complex:
    p, q = yy.numerator, yy.denominator
    total = 0.0 + 0.0j
    for j in range(1, q + 1):
        total += e2pi(Fraction(j * p, q)) * _hurwitz_core(s, Fraction(j, q))
    return q ** (-s) * total


# ---------------------------------------------------------------------------
# Bloch-Wigner dilogarithm
# ---------------------------------------------------------------------------


@lru_cache(maxsize=65536)
def _bloch_wigner_cached(z: complex) -> float:
    with mpmath.workdps(_MP_DPS):
        li2 = mpmath.polylog(2, z)
        val = mpmath.im(li2) + mpmath.arg(1 - mpmath.mpc(z)) * mpmath.log(abs(z))
        return float(val)


def bloch_wigner(z) -> float:
    """Bloch-Wigner dilogarithm D(z); total on P^1(C), vanishes on R and at oo.

    Satisfies D(1/z) = D(1-z) = -D(z) and D(conj z) = -D(z).
    """
    if z is None:
        return 0.0
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return 0.0
    if z.imag == 0.0:
        return 0.0
    return _bloch_wigner_cached(z)


# ---------------------------------------------------------------------------
# Upper incomplete gamma, complex order
# ---------------------------------------------------------------------------

_GAMMA_CF_MAXIT = 600
_GAMMA_SERIES_MAXIT = 600


def _gamma_upper_cf(s: complex, x: float) -> complex:
    """Legendre continued fraction, reliable for x >= |s| + 1.5."""
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, _GAMMA_CF_MAXIT):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return cmath.exp(-x + s * math.log(x)) * h


def _gamma_lower_series(s: complex, x: float) -> complex:
    """gamma(s, x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n)); needs Re(s) >= 1."""
    term = 1.0 / s
    total = term
    for n in range(1, _GAMMA_SERIES_MAXIT):
        term *= x / (s + n)
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return cmath.exp(-x + s * math.log(x)) * total


@lru_cache(maxsize=200000)
def _gamma_upper_cached(s: complex, x: float) -> tuple[complex, bool]:
    # Underflow guard: Gamma(s,x) ~ x^{s-1} e^{-x} for large x.
    if -x + (s.real - 1.0) * math.log(x) < -720.0 and x > abs(s) + 10.0:
        return 0.0 + 0.0j, True
    if x >= abs(s) + 1.5:
        return _gamma_upper_cf(s, x), False
    # Lift the order until the series is pole-safe, then recurse back down:
    # Gamma(t, x) = (Gamma(t+1, x) - x^t e^{-x}) / t.
    k = max(0, math.ceil(1.5 - s.real))
    s2 = s + k
    val = gamma_fn(s2) - _gamma_lower_series(s2, x)
    for j in range(k):
        t = s2 - 1 - j
        if t == 0:
            val = complex(_exp1(x))
        else:
            val = (val - cmath.exp(-x + t * math.log(x))) / t
    return val, False


def upper_incomplete_gamma_ex(s: complex, x: float) -> tuple[complex, bool]:
    """Gamma(s, x) = int_x^oo t^{s-1} e^{-t} dt and an underflow flag.

    The flag is True when the result underflowed to exactly 0 in double
    precision; that case is returned silently.
    """
    if x <= 0:
        raise ValueError(f"upper_incomplete_gamma requires x > 0, got x = {x}")
    return _gamma_upper_cached(complex(s), float(x))


def upper_incomplete_gamma(s: complex, x: float) -> complex:
    """Gamma(s, x) for complex s, real x > 0 (underflow returned as 0)."""
    return upper_incomplete_gamma_ex(s, x)[0]
