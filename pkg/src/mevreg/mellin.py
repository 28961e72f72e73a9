"""Generalised Mellin transforms M(f, s) = int_0^oo f(iy) y^{s-1} dy.

Two pipelines:

* ``mellin_eisenstein_closed`` -- the classical closed form for a single
  series of family E or G: a product of Gamma, Hurwitz-zeta and
  periodic-zeta factors, continued to all s.  At a point where a factor is
  singular the Laurent constant term M* is produced by Richardson
  extrapolation of the even part at s0 +/- h, h = 1e-3 and 2e-3 (accuracy
  degrades to ~1e-8 there).

* ``mellin_numeric`` -- analytic continuation of an arbitrary admissible
  form by splitting at y = 1:  the [1, oo) piece is a sum of upper
  incomplete gamma terms over the inf-side series, the (0, 1] piece maps
  under y -> 1/y onto the zero-side series with s reflected.  Polynomial
  strata contribute exact rational terms -c i^m/(s+m) (inf side) and
  +d i^{m'}/(m'+2-s) (zero side); at a pole those terms are dropped into
  the residue and the remainder is the exact Laurent constant term.

Products of two Eisenstein series are always continued numerically, never
symbolically; the constant-term algebra of the reduction to L-values is
exercised as cancellation tests instead of being part of the computation
path.

L-values follow the convention L(f, s) = sum a_n (n/N)^{-s} for
f = sum a_n q^{n/N}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from mevreg.eisenstein import (
    DEFAULT_CUTOFF,
    EisensteinSpec,
    EllipticParam,
    g_series,
    h_series,
)
from mevreg.regint import (
    AdmissibleForm,
    modular_letter,
    mul_series,
    one_series,
    word_integral_zero_to_infinity,
)
from mevreg.specfun import (
    gamma_fn,
    hurwitz_zeta,
    periodic_zeta,
    upper_incomplete_gamma,
)

__all__ = [
    "MellinResult",
    "eisenstein_form",
    "g_product_form",
    "im_i_direct",
    "im_i_rz",
    "l_deriv_weight2_at_minus1",
    "laurent_constant",
    "mellin_eisenstein_closed",
    "mellin_numeric",
]

TWO_PI = 2.0 * math.pi

_RICHARDSON_H = 1e-3


@dataclass(frozen=True)
class MellinResult:
    """Value of M(f, s); at a flagged pole the Laurent constant term M*."""

    value: complex
    is_constant_term_of_laurent: bool = False
    pole_residue: Optional[complex] = None


def laurent_constant(
    fn: Callable[[complex], complex], s0: complex, h: float = _RICHARDSON_H
) -> tuple[complex, complex]:
    """(constant term, residue) of a simple-pole Laurent expansion at s0.

    Even/odd Richardson at offsets h and 2h: the even part kills the pole
    and converges to the constant term at O(h^4); the odd part recovers the
    residue.
    """
    fp1, fm1 = fn(s0 + h), fn(s0 - h)
    fp2, fm2 = fn(s0 + 2 * h), fn(s0 - 2 * h)
    e1, e2 = 0.5 * (fp1 + fm1), 0.5 * (fp2 + fm2)
    o1, o2 = 0.5 * (fp1 - fm1), 0.5 * (fp2 - fm2)
    const = (4.0 * e1 - e2) / 3.0
    residue = (4.0 * h * o1 - 2.0 * h * o2) / 3.0
    return const, residue


# ---------------------------------------------------------------------------
# Closed forms for single series
# ---------------------------------------------------------------------------


def _closed_value(family: str, k: int, x: EllipticParam, s: complex) -> complex:
    pref = (TWO_PI) ** (-s) * gamma_fn(s)
    if family == "E":
        return pref * (
            -hurwitz_zeta(x.x1, s - k + 1) * periodic_zeta(x.x2, s)
            + (-1) ** (k + 1) * hurwitz_zeta(-x.x1, s - k + 1) * periodic_zeta(-x.x2, s)
        )
    return pref * (
        hurwitz_zeta(x.x1, s - k + 1) * hurwitz_zeta(x.x2, s)
        + (-1) ** k * hurwitz_zeta(-x.x1, s - k + 1) * hurwitz_zeta(-x.x2, s)
    )


def _closed_factor_singular(family: str, k: int, x: EllipticParam, s: complex) -> bool:
    if s.imag == 0 and s.real == round(s.real):
        sr = int(round(s.real))
        if sr <= 0:  # Gamma pole
            return True
        if sr == k:  # first Hurwitz argument hits 1
            return True
        if sr == 1 and (family == "G" or x.x2 == 0):
            return True
    return False


def mellin_eisenstein_closed(
    spec: EisensteinSpec, s: complex, constant_term: bool = True
) -> MellinResult:
    """Closed-form M for a single series of family E or G.

    When a Gamma/zeta factor is singular at s the value returned is the
    Laurent constant term M*(f, s) (together with the residue when the
    combination genuinely has a pole); pass ``constant_term=False`` to get
    an error instead.
    """
    if spec.family not in ("E", "G"):
        raise ValueError("closed Mellin forms exist for families E and G only")
    k, x = spec.weight, spec.param
    s = complex(s)
    if not _closed_factor_singular(spec.family, k, x, s):
        return MellinResult(_closed_value(spec.family, k, x, s))
    if not constant_term:
        raise ZeroDivisionError(
            f"M({spec}, s) evaluated at the singular point s = {s}"
        )
    const, residue = laurent_constant(
        lambda w: _closed_value(spec.family, k, x, w), s
    )
    pole = residue if abs(residue) > 1e-6 * max(1.0, abs(const)) else None
    return MellinResult(const, True, pole)


# ---------------------------------------------------------------------------
# Numeric continuation for admissible forms
# ---------------------------------------------------------------------------


def mellin_numeric(form: AdmissibleForm, s: complex) -> MellinResult:
    """Incomplete-gamma continuation of M for a two-sided admissible form.

    Exact at poles: contributions whose rational term 1/(s - s0) blows up
    are diverted into the residue, everything else is the constant term.
    """
    s = complex(s)
    if all(alpha == 0 for (alpha, _m) in form.inf_side.terms):
        # Pure polynomial: the two halves of the split cancel identically.
        return MellinResult(0.0 + 0.0j)
    value = 0.0 + 0.0j
    residue = 0.0 + 0.0j
    for (alpha, m), c in form.inf_side.terms.items():
        w = c * (1j) ** m
        if alpha == 0:
            if s == -m:
                residue += -w
            else:
                value += -w / (s + m)
        else:
            a = TWO_PI * float(alpha)
            value += w * a ** -(s + m) * upper_incomplete_gamma(s + m, a)
    for (beta, m), d in form.zero_side.terms.items():
        w = d * (1j) ** m
        if beta == 0:
            if s == m + 2:
                residue += -w
            else:
                value += w / (m + 2 - s)
        else:
            b = TWO_PI * float(beta)
            value += -w * b ** -(m + 2 - s) * upper_incomplete_gamma(m + 2 - s, b)
    if residue != 0:
        return MellinResult(value, True, residue)
    return MellinResult(value)


def eisenstein_form(
    spec: EisensteinSpec, cutoff: Fraction = DEFAULT_CUTOFF
) -> AdmissibleForm:
    """Two-sided form f d(tau) for a single series of weight >= 2."""
    from mevreg.eisenstein import series_for, sigma_companion

    if spec.weight < 2:
        raise ValueError("weight-1 series are not admissible on their own")
    comp, sign = sigma_companion(spec)
    inf = series_for(spec, cutoff)
    zero = series_for(comp, cutoff).shift_tau(spec.weight - 2).scale(sign)
    return AdmissibleForm(inf, zero, "holomorphic", str(spec))


def g_product_form(
    factors: Sequence[tuple[int, EllipticParam]],
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> AdmissibleForm:
    """Form (prod_i G^(k_i)_{x_i}) d(tau) with its sigma-side H-product.

    Each factor transforms as G^(k)(-1/tau) = (-1)^k tau^k H^(k)(tau), so the
    pullback coefficient is (-1)^{sum k} tau^{sum k - 2} times the H-product.
    """
    inf = one_series(cutoff)
    zero = one_series(cutoff)
    total_k = 0
    for k, x in factors:
        inf = mul_series(inf, g_series(k, x, cutoff))
        zero = mul_series(zero, h_series(k, x, cutoff))
        total_k += k
    if total_k < 2:
        raise ValueError("total weight must be >= 2")
    zero = zero.shift_tau(total_k - 2).scale((-1) ** total_k)
    label = "*".join(f"G{k}{x}" for k, x in factors)
    return AdmissibleForm(inf, zero, "holomorphic", label)


# ---------------------------------------------------------------------------
# L-value derivative and the exponent-swap identity
# ---------------------------------------------------------------------------


def l_deriv_weight2_at_minus1(
    x: EllipticParam, y: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> float:
    """L'(G^(1);N_x G^(1);N_y, -1) through -(N / 2 pi) M(G_x G_y, -1).

    Both parameters need all coordinates nonzero so that no polynomial
    stratum puts a pole at s = -1.  The product has real level-N Fourier
    coefficients, so the result is real; the imaginary part of the numeric
    continuation is noise and is checked against a loose floor.
    """
    for p in (x, y):
        if p.has_zero_coord:
            raise ValueError("zero coordinates put a pole at s = -1")
    level = math.lcm(x.level(), y.level())
    res = mellin_numeric(g_product_form([(1, x), (1, y)], cutoff), -1.0)
    if res.is_constant_term_of_laurent:
        raise ZeroDivisionError("unexpected pole at s = -1")
    val = -(level / TWO_PI) * res.value
    if abs(val.imag) > 1e-7 * max(1.0, abs(val.real)):
        raise ArithmeticError(f"nonreal L-derivative: {val}")
    return val.real


def im_i_direct(
    u: EllipticParam,
    v: EllipticParam,
    ell: int,
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> float:
    """Im of int_0^oo E^(2)_u(iy) * Eichler(E^(ell)_v)(iy) dy, by the engine.

    Writing the Eichler integral as -int_tau^oo of its differential turns
    the integral into -2 pi times the two-letter regularised word integral
    of (E^(2)_u d tau, E^(ell)_v d tau).
    """
    if ell < 2:
        raise ValueError("the Eichler factor needs weight >= 2")
    if u.has_zero_coord or v.has_zero_coord:
        raise ValueError("coordinates must be nonzero")
    letters = [modular_letter(2, u, 1, cutoff), modular_letter(ell, v, 1, cutoff)]
    w = word_integral_zero_to_infinity(letters)
    return -TWO_PI * w.imag


def im_i_rz(
    u: EllipticParam,
    v: EllipticParam,
    ell: int,
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> float:
    """The exponent-swapped evaluation of the same quantity:

    -1/2 M(G^(1)_{u1,v2} G^(ell-1)_{v1,-u2} - G^(1)_{u1,-v2} G^(ell-1)_{v1,u2}, 0).
    """
    if ell < 2:
        raise ValueError("weight ell must be >= 2")
    if u.has_zero_coord or v.has_zero_coord:
        raise ValueError("coordinates must be nonzero")
    plus = g_product_form(
        [(1, EllipticParam(u.x1, v.x2)), (ell - 1, EllipticParam(v.x1, -u.x2))],
        cutoff,
    )
    minus = g_product_form(
        [(1, EllipticParam(u.x1, -v.x2)), (ell - 1, EllipticParam(v.x1, u.x2))],
        cutoff,
    )
    res = mellin_numeric(plus - minus, 0.0)
    if res.is_constant_term_of_laurent:
        raise ZeroDivisionError("unexpected pole at s = 0")
    return -0.5 * res.value.real
