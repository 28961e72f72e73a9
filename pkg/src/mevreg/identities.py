"""Standalone verifiers for the algebraic identity layer.

Three kinds of checks:

* Pairwise-product relations among the Eisenstein families, verified at the
  q-series coefficient level (these are exact polynomial identities among
  exact-rational-exponent series, so any residual beyond rounding is a
  bug, not truncation).  The worst offending (alpha, m) coefficient is
  reported to localise sign errors in the constant-term tables.

* Root-of-unity dilogarithm sums.

* The shuffle ledger: the intermediate signed-value identities that turn
  the triple-integral expansion of the weight-3 regulator into its closed
  form, each evaluated on both sides through the engine.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mevreg.eisenstein import (
    DEFAULT_CUTOFF,
    EllipticParam,
    TauQSeries,
    e_series,
)
from mevreg.mev import lambda_signed, lambda_word
from mevreg.regint import (
    AdmissibleForm,
    mul_series,
    one_series,
    siegel_letter,
    word_integral_to_infinity,
    word_integral_zero_to_infinity,
)
from mevreg.specfun import bloch_wigner

__all__ = [
    "IdentityReport",
    "check_bg_e",
    "check_bg_g1",
    "check_bg_g2",
    "check_dilog_sum",
    "check_shuffle_ledger",
]


@dataclass(frozen=True)
class IdentityReport:
    name: str
    residual: float
    worst_term: Optional[tuple[Fraction, int]] = None
    details: Optional[dict] = None

    def passed(self, tol: float) -> bool:
        return self.residual < tol

    def to_dict(self) -> dict:
        out = {"identity": self.name, "residual": self.residual}
        if self.worst_term is not None:
            alpha, m = self.worst_term
            out["worst_term"] = [str(alpha), m]
        if self.details:
            out["details"] = {k: float(v) for k, v in self.details.items()}
        return out


def _series_residual(name: str, combo: TauQSeries) -> IdentityReport:
    worst_key, worst = None, 0.0
    for key, c in combo:
        if abs(c) > worst:
            worst, worst_key = abs(c), key
    return IdentityReport(name, worst, worst_key)


# Exact-rational arithmetic for the G-family products: their coefficients
# are rational (shifted-integer powers and Bernoulli constants), so the
# pairwise-product identities can be checked with zero rounding.


def _bernoulli_exact(k: int, t: Fraction) -> Fraction:
    from mevreg.specfun import _bernoulli_poly_coeffs

    acc = Fraction(0)
    for c in reversed(_bernoulli_poly_coeffs(k)):
        acc = acc * t + c
    return acc


def _g_exact(k: int, x: EllipticParam, cutoff: Fraction) -> dict[Fraction, Fraction]:
    terms: dict[Fraction, Fraction] = {}
    if k == 1:
        if x.x1 == 0 and x.x2 != 0:
            terms[Fraction(0)] = -_bernoulli_exact(1, x.x2)
        elif x.x1 != 0 and x.x2 == 0:
            terms[Fraction(0)] = -_bernoulli_exact(1, x.x1)
    elif x.x2 == 0:
        terms[Fraction(0)] = -_bernoulli_exact(k, x.x1) / k
    for m_res, n_res, sign in (
        (x.x1, x.x2, 1),
        ((-x.x1) % 1, (-x.x2) % 1, (-1) ** k),
    ):
        m = m_res if m_res != 0 else Fraction(1)
        n0 = n_res if n_res != 0 else Fraction(1)
        while m * n0 <= cutoff:
            mk = sign * m ** (k - 1)
            n = n0
            while m * n <= cutoff:
                key = m * n
                terms[key] = terms.get(key, Fraction(0)) + mk
                n += 1
            m += 1
    return terms


def _g_exact_product(
    k1: int, x1: EllipticParam, k2: int, x2: EllipticParam, cutoff: Fraction
) -> dict[Fraction, Fraction]:
    a = _g_exact(k1, x1, cutoff)
    b = _g_exact(k2, x2, cutoff)
    out: dict[Fraction, Fraction] = {}
    for aa, ca in a.items():
        for ab, cb in b.items():
            alpha = aa + ab
            if alpha > cutoff:
                continue
            out[alpha] = out.get(alpha, Fraction(0)) + ca * cb
    return out


def _exact_residual(name: str, combo: dict[Fraction, Fraction]) -> IdentityReport:
    worst_key, worst = None, Fraction(0)
    for key, c in combo.items():
        if abs(c) > worst:
            worst, worst_key = abs(c), key
    return IdentityReport(
        name, float(worst), (worst_key, 0) if worst_key is not None else None
    )


# ---------------------------------------------------------------------------
# Pairwise-product relations
# ---------------------------------------------------------------------------


def check_bg_e(
    x: EllipticParam, y: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> IdentityReport:
    """Weight-3 relation among E-products:

    E1_z E2_y - E1_y E2_x - E1_z E2_x + E1_y E2_z = E3_x - E3_y/2 - E3_z/2,
    with z = -x-y and all of x, y, z nonzero.
    """
    z = -(x + y)
    for p in (x, y, z):
        if p.is_zero:
            raise ValueError("x, y and z = -x-y must all be nonzero")
    e1y, e1z = e_series(1, y, cutoff), e_series(1, z, cutoff)
    e2x, e2y, e2z = (e_series(2, p, cutoff) for p in (x, y, z))
    combo = (
        mul_series(e1z, e2y)
        - mul_series(e1y, e2x)
        - mul_series(e1z, e2x)
        + mul_series(e1y, e2z)
        - e_series(3, x, cutoff)
        + e_series(3, y, cutoff).scale(0.5)
        + e_series(3, z, cutoff).scale(0.5)
    )
    return _series_residual(f"bg_e({x},{y})", combo)


def check_bg_g1(
    x1: Fraction,
    y1: Fraction,
    u2: Fraction,
    v2: Fraction,
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> IdentityReport:
    """Four-term relation among G1 * G2 products:

    G1_{x1+y1,u2} G2_{y1,v2-u2} + G1_{y1,v2} G2_{x1,u2}
      - G1_{x1+y1,v2} G2_{x1,u2-v2} - G1_{y1,v2-u2} G2_{x1+y1,u2} = 0,
    for x1, y1, u2, v2 nonzero with x1+y1 != 0 and u2-v2 != 0.
    """
    x1, y1, u2, v2 = (Fraction(t) % 1 for t in (x1, y1, u2, v2))
    if 0 in (x1, y1, u2, v2):
        raise ValueError("x1, y1, u2, v2 must be nonzero mod 1")
    if (x1 + y1) % 1 == 0 or (u2 - v2) % 1 == 0:
        raise ValueError("need x1 + y1 != 0 and u2 - v2 != 0 mod 1")
    P = EllipticParam
    combo: dict[Fraction, Fraction] = {}
    for sign, (p1, p2) in (
        (1, (P(x1 + y1, u2), P(y1, v2 - u2))),
        (1, (P(y1, v2), P(x1, u2))),
        (-1, (P(x1 + y1, v2), P(x1, u2 - v2))),
        (-1, (P(y1, v2 - u2), P(x1 + y1, u2))),
    ):
        for key, c in _g_exact_product(1, p1, 2, p2, cutoff).items():
            combo[key] = combo.get(key, Fraction(0)) + sign * c
    return _exact_residual(f"bg_g1({x1},{y1},{u2},{v2})", combo)


def check_bg_g2(
    u1: Fraction, u2: Fraction, cutoff: Fraction = DEFAULT_CUTOFF
) -> IdentityReport:
    """Special-care relation G1_u G2_{u1,-u2} - G1_{u1,-u2} G2_u = G3_{0,u2}."""
    u1, u2 = Fraction(u1) % 1, Fraction(u2) % 1
    if u1 == 0:
        raise ValueError("u1 must be nonzero mod 1")
    P = EllipticParam
    combo: dict[Fraction, Fraction] = {}
    for sign, prod in (
        (1, _g_exact_product(1, P(u1, u2), 2, P(u1, -u2), cutoff)),
        (-1, _g_exact_product(1, P(u1, -u2), 2, P(u1, u2), cutoff)),
        (-1, _g_exact(3, P(Fraction(0), u2), cutoff)),
    ):
        for key, c in prod.items():
            combo[key] = combo.get(key, Fraction(0)) + sign * c
    return _exact_residual(f"bg_g2({u1},{u2})", combo)


# ---------------------------------------------------------------------------
# Dilogarithm sums
# ---------------------------------------------------------------------------


def check_dilog_sum(n: int, u: complex) -> IdentityReport:
    """| sum over v^n = 1 of D((1-v)/(1-u)) - (n/2) D(u) | for u^n = 1, u != 1."""
    if n <= 1:
        raise ValueError("n must be > 1")
    u = complex(u)
    if abs(u - 1.0) < 1e-12:
        raise ValueError("u must differ from 1")
    total = 0.0
    for j in range(n):
        v = cmath.exp(2j * math.pi * j / n)
        total += bloch_wigner((1.0 - v) / (1.0 - u))
    return IdentityReport(f"dilog_sum(n={n})", abs(total - 0.5 * n * bloch_wigner(u)))


# ---------------------------------------------------------------------------
# Shuffle ledger
# ---------------------------------------------------------------------------


def _tail_function(letter: AdmissibleForm) -> tuple[TauQSeries, TauQSeries]:
    """Both-sided expansion of J(tau) = int_tau^oo of a single letter.

    The pullback J(-1/tau) is the tail integral of the pulled-back letter
    plus the constant int_0^oo (the regularised value of J at 0).
    """
    inf = word_integral_to_infinity([letter])
    const = word_integral_zero_to_infinity([letter])
    zero = word_integral_to_infinity([letter.sigma_pullback()])
    zero = zero + one_series(zero.cutoff).scale(const)
    return inf, zero


def _product_form(
    functions: list[tuple[TauQSeries, TauQSeries]], letter: AdmissibleForm
) -> AdmissibleForm:
    """Form (prod_j F_j) * omega from both-sided functions and a letter."""
    inf, zero = letter.inf_side, letter.zero_side
    for f_inf, f_zero in functions:
        inf = mul_series(inf, f_inf)
        zero = mul_series(zero, f_zero)
    return AdmissibleForm(inf, zero, "holomorphic", "product")


def _a3_piece(
    x: EllipticParam, y: EllipticParam, z: EllipticParam, cutoff: Fraction
) -> float:
    """int_0^oo log|g_x| alpha(g_y ^ g_z) through composite product forms.

    With J_p = int_tau^oo dlog|g_p| one has log|g_p| = -J_p (interior
    coordinates), so the integrand is -J_x J_y dlog|g_z| + J_x J_z dlog|g_y|.
    """
    jx = _tail_function(siegel_letter(x, "plus", cutoff))
    jy = _tail_function(siegel_letter(y, "plus", cutoff))
    jz = _tail_function(siegel_letter(z, "plus", cutoff))
    wy = siegel_letter(y, "plus", cutoff)
    wz = siegel_letter(z, "plus", cutoff)
    first = word_integral_zero_to_infinity([_product_form([jx, jy], wz)])
    second = word_integral_zero_to_infinity([_product_form([jx, jz], wy)])
    return (-first + second).real


def check_shuffle_ledger(
    a: EllipticParam, b: EllipticParam, cutoff: Fraction = DEFAULT_CUTOFF
) -> list[IdentityReport]:
    """Residuals of the signed-value shuffle identities and the two collapse
    formulas for the middle and log-product terms of the triple expansion.

    All coordinates of a, b and c = -(a+b) must be nonzero.
    """
    c = -(a + b)
    for p in (a, b, c):
        if p.has_zero_coord:
            raise ValueError("the ledger needs interior coordinates")

    def ls(params, signs):
        return lambda_signed(params, signs, cutoff)

    def lam(params):
        return lambda_word([siegel_letter(p, "holomorphic", cutoff) for p in params])

    def lambda1(x, y, z):
        return (
            ls([x, y, z], "+--") + ls([x, y, z], "-+-") + ls([x, y, z], "--+")
        )

    reports = []

    # relation specialised at z = x:
    # L--+(x,y,x) + L-+-(y,x,x) + L--+(y,x,x) = L-(x) L-+(y,x)
    x, y = a, b
    r = (
        ls([x, y, x], "--+")
        + ls([y, x, x], "-+-")
        + ls([y, x, x], "--+")
        - ls([x], "-") * ls([y, x], "-+")
    )
    reports.append(IdentityReport("shuffle2", abs(r)))

    # L-+-(x,z,x) + 2 L--+(x,x,z) = L-(x) L-+(x,z)
    x, z = a, b
    r = (
        ls([x, z, x], "-+-")
        + 2.0 * ls([x, x, z], "--+")
        - ls([x], "-") * ls([x, z], "-+")
    )
    reports.append(IdentityReport("shuffle3", abs(r)))

    # L-+-(x,z,x) + 2 L+--(z,x,x) = L-(x) L+-(z,x)
    r = (
        ls([x, z, x], "-+-")
        + 2.0 * ls([z, x, x], "+--")
        - ls([x], "-") * ls([z, x], "+-")
    )
    reports.append(IdentityReport("shuffle6", abs(r)))

    # L--+(x,x,z) = L+--(z,x,x) + (1/2) L-(x) (L-+(x,z) - L+-(z,x))
    r = (
        ls([x, x, z], "--+")
        - ls([z, x, x], "+--")
        - 0.5 * ls([x], "-") * (ls([x, z], "-+") - ls([z, x], "+-"))
    )
    reports.append(IdentityReport("shuffle7", abs(r)))

    # L--+(b,c,a) = L-(b) L-+(c,a) - L--+(c,b,a) - L-+-(c,a,b)
    r = (
        ls([b, c, a], "--+")
        - ls([b], "-") * ls([c, a], "-+")
        + ls([c, b, a], "--+")
        + ls([c, a, b], "-+-")
    )
    reports.append(IdentityReport("shuffle8", abs(r)))

    # mirrored version with a and b exchanged
    r = (
        ls([a, c, b], "--+")
        - ls([a], "-") * ls([c, b], "-+")
        + ls([c, a, b], "--+")
        + ls([c, b, a], "-+-")
    )
    reports.append(IdentityReport("shuffle9", abs(r)))

    # L--+(b,a,c) + L--+(a,b,c)
    #   = L-(b) L-+(a,c) - L-(a) L+-(c,b) + L+--(c,a,b) + L+--(c,b,a)
    r = (
        ls([b, a, c], "--+")
        + ls([a, b, c], "--+")
        - ls([b], "-") * ls([a, c], "-+")
        + ls([a], "-") * ls([c, b], "+-")
        - ls([c, a, b], "+--")
        - ls([c, b, a], "+--")
    )
    reports.append(IdentityReport("shuffle10", abs(r)))

    # middle term, directly expanded (12 signed triples) ...
    a2_direct = 0.0
    for yy, zz in ((a, b), (b, c), (c, a)):
        for x_arg, sgn in ((b, 1.0), (a, -1.0)):
            a2_direct += sgn * (
                ls([x_arg, yy, zz], "--+") - ls([x_arg, zz, yy], "--+")
            )
    # ... against its shuffle-collapsed closed form
    im_sum = (lam([a, b]).value + lam([b, c]).value + lam([c, a]).value).imag
    a2_closed = (
        -lambda1(a, b, b)
        + lambda1(c, b, b)
        - lambda1(b, a, a)
        + lambda1(c, a, a)
        - lambda1(c, b, a)
        - lambda1(c, a, b)
        + (ls([b], "-") - ls([a], "-")) * im_sum
    )
    reports.append(
        IdentityReport(
            "a2_collapse",
            abs(a2_direct - a2_closed),
            details={"direct": a2_direct, "closed": a2_closed},
        )
    )

    # log-product term: direct composite-form route ...
    a3_direct = 0.0
    for yy, zz in ((a, b), (b, c), (c, a)):
        a3_direct += _a3_piece(b, yy, zz, cutoff) - _a3_piece(a, yy, zz, cutoff)
    a3_direct /= 3.0
    # ... against the six-term collapse
    a3_closed = (
        ls([a, b, b], "+++")
        - ls([c, b, b], "+++")
        + ls([c, a, b], "+++")
        + ls([c, b, a], "+++")
        + ls([b, a, a], "+++")
        - ls([c, a, a], "+++")
    )
    reports.append(
        IdentityReport(
            "a3_collapse",
            abs(a3_direct - a3_closed),
            details={"direct": a3_direct, "closed": a3_closed},
        )
    )
    return reports
