"""Regularised iterated integrals along the imaginary axis.

A differential form on ]0, i*oo[ is carried as ``f(tau) d(tau)`` with ``f``
a :class:`TauQSeries`.  An :class:`AdmissibleForm` stores two expansions of
the same form:

* ``inf_side``  -- the series of f, valid near i*oo;
* ``zero_side`` -- the series of the sigma-pullback coefficient
  g(tau) = f(-1/tau) * tau^{-2}, valid near i*oo again (and therefore
  describing f near 0).

Both sides are plain series with nonnegative tau-powers; this holds for all
the modular letters used here.  The two expansions of one form satisfy
g(i) = -f(i), which the tests use as a consistency probe of every
sigma-companion table.

Regularisation conventions (right-nested):

* ``antiderivative_to_infinity(f)`` returns the unique primitive F of
  f d(tau) whose regularised value at infinity (the constant term of its
  polynomial part) is zero; F(tau) = -int_tau^oo f d(tau).
* ``word_integral_to_infinity([w1..wn])`` returns the series of
  int_tau^oo w1...wn  =  int_tau^oo w1(t1) int_{t1}^oo w2(t2) ... .
* ``word_integral_zero_to_infinity`` splits at the sigma-fixed base point
  tau0 = i (q(i) ~ 1.87e-3) into
  sum_k [int_0^{tau0} w1..wk] * [int_{tau0}^oo w_{k+1}..wn], with the
  0-side factor computed through path reversal:
  int_0^tau w1..wk = (-1)^k int_{-1/tau}^oo wk^sigma ... w1^sigma.
  Independence of the base point is a test, not an assumption.

Real/imaginary channels: with conj_axis(f)(iy) = conj(f(iy)), the real and
imaginary parts of a form f d(tau) restricted to the axis are again forms
g d(tau) with g = (f - conj_axis f)/2 and g = -i (f + conj_axis f)/2
respectively.  Channels commute with the sigma-pullback because sigma maps
the imaginary axis to itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from mevreg.eisenstein import (
    DEFAULT_CUTOFF,
    EllipticParam,
    TauQSeries,
    e_series,
    sigma_param,
)

__all__ = [
    "AdmissibleForm",
    "FormWord",
    "MAX_WORD_LENGTH",
    "antiderivative_to_infinity",
    "channel_series",
    "conj_axis",
    "evaluate_at",
    "evaluate_with_bound",
    "merged_product_letter",
    "modular_letter",
    "mul_series",
    "one_series",
    "reg_value_at_infinity",
    "shuffle_expand",
    "siegel_letter",
    "word_integral_to_infinity",
    "word_integral_zero_to_infinity",
]

TWO_PI_I = 2j * math.pi

MAX_WORD_LENGTH = 4

MIN_EVAL_Y = 0.5


# ---------------------------------------------------------------------------
# Series operations
# ---------------------------------------------------------------------------


def one_series(cutoff: Fraction = DEFAULT_CUTOFF) -> TauQSeries:
    return TauQSeries({(Fraction(0), 0): 1.0 + 0.0j}, cutoff)


def mul_series(a: TauQSeries, b: TauQSeries) -> TauQSeries:
    """Cauchy product on the (alpha, m) bigrading; cutoff = min of the two."""
    cutoff = min(a.cutoff, b.cutoff)
    out: dict[tuple[Fraction, int], complex] = {}
    bi = list(b.terms.items())
    for (aa, ma), ca in a.terms.items():
        if aa > cutoff:
            continue
        for (ab, mb), cb in bi:
            alpha = aa + ab
            if alpha > cutoff:
                continue
            key = (alpha, ma + mb)
            out[key] = out.get(key, 0.0) + ca * cb
    return TauQSeries(out, cutoff, max(a.level_hint, b.level_hint))


def conj_axis(a: TauQSeries) -> TauQSeries:
    """Series of tau -> conj(f(tau)) on the imaginary axis: c -> (-1)^m conj(c)."""
    return TauQSeries(
        {(alpha, m): (-1) ** m * c.conjugate() for (alpha, m), c in a.terms.items()},
        a.cutoff,
        a.level_hint,
    )


def channel_series(f: TauQSeries, channel: str) -> TauQSeries:
    """Coefficient series of the real/imaginary part of the form f d(tau)."""
    if channel == "holomorphic":
        return f
    fc = conj_axis(f)
    if channel == "plus":
        return (f - fc).scale(0.5)
    if channel == "minus":
        return (f + fc).scale(-0.5j)
    raise ValueError(f"unknown channel {channel!r}")


def reg_value_at_infinity(f: TauQSeries) -> complex:
    """Constant term of the polynomial part: the coefficient at (alpha=0, m=0)."""
    return f.coeff(Fraction(0), 0)


def antiderivative_to_infinity(omega: TauQSeries) -> TauQSeries:
    """Primitive F of omega d(tau) with regularised value 0 at infinity.

    alpha > 0: tau^m q^alpha integrates by parts into
    q^alpha * sum_{j<=m} (-1)^j m!/(m-j)! tau^{m-j} / (2 pi i alpha)^{j+1};
    alpha = 0: plain monomial integration with zero constant.
    """
    out: dict[tuple[Fraction, int], complex] = {}
    for (alpha, m), c in omega.terms.items():
        if alpha == 0:
            key = (alpha, m + 1)
            out[key] = out.get(key, 0.0) + c / (m + 1)
            continue
        base = 1.0 / (TWO_PI_I * float(alpha))
        coeff = c * base
        for j in range(m + 1):
            key = (alpha, m - j)
            out[key] = out.get(key, 0.0) + coeff
            if j < m:
                coeff *= -(m - j) * base
    return TauQSeries(out, omega.cutoff, omega.level_hint)


def evaluate_at(f: TauQSeries, y: float) -> complex:
    """Value sum c_{alpha,m} (iy)^m e^{-2 pi alpha y}; requires y >= 1/2."""
    if y < MIN_EVAL_Y - 1e-12:
        raise ValueError(f"evaluation point y = {y} below the safe threshold 0.5")
    total = 0.0 + 0.0j
    iy = 1j * y
    for (alpha, m), c in f.terms.items():
        total += c * iy**m * math.exp(-2.0 * math.pi * float(alpha) * y)
    return total


def evaluate_with_bound(f: TauQSeries, y: float) -> tuple[complex, float]:
    """Value plus a crude truncation-tail bound from the boundary shell.

    The bound is (#terms with alpha within 1 of the cutoff, plus one) times
    the largest such coefficient magnitude times e^{-2 pi cutoff y} times
    the largest tau-power weight.
    """
    value = evaluate_at(f, y)
    cut = float(f.cutoff)
    shell = [
        (abs(c), m) for (alpha, m), c in f.terms.items() if float(alpha) > cut - 1.0
    ]
    biggest = max((a for a, _ in shell), default=1.0)
    mmax = max((m for _, m in shell), default=0)
    bound = (len(shell) + 1) * biggest * math.exp(-2.0 * math.pi * cut * y)
    bound *= max(1.0, y) ** mmax
    return value, bound


# ---------------------------------------------------------------------------
# Admissible forms and words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleForm:
    """A form f(tau) d(tau) with expansions on both sides of the axis."""

    inf_side: TauQSeries
    zero_side: TauQSeries
    channel: str = "holomorphic"
    label: str = ""

    def sigma_pullback(self) -> "AdmissibleForm":
        """The pulled-back form; sigma is an involution on forms."""
        return AdmissibleForm(
            self.zero_side, self.inf_side, self.channel, self.label + "^s"
        )

    def scale(self, c: complex) -> "AdmissibleForm":
        return AdmissibleForm(
            self.inf_side.scale(c), self.zero_side.scale(c), self.channel, self.label
        )

    def __add__(self, other: "AdmissibleForm") -> "AdmissibleForm":
        return AdmissibleForm(
            self.inf_side + other.inf_side,
            self.zero_side + other.zero_side,
            self.channel if self.channel == other.channel else "holomorphic",
            f"{self.label}+{other.label}",
        )

    def __sub__(self, other: "AdmissibleForm") -> "AdmissibleForm":
        return self + other.scale(-1.0)


@dataclass(frozen=True)
class FormWord:
    """An ordered word of admissible forms, length 1..4."""

    letters: tuple[AdmissibleForm, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a word needs at least one letter")
        if len(self.letters) > MAX_WORD_LENGTH:
            raise ValueError(f"words longer than {MAX_WORD_LENGTH} are not supported")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)


def _letters_of(word) -> tuple[AdmissibleForm, ...]:
    if isinstance(word, FormWord):
        return word.letters
    letters = tuple(word)
    if not letters or len(letters) > MAX_WORD_LENGTH:
        raise ValueError("word length must be between 1 and 4")
    return letters


# ---------------------------------------------------------------------------
# Letter constructors
# ---------------------------------------------------------------------------


def _letter_from_function(
    f: TauQSeries,
    f_sigma: TauQSeries,
    weight: int,
    sign: int,
    tau_power: int,
    channel: str,
    label: str,
) -> AdmissibleForm:
    """Letter f(tau) tau^{m'} d(tau) from sigma data f(-1/tau) = sign tau^K f2.

    The pullback coefficient is (-1)^{m'} sign tau^{K - m' - 2} f2(tau);
    K - m' - 2 >= 0 is exactly the admissibility constraint at 0.
    """
    j = weight - tau_power - 2
    if j < 0:
        raise ValueError(
            f"tau power {tau_power} too large for weight {weight}: not admissible at 0"
        )
    inf = f.shift_tau(tau_power)
    zero = f_sigma.shift_tau(j).scale(sign * (-1) ** tau_power)
    if channel != "holomorphic":
        inf = channel_series(inf, channel)
        zero = channel_series(zero, channel)
    return AdmissibleForm(inf, zero, channel, label)


@lru_cache(maxsize=2048)
def modular_letter(
    k: int,
    x: EllipticParam,
    m: int = 1,
    cutoff: Fraction = DEFAULT_CUTOFF,
    channel: str = "holomorphic",
) -> AdmissibleForm:
    """Letter E^(k)_x(tau) tau^{m-1} d(tau), admissible for 1 <= m <= k-1."""
    if k < 2:
        raise ValueError("single letters need weight >= 2")
    if not 1 <= m <= k - 1:
        raise ValueError(f"tau-power m = {m} violates 1 <= m <= k-1 = {k - 1}")
    f = e_series(k, x, cutoff)
    f_sigma = e_series(k, sigma_param(x), cutoff)
    return _letter_from_function(
        f, f_sigma, k, 1, m - 1, channel, f"E{k}{x}t^{m - 1}"
    )


@lru_cache(maxsize=2048)
def siegel_letter(
    x: EllipticParam,
    channel: str = "holomorphic",
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> AdmissibleForm:
    """dlog g_x = 2 pi i E^(2)_x d(tau), or its plus/minus channel.

    plus = dlog|g_x|, minus = darg g_x; both pull back channel-wise since
    sigma preserves the axis and dlog g_x pulls back to dlog g_{x sigma}.
    """
    if x.is_zero:
        raise ValueError("Siegel-unit letters need a nonzero parameter")
    f = e_series(2, x, cutoff).scale(TWO_PI_I)
    f_sigma = e_series(2, sigma_param(x), cutoff).scale(TWO_PI_I)
    return _letter_from_function(f, f_sigma, 2, 1, 0, channel, f"w{channel[0]}{x}")


def merged_product_letter(
    factors: Sequence[tuple[int, EllipticParam]],
    cutoff: Fraction = DEFAULT_CUTOFF,
) -> AdmissibleForm:
    """Letter (prod_i E^(k_i)_{x_i})(tau) d(tau) for merged-product words.

    The pullback multiplies the sigma-moved factors and shifts by
    tau^{sum k_i - 2}.
    """
    inf = one_series(cutoff)
    zero = one_series(cutoff)
    total_k = 0
    for k, x in factors:
        inf = mul_series(inf, e_series(k, x, cutoff))
        zero = mul_series(zero, e_series(k, sigma_param(x), cutoff))
        total_k += k
    if total_k < 2:
        raise ValueError("total weight of a merged letter must be >= 2")
    return AdmissibleForm(
        inf,
        zero.shift_tau(total_k - 2),
        "holomorphic",
        "*".join(f"E{k}{x}" for k, x in factors),
    )


# ---------------------------------------------------------------------------
# Word integrals
# ---------------------------------------------------------------------------


def word_integral_to_infinity(word) -> TauQSeries:
    """Series of int_tau^oo w1...wn (the right-nested regularised integral).

    Right fold: I_n = -antiderivative(f_n), I_k = -antiderivative(f_k I_{k+1});
    its derivative is -f_1(tau) * (inner word) and its regularised value at
    infinity is zero.
    """
    letters = _letters_of(word)
    acc = one_series(min(l.inf_side.cutoff for l in letters))
    for letter in reversed(letters):
        acc = antiderivative_to_infinity(mul_series(letter.inf_side, acc)).scale(-1.0)
    return acc


def _suffix_integrals(series_list: Sequence[TauQSeries], cutoff) -> list[TauQSeries]:
    """[S_0..S_n] with S_j the series of int_tau^oo over the suffix starting at j."""
    n = len(series_list)
    out = [one_series(cutoff)] * (n + 1)
    acc = one_series(cutoff)
    for j in range(n - 1, -1, -1):
        acc = antiderivative_to_infinity(mul_series(series_list[j], acc)).scale(-1.0)
        out[j] = acc
    return out


def word_integral_zero_to_infinity(word, tau0_y: float = 1.0) -> complex:
    """Regularised int_0^oo w1...wn, split at tau0 = i*tau0_y.

    Evaluates  sum_{k=0}^n [int_0^{tau0} w1..wk] [int_{tau0}^oo w_{k+1}..wn]
    with the 0-side factors through path reversal and sigma-pullback:
    int_0^{tau0} w1..wk = (-1)^k [int_tau^oo wk^s..w1^s](-1/tau0).
    """
    letters = _letters_of(word)
    n = len(letters)
    cutoff = min(l.inf_side.cutoff for l in letters)
    inf_suffix = _suffix_integrals([l.inf_side for l in letters], cutoff)
    sigma_rev = [letters[j].zero_side for j in range(n - 1, -1, -1)]
    zero_suffix = _suffix_integrals(sigma_rev, cutoff)
    total = 0.0 + 0.0j
    y_zero = 1.0 / tau0_y  # -1/(i*tau0_y) = i / tau0_y
    for k in range(n + 1):
        z = (
            1.0 + 0.0j
            if k == 0
            else (-1.0) ** k * evaluate_at(zero_suffix[n - k], y_zero)
        )
        w = 1.0 + 0.0j if k == n else evaluate_at(inf_suffix[k], tau0_y)
        total += z * w
    return total


def word_integral_zero_to_infinity_with_bound(
    word, tau0_y: float = 1.0
) -> tuple[complex, float]:
    """Value of int_0^oo plus a truncation bound from the boundary shells."""
    letters = _letters_of(word)
    n = len(letters)
    cutoff = min(l.inf_side.cutoff for l in letters)
    inf_suffix = _suffix_integrals([l.inf_side for l in letters], cutoff)
    sigma_rev = [letters[j].zero_side for j in range(n - 1, -1, -1)]
    zero_suffix = _suffix_integrals(sigma_rev, cutoff)
    total = 0.0 + 0.0j
    bound = 0.0
    y_zero = 1.0 / tau0_y
    for k in range(n + 1):
        if k == 0:
            z, bz = 1.0 + 0.0j, 0.0
        else:
            z, bz = evaluate_with_bound(zero_suffix[n - k], y_zero)
            z *= (-1.0) ** k
        if k == n:
            w, bw = 1.0 + 0.0j, 0.0
        else:
            w, bw = evaluate_with_bound(inf_suffix[k], tau0_y)
        total += z * w
        bound += abs(z) * bw + abs(w) * bz
    return total, bound


# ---------------------------------------------------------------------------
# Shuffle product
# ---------------------------------------------------------------------------


def shuffle_expand(word_a, word_b) -> list[tuple]:
    """All interleavings of the two words preserving both internal orders.

    The count is binomial(|a| + |b|, |a|); equal letters yield repeated
    entries (a multiset).
    """
    a = tuple(_letters_of(word_a))
    b = tuple(_letters_of(word_b))
    if len(a) + len(b) > MAX_WORD_LENGTH:
        raise ValueError(
            f"shuffles of combined length {len(a) + len(b)} exceed the cap"
        )

    def rec(u: tuple, v: tuple) -> list[tuple]:
        if not u:
            return [v]
        if not v:
            return [u]
        return [(u[0],) + w for w in rec(u[1:], v)] + [
            (v[0],) + w for w in rec(u, v[1:])
        ]

    return rec(a, b)
