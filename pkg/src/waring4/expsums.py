"""Exponential sums over figurate values.

e(x) denotes exp(2*pi*i*x) throughout.  The three sums of interest:

* weyl_sum:       S_N(alpha) = sum_{n=1}^{N} e(alpha * f(n))
* partial_sum_M:  M_t(a/q)   = sum_{n=1}^{t} e((a/q) * f(n))
* complete_sum_V: V(q, a)    = sum_{n=1}^{24q} e((a/q) * f(n))

Rational phases are computed exactly: f(n) mod q comes from the integer
polynomial 24*f(n) reduced mod 24q and divided by 24, so no precision is
lost no matter how large f(n) grows.  Arbitrary real alpha goes through the
exact integer ratio of the float, which keeps alpha * f(n) mod 1 correct to
one rounding even when f(n) has 60-bit magnitude.

mean_value(spec, N, j) is the exact number of solutions of

    f(u_1)+...+f(u_h) = f(v_1)+...+f(v_h),  h = 2^(j-1),  1 <= u_i, v_i <= N,

i.e. the 2^j-th power moment of |S_N| integrated over the circle.  It is
computed by value-domain convolution with integer arithmetic, never by
Monte Carlo.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import BudgetError
from .figurate import FigurateSpec

TWO_PI = 2.0 * cmath.pi


@dataclass(frozen=True)
class PhaseSum:
    """A finite sum of unit-modulus phases; |value| can never exceed terms."""

    value: complex
    terms: int


def _kahan_complex(parts) -> complex:
    """Compensated sequential sum; deterministic for a fixed iteration order."""
    total = 0.0 + 0.0j
    carry = 0.0 + 0.0j
    for x in parts:
        y = x - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


@lru_cache(maxsize=4096)
def _residue_period(spec: FigurateSpec, q: int) -> tuple[int, ...]:
    """f(n) mod q for n = 1..24q (one full period of n)."""
    qq = 24 * q
    out = []
    for n in range(1, qq + 1):
        out.append((spec.scaled24(n) % qq) // 24)
    return tuple(out)


@lru_cache(maxsize=4096)
def _complete_sum_table(spec: FigurateSpec, q: int) -> tuple[complex, ...]:
    """V(q, a) for a = 0..q-1, via the residue histogram of one full period."""
    hist = [0] * q
    for r in _residue_period(spec, q):
        hist[r] += 1
    roots = [cmath.exp(TWO_PI * 1j * (r / q)) for r in range(q)]
    table = []
    for a in range(q):
        table.append(
            _kahan_complex(hist[r] * roots[(a * r) % q] for r in range(q) if hist[r])
        )
    return tuple(table)


def weyl_phase_sum(spec: FigurateSpec, N: int, alpha: float) -> PhaseSum:
    """S_N(alpha) together with its term count.

    alpha is taken at face value as an exact rational (floats are dyadic
    rationals), and alpha * f(n) is reduced mod 1 in integer arithmetic
    before any rounding happens.
    """
    if N < 0:
        raise ValueError("length must be >= 0")
    frac = Fraction(alpha)
    num, den = frac.numerator, frac.denominator
    parts = []
    for n in range(1, N + 1):
        fn = spec.value(n)
        parts.append(cmath.exp(TWO_PI * 1j * (((num * fn) % den) / den)))
    return PhaseSum(_kahan_complex(parts), N)


def weyl_sum(spec: FigurateSpec, N: int, alpha: float) -> complex:
    """S_N(alpha) = sum_{n<=N} e(alpha * f(n))."""
    return weyl_phase_sum(spec, N, alpha).value


def partial_sum_M(spec: FigurateSpec, q: int, a: int, t: int) -> complex:
    """M_t(a/q) = sum_{n<=t} e((a/q) * f(n)), with exact rational phases."""
    if q < 1:
        raise ValueError("denominator must be >= 1")
    if t < 0:
        raise ValueError("length must be >= 0")
    period = _residue_period(spec, q)
    qq = len(period)
    roots = [cmath.exp(TWO_PI * 1j * (r / q)) for r in range(q)]
    return _kahan_complex(
        roots[(a * period[(n - 1) % qq]) % q] for n in range(1, t + 1)
    )


def complete_sum_V(spec: FigurateSpec, q: int, a: int) -> complex:
    """V(q, a) = sum over one full period n = 1..24q of e((a/q) * f(n))."""
    if q < 1:
        raise ValueError("denominator must be >= 1")
    return _complete_sum_table(spec, q)[a % q]


def v_of_q(spec: FigurateSpec, q: int, s: int, m: int) -> complex:
    """Normalized complete-sum term

        V_q = sum_{a mod q, gcd(a,q)=1} (V(q,a)/(24q))^s * e(-a*m/q).

    These are the multiplicative building blocks of the singular series.
    """
    if q < 1:
        raise ValueError("denominator must be >= 1")
    if s < 1:
        raise ValueError("order must be >= 1")
    table = _complete_sum_table(spec, q)
    scale = 1.0 / (24.0 * q)
    parts = []
    for a in range(1, q + 1):
        if gcd(a, q) != 1:
            continue
        va = table[a % q] * scale
        parts.append(va**s * cmath.exp(-TWO_PI * 1j * ((a * m) % q) / q))
    return _kahan_complex(parts)


def _values_array(spec: FigurateSpec, N: int) -> np.ndarray:
    vals = [spec.value(n) for n in range(1, N + 1)]
    if vals and max(vals) >= 1 << 62:
        raise BudgetError("values too large for 64-bit moment computation")
    return np.array(vals, dtype=np.int64)


def _sum_of_squares_int64(arr: np.ndarray) -> int:
    """Exact sum of squares of nonnegative int64 entries < 2**37."""
    if len(arr) == 0:
        return 0
    mx = int(arr.max())
    if mx < 1 << 31 and mx * int(arr.sum()) < 1 << 62:
        return int(np.dot(arr, arr))
    if mx >= 1 << 37 or len(arr) >= 1 << 24:
        raise BudgetError("moment too large for the split accumulator")
    hi = arr >> 19
    lo = arr & ((1 << 19) - 1)
    s_hh = int(np.dot(hi, hi))
    s_hl = int(np.dot(hi, lo))
    s_ll = int(np.dot(lo, lo))
    return (s_hh << 38) + (s_hl << 20) + s_ll


def _pair_sum_counts(fv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values and multiplicities of f(u)+f(v) over ordered pairs."""
    sums = (fv[:, None] + fv[None, :]).ravel()
    vals, cnts = np.unique(sums, return_counts=True)
    return vals, cnts.astype(np.int64)


def mean_value(spec: FigurateSpec, N: int, j: int) -> int:
    """Exact 2^j-th moment: solutions of sum f(u_i) = sum f(v_i), h = 2^(j-1)
    terms per side, 1 <= u_i, v_i <= N."""
    if j not in (1, 2, 3, 4):
        raise ValueError("moment index j must be in 1..4")
    if N < 0:
        raise ValueError("length must be >= 0")
    if N == 0:
        return 0
    if j == 2 and N > 4000:
        raise BudgetError("fourth moment is limited to N <= 4000")
    if j == 3 and N > 120:
        raise BudgetError("eighth moment is limited to N <= 120")
    if j == 4 and (N > 24 or 8 * spec.value(N) > 12_000_000):
        raise BudgetError(
            "sixteenth moment needs a dense table of 8*f(N) entries; "
            "this spec exceeds the memory budget at the requested N"
        )

    fv = _values_array(spec, N)
    if j == 1:
        _, cnts = np.unique(fv, return_counts=True)
        return _sum_of_squares_int64(cnts.astype(np.int64))
    vals2, cnts2 = _pair_sum_counts(fv)
    if j == 2:
        return _sum_of_squares_int64(cnts2)
    if j == 3:
        # quadruple sums: combine the distinct pair sums pairwise, in row
        # chunks so the intermediate outer products stay small
        acc_v = acc_c = None
        chunk = max(1, 4_000_000 // max(1, len(vals2)))
        for i in range(0, len(vals2), chunk):
            v4 = (vals2[i : i + chunk, None] + vals2[None, :]).ravel()
            c4 = (cnts2[i : i + chunk, None] * cnts2[None, :]).ravel()
            uv, inv = np.unique(v4, return_inverse=True)
            uc = np.zeros(len(uv), dtype=np.int64)
            np.add.at(uc, inv, c4)
            if acc_v is None:
                acc_v, acc_c = uv, uc
            else:
                merged_v = np.concatenate([acc_v, uv])
                merged_c = np.concatenate([acc_c, uc])
                acc_v, inv2 = np.unique(merged_v, return_inverse=True)
                acc_c = np.zeros(len(acc_v), dtype=np.int64)
                np.add.at(acc_c, inv2, merged_c)
        return _sum_of_squares_int64(acc_c)
    # j == 4: dense octuple-sum table by repeated shifted adds of the base
    # values; every intermediate count is bounded by N^8 <= 24^8 < 2^37
    top = int(fv[-1])
    base = [int(v) for v in fv]
    uv, uc = np.unique(fv, return_counts=True)
    dense = np.zeros(top + 1, dtype=np.int64)
    dense[uv] = uc
    for level in range(2, 9):
        out = np.zeros(level * top + 1, dtype=np.int64)
        for v in base:
            out[v : v + len(dense)] += dense
        dense = out
    return _sum_of_squares_int64(dense)
