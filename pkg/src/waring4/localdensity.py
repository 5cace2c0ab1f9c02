"""Congruence counting and p-adic local densities for figurate sums.

M_m(t, q) counts s-tuples (n_1, ..., n_s) in [1, t]^s whose value sum is
congruent to m mod q; M_m(q) abbreviates M_m(q, q).  The local density at a
prime p is rho_k = p^(k(1-s)) * M_m(p^k), with limit T_m(p) as k grows.

Everything on the exact path is integer arithmetic: residues of f come from
the identity f(n) mod q = (24 f(n) mod 24q) / 24, valid because 24 f has
integer coefficients, and tuple counts come from exact cyclic convolution.
Moduli above the exact-path cap use a unit-magnitude DFT of the residue
histogram, which evaluates the same count in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BudgetError
from .exactconv import cyclic_self_power
from .figurate import FigurateSpec
from .weylbounds import BoundCheckReport, bound_report

EXACT_MODULUS_CAP = 5000
FLOAT_PERIOD_CAP = 10_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ResidueDistribution:
    q: int
    t: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.q:
            raise ValueError("histogram length must equal the modulus")
        if sum(self.counts) != self.t:
            raise ValueError("histogram mass must equal the sample length")


@dataclass(frozen=True)
class DensityReport:
    p: int
    levels: tuple[tuple[int, float], ...]
    stabilized: bool
    estimate: float
    bound_value: float
    bound_holds: bool

    def __post_init__(self):
        if self.stabilized and self.estimate <= 0.0:
            raise ValueError("a stabilized density must be positive")


def _residues_mod(spec: FigurateSpec, count: int, q: int) -> np.ndarray:
    """f(n) mod q for n = 1..count as an int64 array (count <= 24q expected).

    Horner evaluation of 24 f(n) mod 24q stays inside int64 provided
    (24q)^2 < 2^63; the final division by 24 recovers f mod q exactly.
    """
    modulus = 24 * q
    if modulus >= 1 << 31:
        raise BudgetError("modulus too large for the vectorized residue scan")
    n = np.arange(1, count + 1, dtype=np.int64) % modulus
    acc = np.full_like(n, spec.poly24[0] % modulus)
    for coeff in spec.poly24[1:]:
        acc = (acc * n + coeff % modulus) % modulus
    return (acc * n % modulus) // 24


def residue_distribution(spec: FigurateSpec, t: int, q: int) -> ResidueDistribution:
    """Exact histogram of f(n) mod q over 1 <= n <= t.

    The residue sequence has period 24q in n, so only one period is ever
    scanned; longer ranges are full periods plus a prefix.
    """
    if t < 1 or q < 1:
        raise ValueError("range and modulus must be >= 1")
    period = 24 * q
    full, rem = divmod(t, period)
    scan = period if full > 0 else rem
    res = _residues_mod(spec, scan, q)
    counts = np.bincount(res, minlength=q)
    if full > 0:
        prefix = np.bincount(res[:rem], minlength=q) if rem else np.zeros(q, np.int64)
        total = [full * int(c) + int(pc) for c, pc in zip(counts, prefix)]
    else:
        total = [int(c) for c in counts]
    return ResidueDistribution(q, t, tuple(total))


@lru_cache(maxsize=128)
def _congruence_profile(
    spec: FigurateSpec, s: int, t: int, q: int
) -> tuple[int, ...]:
    dist = residue_distribution(spec, t, q)
    return tuple(cyclic_self_power(dist.counts, s, q))


def count_congruence(spec: FigurateSpec, s: int, m: int, t: int, q: int) -> int:
    """M_m(t, q): s-tuples in [1, t]^s with value sum = m mod q, exactly."""
    if s < 1:
        raise ValueError("number of summands must be >= 1")
    if t < 1 or q < 1:
        raise ValueError("range and modulus must be >= 1")
    if q > EXACT_MODULUS_CAP:
        raise BudgetError(
            f"exact congruence counting is capped at modulus {EXACT_MODULUS_CAP}"
        )
    return _congruence_profile(spec, s, t, q)[m % q]


def scaling_identity_check(
    spec: FigurateSpec, s: int, m: int, q: int
) -> BoundCheckReport:
    """Does M_m(24q, q) equal 24^s * M_m(q, q)?

    Both sides are computed exactly; lhs is |difference| and rhs is 0, so the
    report holds only on exact equality.  The identity is a theorem for
    polynomials with integer coefficients but can fail when the binomial-basis
    denominators interact with the modulus (e.g. the {3,3,5} polynomial at
    moduli divisible by 3), so it is checked, not assumed.
    """
    if q > 30 or s > 17:
        raise ValueError("identity check is sized for q <= 30, s <= 17")
    lhs_count = count_congruence(spec, s, m, 24 * q, q)
    rhs_count = 24**s * count_congruence(spec, s, m, q, q)
    diff = abs(lhs_count - rhs_count)
    return bound_report(
        float(diff), 0.0, f"M({24*q},{q})={lhs_count} 24^s*M({q})={rhs_count}"
    )


def _derivative_valuation(spec: FigurateSpec, y: int, p: int) -> int | None:
    """v_p(f'(y)) as v_p(12 f'(y)) - v_p(12), or None when f'(y) = 0."""
    d12 = spec.deriv12_at(y)
    if d12 == 0:
        return None
    v = 0
    while d12 % p == 0:
        d12 //= p
        v += 1
    v12 = 2 if p == 2 else (1 if p == 3 else 0)
    return v - v12


def nonsingular_count(spec: FigurateSpec, s: int, m: int, p: int) -> int:
    """Solutions of the mod-p congruence whose first coordinate n_1 has both
    f(n_1) and f'(n_1) prime to p."""
    if not is_prime(p):
        raise ValueError("modulus must be prime")
    total = 0
    for n1 in range(1, p + 1):
        fn1 = spec.value(n1) % p
        if fn1 == 0 or _derivative_valuation(spec, n1, p) != 0:
            continue
        if s == 1:
            total += 1 if fn1 == m % p else 0
        else:
            total += count_congruence(spec, s - 1, m - fn1, p, p)
    return total


def _density_float(spec: FigurateSpec, s: int, m: int, q: int) -> float:
    """rho = sum over t mod q of (S(q,t)/q)^s e(-tm/q) via one dense DFT.

    S(q,t) is the complete sum over a full period; the histogram's FFT gives
    its conjugate, so the real part of the conjugated assembly below is the
    density.  Roundoff is of order q * s * machine-eps.
    """
    if 24 * q > FLOAT_PERIOD_CAP:
        raise BudgetError("modulus exceeds the float-path budget")
    res = _residues_mod(spec, q, q)
    hist = np.bincount(res, minlength=q).astype(float)
    F = np.fft.fft(hist) / q
    t = np.arange(q, dtype=float)
    phases = np.exp(2j * np.pi * ((m % q) * t / q))
    return float(np.real(np.conj(F**s) * np.conj(phases)).sum())


def local_density(spec: FigurateSpec, s: int, m: int, p: int, k: int) -> float:
    """rho_k = p^(k(1-s)) * M_m(p^k); exact rational for p^k <= 5000."""
    if k < 0:
        raise ValueError("level must be >= 0")
    if k == 0:
        return 1.0
    q = p**k
    if q <= EXACT_MODULUS_CAP:
        count = count_congruence(spec, s, m, q, q)
        return float(Fraction(count, q ** (s - 1)))
    return _density_float(spec, s, m, q)


def local_density_limit(
    spec: FigurateSpec,
    s: int,
    m: int,
    p: int,
    k_max: int | None = None,
    tol: float = 1e-9,
) -> DensityReport:
    """Densities rho_1..rho_k_max with a stabilization verdict.

    The default k_max is the deepest exact-path level (p^k <= 5000).  The
    report also records the classical lower bound the limit must beat:
    p^(1-s) for odd p, 2^(5(1-s)) at p = 2.
    """
    if not is_prime(p):
        raise ValueError("modulus must be prime")
    if k_max is None:
        k_max = max(1, int(math.log(EXACT_MODULUS_CAP) / math.log(p)))
    levels = []
    for k in range(1, k_max + 1):
        levels.append((k, local_density(spec, s, m, p, k)))
    stabilized = False
    if len(levels) >= 2:
        prev, last = levels[-2][1], levels[-1][1]
        stabilized = abs(last - prev) <= tol * abs(prev)
    estimate = levels[-1][1]
    bound_value = 2.0 ** (5 * (1 - s)) if p == 2 else float(p) ** (1 - s)
    return DensityReport(
        p=p,
        levels=tuple(levels),
        stabilized=stabilized,
        estimate=estimate,
        bound_value=bound_value,
        bound_holds=bool(estimate > bound_value),
    )


def valuation_tau(spec: FigurateSpec, p: int, search_bound: int | None = None) -> int:
    """min over 1 <= y <= search_bound of v_p(f'(y)).

    The valuation of f'(y) depends only on y mod p^(tau+1), so a scan up to
    max(p^3, 24p) sees every class that matters; the bound doubles if every
    sampled derivative vanishes outright.
    """
    if not is_prime(p):
        raise ValueError("modulus must be prime")
    bound = search_bound if search_bound is not None else max(p**3, 24 * p)
    if bound < 1:
        raise ValueError("search bound must be >= 1")
    while True:
        best: int | None = None
        for y in range(1, bound + 1):
            v = _derivative_valuation(spec, y, p)
            if v is not None and (best is None or v < best):
                best = v
        if best is not None:
            return best
        if bound > 10**6:
            raise ValueError("derivative vanished at every sampled point")
        bound *= 2


def hensel_lift(
    spec: FigurateSpec, c: int, a: int, p: int, j: int, tau: int
) -> list[int]:
    """All residues b mod p^(j+1) with b = a mod p^(j-tau) and f(b) = c mod p^(j+1).

    Preconditions of the generalized lifting lemma are enforced: f(a) = c
    mod p^j, v_p(f'(a)) = tau exactly, and j >= 2*tau + 1.  The lemma then
    guarantees exactly p^tau lifts, all in one class mod p^(j+1-tau); the
    enumeration here is direct, so the count doubles as a lemma check.
    """
    if not is_prime(p):
        raise ValueError("modulus must be prime")
    if tau < 0 or j < 2 * tau + 1:
        raise ValueError("lifting requires j >= 2*tau + 1")
    if (spec.value(a) - c) % p**j != 0:
        raise ValueError("a is not a root of f - c at level j")
    if _derivative_valuation(spec, a, p) != tau:
        raise ValueError("derivative valuation at a does not equal tau")
    target_mod = p ** (j + 1)
    step = p ** (j - tau)
    lifts = []
    for b in range(a % step, target_mod, step):
        if (spec.value(b) - c) % target_mod == 0:
            lifts.append(b)
    return sorted(lifts)


def cauchy_davenport_check(setA, setB, q: int) -> BoundCheckReport:
    """|A + B| >= min(q, |A| + |B| - 1) for residue sets mod a prime q,
    with 0 in B and every nonzero element of B prime to q."""
    if not is_prime(q):
        raise ValueError("modulus must be prime")
    A = {x % q for x in setA}
    B = {x % q for x in setB}
    if not A or not B:
        raise ValueError("both sets must be nonempty")
    if 0 not in B:
        raise ValueError("the shift set must contain 0")
    if any(math.gcd(b, q) != 1 for b in B if b != 0):
        raise ValueError("nonzero shifts must be prime to the modulus")
    sumset = {(x + y) % q for x in A for y in B}
    lhs = min(q, len(A) + len(B) - 1)
    return bound_report(
        float(lhs), float(len(sumset)), f"|A|={len(A)} |B|={len(B)} q={q}"
    )
