"""Exact representation counts for figurate values.

R_s(m) is the number of ordered s-tuples (n_1, ..., n_s), all n_i >= 1, with
f(n_1) + ... + f(n_s) = m.  Counts are plain Python integers (arbitrary
precision); the workhorse is a truncated value-domain convolution done in
block-packed big-int arithmetic, so no modular wraparound can occur.

count_via_dft is an independent floating cross-check: with more sample
points than the degree of S(alpha)^s, the inverse transform recovers every
count exactly up to floating rounding, which is checked against a 0.4
residue guard before rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetError
from .exactconv import sparse_power_profile
from .figurate import FigurateSpec, max_index

DEFAULT_OP_BUDGET = 2_000_000_000
DFT_DEGREE_LIMIT = 1 << 20


@dataclass(frozen=True)
class CountVector:
    """Counts R_s(m) for m = base, base+1, ..., base+len(counts)-1."""

    base: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    def __len__(self) -> int:
        return len(self.counts)

    def entry(self, m: int) -> int:
        i = m - self.base
        if 0 <= i < len(self.counts):
            return self.counts[i]
        return 0

    def total(self) -> int:
        return sum(self.counts)


def values_upto(spec: FigurateSpec, m: int) -> list[int]:
    """All values f(n) <= m for n >= 1, ascending.

    Linear scan with a strict-increase check at every step, so the result is
    trustworthy even for adversarial coefficient choices.
    """
    if m < 0:
        raise ValueError("bound must be >= 0")
    out: list[int] = []
    n, prev = 1, 0
    while True:
        v = spec.value(n)
        if v <= prev:
            raise ValueError(f"values not increasing at n={n}")
        if v > m:
            break
        out.append(v)
        n, prev = n + 1, v
    return out


def count_profile(
    spec: FigurateSpec,
    s: int,
    m_max: int,
    budget: int = DEFAULT_OP_BUDGET,
) -> CountVector:
    """Exact counts R_s(m) for all 0 <= m <= m_max."""
    if s < 0:
        raise ValueError("order must be >= 0")
    if m_max < 0:
        raise ValueError("bound must be >= 0")
    vals = values_upto(spec, m_max)
    if s * (m_max + 1) * max(len(vals), 1) > budget:
        raise BudgetError(
            f"profile needs ~{s * (m_max + 1) * len(vals)} block operations, "
            f"budget is {budget}"
        )
    counts = sparse_power_profile(vals, s, m_max)
    return CountVector(0, tuple(counts))


def count_representations(
    spec: FigurateSpec,
    s: int,
    m: int,
    budget: int = DEFAULT_OP_BUDGET,
) -> int:
    """Exact R_s(m)."""
    if m < 0:
        raise ValueError("target must be >= 0")
    return count_profile(spec, s, m, budget=budget).entry(m)


def _dft_profile(values: list[int], s: int, m_max: int) -> list[int]:
    """Counts via one real FFT; exact after rounding when the sample count
    exceeds the polynomial degree s * max(values)."""
    degree = s * max(values, default=0)
    size = 1
    while size <= max(degree, m_max, 1):
        size *= 2
    x = np.zeros(size)
    for v in values:
        x[v] = 1.0
    spectrum = np.fft.rfft(x) ** s
    approx = np.fft.irfft(spectrum, size)[: m_max + 1]
    rounded = np.rint(approx)
    residue = float(np.max(np.abs(approx - rounded))) if len(approx) else 0.0
    if residue >= 0.4:
        raise ArithmeticError(
            f"transform residue {residue:.3f} too large to round safely"
        )
    return [int(c) for c in rounded]


def count_profile_via_dft(spec: FigurateSpec, s: int, m_max: int) -> CountVector:
    """Floating cross-check of count_profile; exact on its guarded range."""
    if s < 1:
        raise ValueError("order must be >= 1")
    if m_max < 0:
        raise ValueError("bound must be >= 0")
    vals = values_upto(spec, m_max)
    degree = s * max(vals, default=0)
    if degree > DFT_DEGREE_LIMIT:
        raise BudgetError(
            f"transform degree {degree} exceeds guard {DFT_DEGREE_LIMIT}"
        )
    return CountVector(0, tuple(_dft_profile(vals, s, m_max)))


def count_via_dft(spec: FigurateSpec, s: int, m: int) -> int:
    """Exact R_s(m) through the floating transform path."""
    if m < 0:
        raise ValueError("target must be >= 0")
    return count_profile_via_dft(spec, s, m).entry(m)
