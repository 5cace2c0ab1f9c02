"""Exact integer sequence convolution via block-packed big integers.

Nonnegative integer sequences are packed into one Python int with a fixed
block width, so that big-int multiplication performs the full convolution in
C.  The caller supplies an upper bound on every coefficient that can appear;
the block width is sized from that bound, which guarantees no carry ever
crosses a block boundary.  All results are exact.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def _width_for(bound: int) -> int:
    """Block width in bytes so that any value <= bound fits strictly."""
    if bound < 0:
        raise ValueError("coefficient bound must be >= 0")
    return max(bound, 1).bit_length() // 8 + 1


def pack(seq: Sequence[int], width: int) -> int:
    buf = bytearray(len(seq) * width)
    for i, v in enumerate(seq):
        buf[i * width : (i + 1) * width] = int(v).to_bytes(width, "little")
    return int.from_bytes(bytes(buf), "little")


def unpack(packed: int, width: int, count: int) -> list[int]:
    data = packed.to_bytes(count * width, "little")
    return [
        int.from_bytes(data[i * width : (i + 1) * width], "little")
        for i in range(count)
    ]


def convolve(a: Sequence[int], b: Sequence[int], coeff_bound: int) -> list[int]:
    """Linear convolution of nonnegative sequences, exact.

    coeff_bound must dominate every output coefficient.
    """
    if not a or not b:
        return []
    w = _width_for(coeff_bound)
    return unpack(pack(a, w) * pack(b, w), w, len(a) + len(b) - 1)


def cyclic_self_power(vec: Sequence[int], s: int, q: int) -> list[int]:
    """s-fold cyclic self-convolution of vec over Z_q, exact.

    Entries must be nonnegative; every intermediate coefficient is bounded by
    sum(vec)**s, which sizes the block width.  Binary powering with a fold
    back to length q after each multiply.
    """
    if q < 1:
        raise ValueError("modulus must be >= 1")
    if len(vec) != q:
        raise ValueError("vector length must equal the modulus")
    if s < 0:
        raise ValueError("power must be >= 0")
    if s == 0:
        return [1] + [0] * (q - 1)
    total = sum(vec)
    w = _width_for(max(total, 1) ** s)

    def fold(vals: list[int]) -> list[int]:
        out = vals[:q] + [0] * (q - len(vals))
        for i in range(q, len(vals)):
            out[i - q] += vals[i]
        return out

    result: list[int] | None = None
    base = list(vec)
    e = s
    while e:
        if e & 1:
            if result is None:
                result = base[:]
            else:
                prod = pack(result, w) * pack(base, w)
                result = fold(unpack(prod, w, 2 * q - 1))
        e >>= 1
        if e:
            sq = pack(base, w)
            base = fold(unpack(sq * sq, w, 2 * q - 1))
    assert result is not None
    return result


def sparse_power_profile(values: Iterable[int], s: int, m_max: int) -> list[int]:
    """Coefficients of (sum_v x^v)^s up to x^m_max, exact.

    values are distinct nonnegative integers (x-exponents).  Each powering
    step shifts and adds the running polynomial once per value, then truncates
    above m_max, so memory stays at O(m_max * width).  Coefficients are
    counts of ordered tuples and are bounded by len(values)**s, which sizes
    the block width.
    """
    vals = sorted(set(int(v) for v in values))
    if any(v < 0 for v in vals):
        raise ValueError("exponents must be >= 0")
    if s < 0:
        raise ValueError("power must be >= 0")
    if m_max < 0:
        raise ValueError("truncation bound must be >= 0")
    vals = [v for v in vals if v <= m_max]
    out = [0] * (m_max + 1)
    if s == 0:
        out[0] = 1
        return out
    if not vals:
        return out
    w = _width_for(len(vals) ** s)
    bits = 8 * w
    mask = (1 << (bits * (m_max + 1))) - 1
    cur = 1
    for _ in range(s):
        acc = 0
        for v in vals:
            acc += cur << (bits * v)
        cur = acc & mask
    return unpack(cur, w, m_max + 1)
