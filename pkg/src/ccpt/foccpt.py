"""Radix-2 decimation-in-time fast transform with exact operation counters.

The input is permuted to bit-reversed order and combined stage by stage.
A size-M block is kept packed the same way the flat coefficient layout
works: slot K holds the cosine accumulator X(K) for 0 <= K <= M/2 and slot
M-K holds the sine accumulator Y(K) for 1 <= K <= M/2-1 (all scaled by M
relative to the coefficients; the final stage divides by N once).

A combine of two size-L blocks into a size-M block (L = M/2, Q = M/4) costs
exactly M-1 real multiplications and 2M-5 real additions for M >= 4, and
1 multiplication and 2 additions for M = 2. The sine accumulators vanish
identically at K = 0 and K = Q, so those butterflies reduce to the short
branches below; products with twiddles 0/1/-1 still count, sign flips and
dropped zero terms do not. Twiddle tables are precomputed per stage and
never counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matrices import CCPT1, CCPT2, DFT_NPM, OCCPT, RPT
from .signals import samples_of
from .transform import CoefficientSet

__all__ = ["OpCounter", "foccpt", "predicted_counts", "complexity_table"]


@dataclass
class OpCounter:
    real_mults: int = 0
    real_adds: int = 0

    def as_dict(self) -> dict:
        return {"mults": self.real_mults, "adds": self.real_adds}


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@lru_cache(maxsize=16)
def _twiddles(M: int):
    K = np.arange(M // 4 + 1)
    return np.cos(2 * np.pi * K / M), np.sin(2 * np.pi * K / M)


@lru_cache(maxsize=16)
def _bit_reversed(N: int) -> tuple[int, ...]:
    v = N.bit_length() - 1
    return tuple(int(format(i, f"0{v}b")[::-1], 2) for i in range(N)) if v else (0,)


def _combine(buf: np.ndarray, base: int, M: int, ctr: OpCounter) -> None:
    L = M // 2
    h = base
    g = base + L
    if M == 2:
        t = 1.0 * buf[g]
        ctr.real_mults += 1
        a = buf[h]
        buf[h] = a + t
        buf[g] = a - t
        ctr.real_adds += 2
        return
    Q = M // 4
    cosv, sinv = _twiddles(M)
    out = np.empty(M)
    # cosine side, K = 0: twiddle cos(0) = 1
    t = cosv[0] * buf[g]
    ctr.real_mults += 1
    out[0] = buf[h] + t
    out[L] = buf[h] - t
    ctr.real_adds += 2
    # cosine side, 1 <= K <= Q-1
    for K in range(1, Q):
        t1 = cosv[K] * buf[g + K]
        t2 = sinv[K] * buf[g + L - K]
        ctr.real_mults += 2
        out[K] = buf[h + K] + t1 - t2
        out[L - K] = buf[h + K] - t1 + t2
        ctr.real_adds += 4
    # cosine side, K = Q: twiddle cos(pi/2) = 0
    t = cosv[Q] * buf[g + Q]
    ctr.real_mults += 1
    out[Q] = buf[h + Q] + t
    ctr.real_adds += 1
    # sine side, 1 <= K <= Q-1
    for K in range(1, Q):
        u1 = cosv[K] * buf[g + L - K]
        u2 = sinv[K] * buf[g + K]
        ctr.real_mults += 2
        out[M - K] = buf[h + L - K] + u1 + u2
        out[L + K] = -buf[h + L - K] + u1 + u2
        ctr.real_adds += 4
    # sine side, K = Q: twiddle sin(pi/2) = 1
    out[M - Q] = sinv[Q] * buf[g + Q]
    ctr.real_mults += 1
    buf[base:base + M] = out


def _foccpt_real(x: np.ndarray, ctr: OpCounter) -> np.ndarray:
    N = len(x)
    buf = x[list(_bit_reversed(N))].astype(float)
    M = 2
    while M <= N:
        for base in range(0, N, M):
            _combine(buf, base, M, ctr)
        M *= 2
    return buf / N


def foccpt(x):
    """Fast orthogonal transform for N = 2^v, v >= 1.

    Returns (coefficients, counter); the coefficients equal occpt_analysis
    bit for bit up to rounding, the counter holds the exact butterfly
    arithmetic (final 1/N scaling and twiddle tables excluded). Complex
    input runs two real passes on one shared counter.
    """
    x = samples_of(x)
    N = len(x)
    if N < 2 or not _is_pow2(N):
        raise ValueError(f"fast transform requires a power-of-two length >= 2, got {N}")
    ctr = OpCounter()
    if np.iscomplexobj(x):
        flat = _foccpt_real(np.ascontiguousarray(x.real), ctr) \
            + 1j * _foccpt_real(np.ascontiguousarray(x.imag), ctr)
    else:
        flat = _foccpt_real(x.astype(float), ctr)
    return CoefficientSet(N=N, family=OCCPT, flat=flat), ctr


def predicted_counts(N: int, input_kind: str = "real") -> OpCounter:
    """Closed-form operation counts of the fast transform."""
    if N < 2 or not _is_pow2(N):
        raise ValueError(f"counts are defined for power-of-two N >= 2, got {N}")
    v = N.bit_length() - 1
    if input_kind == "real":
        return OpCounter(real_mults=N * v - N + 1, real_adds=2 * N * v - 7 * N // 2 + 5)
    if input_kind == "complex":
        return OpCounter(real_mults=2 * N * v - 2 * N + 2, real_adds=4 * N * v - 7 * N + 10)
    raise ValueError(f"input_kind must be 'real' or 'complex', got {input_kind!r}")


def complexity_table(N: int) -> list[dict]:
    """Real-operation counts for a complex length-N input, one row per
    transform. Power-of-two sizes use the fast algorithms for the orthogonal
    transform and the DFT; everything else is the direct method. N = 1 is
    the identity and costs nothing."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    fast = N >= 2 and _is_pow2(N)
    v = N.bit_length() - 1
    direct_half = (2 * N * N, 2 * N * N - 2 * N)  # real basis, complex input

    def row(name, mults, adds, method):
        return {"transform": name, "mults": mults, "adds": adds, "method": method}

    if N == 1:
        return [row(name, 0, 0, "direct") for name in (CCPT1, CCPT2, OCCPT, DFT_NPM, RPT)]
    rows = [
        row(CCPT1, *direct_half, "direct"),
        row(CCPT2, *direct_half, "direct"),
    ]
    if fast:
        rows.append(row(OCCPT, 2 * N * v - 2 * N + 2, 4 * N * v - 7 * N + 10, "fast"))
        rows.append(row(DFT_NPM, 2 * N * v, 3 * N * v, "fast"))
    else:
        rows.append(row(OCCPT, *direct_half, "direct"))
        rows.append(row(DFT_NPM, 4 * N * N, 4 * N * N - 2 * N, "direct"))
    rows.append(row(RPT, *direct_half, "direct"))
    return rows
