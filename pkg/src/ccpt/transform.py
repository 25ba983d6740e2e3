"""Analysis/synthesis for the periodic transforms and their identities.

The orthogonal transform is computed directly from its trigonometric sums in
a frequency-ordered flat layout: coefficient K holds the cosine projection at
K/N cycles per sample for K <= floor(N/2) and the (negated) sine projection
above. Each conjugate subspace (p, k) owns the pair of slots N*k/p and
N - N*k/p, which is also where its cosine/sine coefficient pair lives.

The non-orthogonal transforms solve their full linear systems against a
cached LU factorization with partial pivoting, one per (family, size).

Complex inputs run the real transform on real and imaginary parts and carry
the coefficients as one complex flat array.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import cos, gcd, pi, sin

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .ccps import COS, SIN, ccps, pair_scale
from .matrices import CCPT1, CCPT2, DFT_NPM, FAMILIES, OCCPT, RPT, cached_matrix
from .numtheory import divisors, half_residues
from .signals import Signal, samples_of

_KERNEL_CACHE_MAX = 1024

__all__ = [
    "CoefficientSet",
    "occpt_analysis", "occpt_synthesis",
    "ccpt1_analysis", "ccpt2_analysis",
    "analyze", "synthesize",
    "dft_from_occpt", "shift_coefficients", "convolve_coefficients",
    "parseval_energy", "coefficient_period_check",
    "coefficients_to_dict",
]


@dataclass(frozen=True)
class CoefficientSet:
    """Transform coefficients with flat and subspace-indexed views.

    For the orthogonal family `flat` is frequency-ordered (see module
    docstring); for the other families it follows the matrix column order.
    Both views read the same array.
    """

    N: int
    family: str
    flat: np.ndarray

    def __post_init__(self):
        self.flat.setflags(write=False)

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.flat))

    def flat_index(self, p: int, k: int, kind: str, shift: int = 0) -> int:
        if self.family == OCCPT:
            if kind == COS:
                return (self.N * k // p) % self.N
            if kind == SIN:
                if p <= 2:
                    raise KeyError(f"no sine coefficient for p={p}")
                return self.N - self.N * k // p
            raise KeyError(f"no {kind!r} coefficients in the orthogonal family")
        return cached_matrix(self.family, self.N).column_index(p, k, kind, shift)

    def value(self, p: int, k: int, kind: str, shift: int = 0):
        return self.flat[self.flat_index(p, k, kind, shift)]

    def pair(self, p: int, k: int):
        """Cosine/sine coefficient pair of the conjugate subspace (p, k);
        the sine slot is 0 for the degenerate periods 1 and 2."""
        if self.family != OCCPT:
            raise ValueError("pair view requires the orthogonal family")
        b0 = self.flat[self.flat_index(p, k, COS)]
        b1 = self.flat[self.flat_index(p, k, SIN)] if p >= 3 else type(b0)(0)
        return b0, b1

    def items(self):
        """(column address, coefficient) pairs in canonical column order."""
        cols = cached_matrix(self.family, self.N).columns
        if self.family == OCCPT:
            return [(c, self.flat[self.flat_index(c.p, c.k, c.kind)]) for c in cols]
        return list(zip(cols, self.flat))

    def column_values(self) -> np.ndarray:
        """Coefficients rearranged into matrix column order."""
        return np.array([v for _, v in self.items()])


def _half(N: int) -> int:
    return N // 2


@lru_cache(maxsize=32)
def _analysis_kernel(N: int) -> np.ndarray:
    n = np.arange(N)
    W = np.empty((N, N))
    for K in range(N):
        if K <= _half(N):
            W[K] = np.cos(2 * np.pi * K * n / N) / N
        else:
            W[K] = -np.sin(2 * np.pi * K * n / N) / N
    return W


def _synthesis_scales(N: int) -> np.ndarray:
    m = np.ones(N)
    m[0] = 0.5
    if N % 2 == 0:
        m[N // 2] = 0.5
    return m


@lru_cache(maxsize=32)
def _synthesis_kernel(N: int) -> np.ndarray:
    n = np.arange(N)
    S = np.empty((N, N))
    mhat = _synthesis_scales(N)
    for K in range(N):
        if K <= _half(N):
            S[:, K] = 2 * mhat[K] * np.cos(2 * np.pi * K * n / N)
        else:
            S[:, K] = -2 * np.sin(2 * np.pi * K * n / N)
    return S


def _forward_real(x: np.ndarray) -> np.ndarray:
    N = len(x)
    if N <= _KERNEL_CACHE_MAX:
        return _analysis_kernel(N) @ x
    n = np.arange(N)
    beta = np.empty(N)
    for K in range(N):
        if K <= _half(N):
            beta[K] = np.dot(x, np.cos(2 * np.pi * K * n / N)) / N
        else:
            beta[K] = -np.dot(x, np.sin(2 * np.pi * K * n / N)) / N
    return beta


def _inverse_real(beta: np.ndarray) -> np.ndarray:
    N = len(beta)
    if N <= _KERNEL_CACHE_MAX:
        return _synthesis_kernel(N) @ beta
    n = np.arange(N)
    mhat = _synthesis_scales(N)
    x = np.zeros(N)
    for K in range(N):
        if K <= _half(N):
            x += 2 * mhat[K] * beta[K] * np.cos(2 * np.pi * K * n / N)
        else:
            x += -2 * beta[K] * np.sin(2 * np.pi * K * n / N)
    return x


def occpt_analysis(x) -> CoefficientSet:
    """Orthogonal-transform coefficients of a length-N signal.

    Real input gives a real flat array; complex input is transformed part by
    part and combined as beta = beta_re + 1j*beta_im.
    """
    x = samples_of(x)
    if np.iscomplexobj(x):
        flat = _forward_real(np.ascontiguousarray(x.real)) + 1j * _forward_real(np.ascontiguousarray(x.imag))
    else:
        flat = _forward_real(x.astype(float))
    return CoefficientSet(N=len(x), family=OCCPT, flat=flat)


def occpt_synthesis(c: CoefficientSet) -> np.ndarray:
    """Exact inverse of occpt_analysis."""
    if c.family != OCCPT:
        raise ValueError("occpt_synthesis requires orthogonal-family coefficients")
    if c.is_complex:
        return _inverse_real(np.ascontiguousarray(c.flat.real)) + 1j * _inverse_real(np.ascontiguousarray(c.flat.imag))
    return _inverse_real(c.flat)


@lru_cache(maxsize=32)
def _lu(family: str, N: int):
    m = cached_matrix(family, N)
    return lu_factor(m.entries)


def _solve_family(family: str, N: int, x: np.ndarray) -> np.ndarray:
    lu_piv = _lu(family, N)
    real_matrix = family != DFT_NPM
    if real_matrix and np.iscomplexobj(x):
        return lu_solve(lu_piv, x.real) + 1j * lu_solve(lu_piv, x.imag)
    return lu_solve(lu_piv, x.astype(complex) if family == DFT_NPM else x.astype(float))


def ccpt1_analysis(x) -> CoefficientSet:
    """Coefficients against the type-1 basis (full linear solve)."""
    x = samples_of(x)
    return CoefficientSet(N=len(x), family=CCPT1, flat=_solve_family(CCPT1, len(x), x))


def ccpt2_analysis(x) -> CoefficientSet:
    """Coefficients against the type-2 basis (full linear solve)."""
    x = samples_of(x)
    return CoefficientSet(N=len(x), family=CCPT2, flat=_solve_family(CCPT2, len(x), x))


def analyze(x, family: str) -> CoefficientSet:
    """Family-dispatching analysis; the orthogonal family uses its direct
    sums, every other family a cached LU solve."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == OCCPT:
        return occpt_analysis(x)
    x = samples_of(x)
    return CoefficientSet(N=len(x), family=family, flat=_solve_family(family, len(x), x))


def synthesize(c: CoefficientSet) -> np.ndarray:
    if c.family == OCCPT:
        return occpt_synthesis(c)
    m = cached_matrix(c.family, c.N)
    out = m.entries @ c.flat
    if c.family != DFT_NPM and not c.is_complex:
        out = np.real(out) if np.iscomplexobj(out) else out
    return out


def dft_from_occpt(c: CoefficientSet) -> np.ndarray:
    """DFT bins from orthogonal-transform coefficients.

    Bin k belongs to the conjugate subspace (p, k/d) with d = gcd(k, N),
    p = N/d; bin 0 is the DC coefficient (k = N case). Lower residues give
    N*(b0 - j*b1), mirrored residues N*(b0 + j*b1) at the mirror pair.
    """
    if c.family != OCCPT:
        raise ValueError("dft_from_occpt requires orthogonal-family coefficients")
    N, flat = c.N, c.flat
    X = np.empty(N, dtype=complex)
    X[0] = N * flat[0]
    for k in range(1, N):
        p = N // gcd(k, N)
        ki = k // gcd(k, N)
        if p <= 2:
            X[k] = N * flat[k]
        elif ki <= p // 2:
            X[k] = N * (flat[k] - 1j * flat[N - k])
        else:
            X[k] = N * (flat[N - k] + 1j * flat[k])
    return X


def shift_coefficients(c: CoefficientSet, m: int) -> CoefficientSet:
    """Coefficients of the signal circularly delayed by m samples: each
    conjugate-subspace pair rotates by 2*pi*k*((-m) mod N)/p; the degenerate
    periods scale by the cosine alone."""
    if c.family != OCCPT:
        raise ValueError("shift_coefficients requires orthogonal-family coefficients")
    N = c.N
    out = np.array(c.flat)
    delay = (-m) % N
    for p in divisors(N):
        for k in half_residues(p):
            theta = 2 * pi * k * delay / p
            kc = (N * k // p) % N
            if p <= 2:
                out[kc] = c.flat[kc] * cos(theta)
            else:
                ks = N - kc
                b0, b1 = c.flat[kc], c.flat[ks]
                out[kc] = cos(theta) * b0 + sin(theta) * b1
                out[ks] = -sin(theta) * b0 + cos(theta) * b1
    return CoefficientSet(N=N, family=OCCPT, flat=out)


def convolve_coefficients(a: CoefficientSet, b: CoefficientSet) -> CoefficientSet:
    """Coefficients of the circular convolution of the two underlying
    signals; commutative in (a, b)."""
    if a.family != OCCPT or b.family != OCCPT:
        raise ValueError("convolve_coefficients requires orthogonal-family coefficients")
    if a.N != b.N:
        raise ValueError(f"size mismatch: {a.N} vs {b.N}")
    N = a.N
    out = np.zeros(N, dtype=np.result_type(a.flat, b.flat))
    for p in divisors(N):
        for k in half_residues(p):
            kc = (N * k // p) % N
            if p <= 2:
                out[kc] = N * a.flat[kc] * b.flat[kc]
            else:
                ks = N - kc
                a0, a1 = a.flat[kc], a.flat[ks]
                b0, b1 = b.flat[kc], b.flat[ks]
                out[kc] = N * (a0 * b0 - a1 * b1)
                out[ks] = N * (a1 * b0 + a0 * b1)
    return CoefficientSet(N=N, family=OCCPT, flat=out)


def parseval_energy(c: CoefficientSet) -> float:
    """Signal energy recovered from orthogonal coefficients: N times the
    squared DC (and Nyquist, when present) plus 2N times every other square."""
    if c.family != OCCPT:
        raise ValueError("parseval_energy requires orthogonal-family coefficients")
    N = c.N
    sq = np.abs(c.flat) ** 2
    energy = N * sq[0]
    rest = sq[1:]
    if N % 2 == 0:
        energy += N * sq[N // 2]
        rest = np.concatenate([sq[1:N // 2], sq[N // 2 + 1:]])
    return float(energy + 2 * N * np.sum(rest))


def coefficient_period_check(c: CoefficientSet, k_multiple: int = 1, tol: float = 1e-12) -> bool:
    """Verify the residue-periodicity of the analysis sums: evaluating them
    at k + k_multiple*N reproduces the stored coefficients. Test utility."""
    if c.family != OCCPT:
        raise ValueError("coefficient_period_check requires orthogonal-family coefficients")
    if c.is_complex:
        raise ValueError("period check is defined for real coefficient sets")
    N = c.N
    x = occpt_synthesis(c)
    for p in divisors(N):
        for k in half_residues(p):
            b0, b1 = c.pair(p, k)
            shifted = k + k_multiple * N
            m = pair_scale(p)
            b0s = np.dot(x, ccps(p, shifted, COS, N)) / (2 * N * m)
            if abs(b0s - b0) > tol:
                return False
            if p >= 3:
                b1s = np.dot(x, ccps(p, shifted, SIN, N)) / (2 * N * m)
                if abs(b1s - b1) > tol:
                    return False
    return True


def _num(v):
    if np.iscomplexobj(np.asarray(v)):
        return {"re": float(np.real(v)), "im": float(np.imag(v))}
    return float(v)


def coefficients_to_dict(c: CoefficientSet) -> dict:
    """JSON-ready view carrying both layouts."""
    return {
        "N": c.N,
        "family": c.family,
        "flat": [_num(v) for v in c.flat],
        "indexed": [
            {"p": idx.p, "k": idx.k, "kind": idx.kind, "shift": idx.shift, "value": _num(v)}
            for idx, v in c.items()
        ],
    }
