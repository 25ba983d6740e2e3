"""The five periodic transformation matrices and their validation.

Every family stacks, for each divisor p of N, a block of phi(p) columns of
exact period p (a nested periodic matrix). The families differ only in the
block generator:

  dft-npm  complex exponentials, full coprime residue set per divisor
  rpt      Ramanujan sums and their circular downshifts
  ccpt1    type-1 pair sums and their one-sample downshifts
  ccpt2    type-2 pair sums and their one-sample downshifts
  occpt    the type-1/type-2 pair per conjugate subspace (orthogonal columns)

Column order is canonical and fixed: divisors ascending, residues ascending,
cos before sin, downshift 0 before downshift 1. Coefficient indices therefore
mean the same thing across runs.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ccps import COS, SIN, ccps1, ccps2, pair_scale, ramanujan_sum
from .numtheory import divisors, half_residues, residue_sets, totient

DFT_NPM = "dft-npm"
RPT = "rpt"
CCPT1 = "ccpt1"
CCPT2 = "ccpt2"
OCCPT = "occpt"

FAMILIES = (DFT_NPM, RPT, CCPT1, CCPT2, OCCPT)

EXP = "exp"
RAM = "ram"

MAX_DIRECT_N = 4096

__all__ = [
    "DFT_NPM", "RPT", "CCPT1", "CCPT2", "OCCPT", "FAMILIES",
    "SubspaceIndex", "PeriodicBasisMatrix", "ValidationReport", "BlockCheck",
    "subspace_block", "build_matrix", "cached_matrix",
    "build_dft_npm", "build_rpt", "build_ccpt1", "build_ccpt2", "build_occpt",
    "validate_npm", "matrix_rank", "minimal_period",
    "export_matrix_csv", "matrix_metadata", "export_matrix_metadata",
]


@dataclass(frozen=True)
class SubspaceIndex:
    """Address of one basis column: divisor period p, residue k, generator
    kind (exp/cos/sin/ram) and circular downshift applied to it."""

    p: int
    k: int
    kind: str
    shift: int = 0


def _tiled(pattern: np.ndarray, length: int, shift: int) -> np.ndarray:
    p = len(pattern)
    idx = (np.arange(length) - shift) % p
    return pattern[idx]


def subspace_block(family: str, p: int, length: int):
    """Basis block for the period-p subspace, tiled/truncated to `length`.

    Returns (block, columns): a length x phi(p) array and the column
    addresses. Used both by the square builders (p a divisor of length) and
    by the dictionaries (arbitrary p).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    cols: list[np.ndarray] = []
    meta: list[SubspaceIndex] = []
    if family == DFT_NPM:
        n = np.arange(length)
        for k in residue_sets(p).full:
            cols.append(np.exp(2j * np.pi * k * (n % p) / p))
            meta.append(SubspaceIndex(p, k, EXP))
    elif family == RPT:
        pattern = ramanujan_sum(p)
        for j in range(totient(p)):
            cols.append(_tiled(pattern, length, j))
            meta.append(SubspaceIndex(p, 0, RAM, shift=j))
    elif family in (CCPT1, CCPT2):
        gen = ccps1 if family == CCPT1 else ccps2
        kind = COS if family == CCPT1 else SIN
        for k in half_residues(p):
            pattern = gen(p, k)
            cols.append(_tiled(pattern, length, 0))
            meta.append(SubspaceIndex(p, k, kind, shift=0))
            if p >= 3:
                cols.append(_tiled(pattern, length, 1))
                meta.append(SubspaceIndex(p, k, kind, shift=1))
    else:  # occpt: type-1/type-2 pair per conjugate subspace, type-1 alone for p <= 2
        for k in half_residues(p):
            cols.append(_tiled(ccps1(p, k), length, 0))
            meta.append(SubspaceIndex(p, k, COS))
            if p >= 3:
                cols.append(_tiled(ccps2(p, k), length, 0))
                meta.append(SubspaceIndex(p, k, SIN))
    return np.column_stack(cols), meta


@dataclass(frozen=True)
class PeriodicBasisMatrix:
    """An N x N basis matrix with per-column subspace metadata.

    `entries` is dense (complex for dft-npm, real otherwise) and read-only;
    `columns[i]` addresses column i.
    """

    N: int
    family: str
    entries: np.ndarray
    columns: tuple[SubspaceIndex, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.entries.setflags(write=False)
        self._index.update({c: i for i, c in enumerate(self.columns)})

    def column_index(self, p: int, k: int, kind: str, shift: int = 0) -> int:
        """0-based position of the column addressed by (p, k, kind, shift)."""
        key = SubspaceIndex(p, k, kind, shift)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no column {key} in {self.family} matrix of size {self.N}") from None

    def subspace_columns(self, p: int) -> range:
        """Contiguous column range of the period-p block."""
        pos = [i for i, c in enumerate(self.columns) if c.p == p]
        if not pos:
            raise KeyError(f"{p} is not a divisor period of this matrix (N={self.N})")
        return range(pos[0], pos[-1] + 1)

    def scales(self) -> np.ndarray:
        """Per-column pair-scale constants (1/2 for p <= 2, else 1)."""
        return np.array([pair_scale(c.p) for c in self.columns])


def build_matrix(family: str, N: int) -> PeriodicBasisMatrix:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if N < 1:
        raise ValueError(f"matrix size must be >= 1, got {N}")
    if N > MAX_DIRECT_N:
        raise ValueError(f"direct builders are capped at N={MAX_DIRECT_N}, got {N}")
    blocks, meta = [], []
    for p in divisors(N):
        block, cols = subspace_block(family, p, N)
        blocks.append(block)
        meta.extend(cols)
    entries = np.hstack(blocks)
    return PeriodicBasisMatrix(N=N, family=family, entries=entries, columns=tuple(meta))


@lru_cache(maxsize=64)
def cached_matrix(family: str, N: int) -> PeriodicBasisMatrix:
    return build_matrix(family, N)


def build_dft_npm(N: int) -> PeriodicBasisMatrix:
    return build_matrix(DFT_NPM, N)


def build_rpt(N: int) -> PeriodicBasisMatrix:
    return build_matrix(RPT, N)


def build_ccpt1(N: int) -> PeriodicBasisMatrix:
    return build_matrix(CCPT1, N)


def build_ccpt2(N: int) -> PeriodicBasisMatrix:
    return build_matrix(CCPT2, N)


def build_occpt(N: int) -> PeriodicBasisMatrix:
    return build_matrix(OCCPT, N)


def matrix_rank(a: np.ndarray) -> int:
    """Rank by singular values, scale-free threshold 1e-10 * sigma_max."""
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s >= 1e-10 * s[0]))


def minimal_period(col: np.ndarray, p: int, tol: float = 1e-9) -> int:
    """Smallest divisor of p with which the length-N sequence repeats."""
    for d in divisors(p):
        if np.allclose(col, col[np.arange(len(col)) % d], atol=tol):
            return d
    return p


@dataclass(frozen=True)
class BlockCheck:
    p: int
    width: int
    rank: int
    rank_ok: bool
    periodic_ok: bool


@dataclass(frozen=True)
class ValidationReport:
    N: int
    family: str
    blocks: tuple[BlockCheck, ...]
    rank: int
    full_rank: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "family": self.family,
            "rank": self.rank,
            "full_rank": self.full_rank,
            "passed": self.passed,
            "blocks": [vars(b) for b in self.blocks],
        }


def validate_npm(m: PeriodicBasisMatrix, tol: float = 1e-9) -> ValidationReport:
    """Check the three nested-periodic-matrix axioms: per-divisor block rank
    phi(p), overall full rank, and exact p-periodicity of every column."""
    checks = []
    n = np.arange(m.N)
    for p in divisors(m.N):
        rng = m.subspace_columns(p)
        block = m.entries[:, rng.start:rng.stop]
        r = matrix_rank(block)
        periodic = all(
            np.max(np.abs(block[:, j] - block[:, j][n % p])) <= tol * max(1.0, np.max(np.abs(block[:, j])))
            for j in range(block.shape[1])
        )
        checks.append(BlockCheck(p=p, width=block.shape[1], rank=r,
                                 rank_ok=(r == totient(p)), periodic_ok=periodic))
    rank = matrix_rank(m.entries)
    full = rank == m.N
    passed = full and all(c.rank_ok and c.periodic_ok for c in checks)
    return ValidationReport(N=m.N, family=m.family, blocks=tuple(checks),
                            rank=rank, full_rank=full, passed=passed)


def export_matrix_csv(m: PeriodicBasisMatrix, path) -> None:
    """Row-major CSV at full precision; complex entries as re+imj strings."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in m.entries:
            if np.iscomplexobj(m.entries):
                writer.writerow([repr(complex(v)) for v in row])
            else:
                writer.writerow([repr(float(v)) for v in row])


def matrix_metadata(m: PeriodicBasisMatrix) -> dict:
    return {
        "N": m.N,
        "family": m.family,
        "columns": [
            {"p": c.p, "k": c.k, "kind": c.kind, "shift": c.shift} for c in m.columns
        ],
    }


def export_matrix_metadata(m: PeriodicBasisMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_metadata(m), fh, indent=2, sort_keys=True)
        fh.write("\n")
