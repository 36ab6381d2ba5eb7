"""Circulant-based block codes, partitioning into components, and SC assembly.

Matrices are kept sparse: a :class:`SparseParityMatrix` stores the edge set in
both CSR (row-major) and CSC (column-major) orientation so that decoding can
walk check nodes and analysis can walk variable nodes without conversion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np


class CodeSpecError(ValueError):
    """Raised for inconsistent code parameters."""


@dataclass(frozen=True, eq=False)
class SparseParityMatrix:
    """Binary parity-check matrix in adjacency form.

    ``row_ptr``/``col_idx`` is the CSR view and ``col_ptr``/``row_idx`` the
    CSC view of the same edge set. ``edge_of_csc[k]`` is the CSR edge index of
    the k-th CSC entry, which lets message arrays be shared between views.
    """

    rows: int
    cols: int
    row_ptr: np.ndarray
    col_idx: np.ndarray
    col_ptr: np.ndarray
    row_idx: np.ndarray
    edge_of_csc: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, rows: int, cols: int, r, c) -> "SparseParityMatrix":
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if r.size:
            if r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols:
                raise CodeSpecError("edge index out of range")
        order = np.lexsort((c, r))
        r, c = r[order], c[order]
        if r.size > 1:
            dup = (r[1:] == r[:-1]) & (c[1:] == c[:-1])
            if dup.any():
                raise CodeSpecError("duplicate entries in parity-check matrix")
        row_ptr = np.zeros(rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(r, minlength=rows), out=row_ptr[1:])
        csc = np.lexsort((r, c))
        col_ptr = np.zeros(cols + 1, dtype=np.int64)
        np.cumsum(np.bincount(c, minlength=cols), out=col_ptr[1:])
        arrays = dict(
            row_ptr=row_ptr,
            col_idx=c.astype(np.int64),
            col_ptr=col_ptr,
            row_idx=r[csc].astype(np.int64),
            edge_of_csc=csc.astype(np.int64),
        )
        for a in arrays.values():
            a.setflags(write=False)
        return cls(rows=rows, cols=cols, **arrays)

    @classmethod
    def from_dense(cls, dense) -> "SparseParityMatrix":
        dense = np.asarray(dense)
        if dense.ndim != 2:
            raise CodeSpecError("dense matrix must be 2-D")
        if not np.isin(dense, (0, 1)).all():
            raise CodeSpecError("matrix must be binary")
        r, c = np.nonzero(dense)
        return cls.from_edges(dense.shape[0], dense.shape[1], r, c)

    @property
    def nnz(self) -> int:
        return int(self.col_idx.size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def row_adjacency(self) -> list[np.ndarray]:
        return [self.col_idx[self.row_ptr[i]:self.row_ptr[i + 1]] for i in range(self.rows)]

    @property
    def col_adjacency(self) -> list[np.ndarray]:
        return [self.row_idx[self.col_ptr[j]:self.col_ptr[j + 1]] for j in range(self.cols)]

    def row_weights(self) -> np.ndarray:
        return np.diff(self.row_ptr)

    def col_weights(self) -> np.ndarray:
        return np.diff(self.col_ptr)

    def edge_rows(self) -> np.ndarray:
        """Row index of every CSR edge."""
        return np.repeat(np.arange(self.rows), self.row_weights())

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        out[self.edge_rows(), self.col_idx] = 1
        return out

    def to_scipy(self):
        from scipy.sparse import csr_matrix

        data = np.ones(self.nnz, dtype=np.int64)
        return csr_matrix((data, self.col_idx, self.row_ptr), shape=self.shape)

    def __eq__(self, other):
        if not isinstance(other, SparseParityMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row_ptr, other.row_ptr)
            and np.array_equal(self.col_idx, other.col_idx)
        )

    __hash__ = None

    def write_triplets(self, path) -> None:
        """Write ``rows cols nnz`` followed by one ``row col`` line per entry."""
        rows = self.edge_rows()
        with open(path, "w") as fh:
            fh.write(f"{self.rows} {self.cols} {self.nnz}\n")
            for r, c in zip(rows.tolist(), self.col_idx.tolist()):
                fh.write(f"{r} {c}\n")

    @classmethod
    def read_triplets(cls, path) -> "SparseParityMatrix":
        with open(path) as fh:
            header = fh.readline().split()
            if len(header) != 3:
                raise CodeSpecError("triplet header must be 'rows cols nnz'")
            rows, cols, nnz = map(int, header)
            body = np.loadtxt(fh, dtype=np.int64, ndmin=2)
        if body.size == 0:
            body = body.reshape(0, 2)
        if body.shape[0] != nnz or body.shape[1] != 2:
            raise CodeSpecError(f"expected {nnz} 'row col' lines, got {body.shape[0]}")
        return cls.from_edges(rows, cols, body[:, 0], body[:, 1])


@dataclass(frozen=True, eq=False)
class SCCodeSpec:
    """Parameters of a (possibly uncoupled) circulant-based SC code.

    A block code is the special case ``m = 0, L = 1`` with an all-zero
    partitioning matrix. ``pm`` and ``cp`` are ``gamma x kappa`` integer grids.
    """

    gamma: int
    kappa: int
    z: int
    m: int
    L: int
    pm: np.ndarray
    cp: np.ndarray
    name: str = ""

    def __post_init__(self):
        pm = np.array(self.pm, dtype=np.int64)
        cp = np.array(self.cp, dtype=np.int64)
        object.__setattr__(self, "pm", pm)
        object.__setattr__(self, "cp", cp)
        pm.setflags(write=False)
        cp.setflags(write=False)
        if self.gamma < 2 or self.kappa < self.gamma:
            raise CodeSpecError("need gamma >= 2 and kappa >= gamma")
        if self.z < 1 or self.m < 0 or self.L < 1:
            raise CodeSpecError("need z >= 1, m >= 0, L >= 1")
        shape = (self.gamma, self.kappa)
        if pm.shape != shape or cp.shape != shape:
            raise CodeSpecError(f"pm and cp must both be {shape}, got {pm.shape} and {cp.shape}")
        if pm.min() < 0 or pm.max() > self.m:
            raise CodeSpecError(f"partitioning entries must lie in [0, {self.m}]")
        if cp.min() < 0 or cp.max() >= self.z:
            raise CodeSpecError(f"circulant powers must lie in [0, {self.z})")

    @property
    def is_block(self) -> bool:
        return self.m == 0 and self.L == 1

    @property
    def block_length(self) -> int:
        return self.kappa * self.z

    @property
    def length(self) -> int:
        return self.L * self.kappa * self.z

    @property
    def n_checks(self) -> int:
        return (self.L + self.m) * self.gamma * self.z

    def __eq__(self, other):
        if not isinstance(other, SCCodeSpec):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    def replace(self, **changes) -> "SCCodeSpec":
        fields = dict(
            gamma=self.gamma, kappa=self.kappa, z=self.z, m=self.m, L=self.L,
            pm=self.pm, cp=self.cp, name=self.name,
        )
        fields.update(changes)
        return SCCodeSpec(**fields)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "kappa": self.kappa,
            "z": self.z,
            "m": self.m,
            "L": self.L,
            "pm": self.pm.tolist(),
            "cp": self.cp.tolist(),
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SCCodeSpec":
        known = {"gamma", "kappa", "z", "m", "L", "pm", "cp", "name"}
        extra = set(d) - known
        if extra:
            raise CodeSpecError(f"unknown spec fields: {sorted(extra)}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SCCodeSpec":
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "SCCodeSpec":
        return cls.from_json(Path(path).read_text())


def block_spec(gamma, kappa, z, cp, name="") -> SCCodeSpec:
    """Uncoupled block code as an :class:`SCCodeSpec` with ``m=0, L=1``."""
    return SCCodeSpec(gamma, kappa, z, 0, 1, np.zeros((gamma, kappa), dtype=int), cp, name)


def circulant(z: int, power: int) -> np.ndarray:
    """Dense ``sigma**power``: row r has its one in column ``(r + power) % z``."""
    out = np.zeros((z, z), dtype=np.uint8)
    out[np.arange(z), (np.arange(z) + power) % z] = 1
    return out


def lift(Hp, powers, z: int) -> SparseParityMatrix:
    """Replace every 1 of a protograph by ``sigma**power`` and every 0 by zeros."""
    Hp = np.asarray(Hp)
    powers = np.asarray(powers, dtype=np.int64)
    if powers.shape != Hp.shape:
        raise CodeSpecError("power grid must match the protograph shape")
    bi, bj = np.nonzero(Hp)
    f = powers[bi, bj] % z
    r = np.arange(z)
    rows = (bi[:, None] * z + r[None, :]).ravel()
    cols = (bj[:, None] * z + (r[None, :] + f[:, None]) % z).ravel()
    return SparseParityMatrix.from_edges(Hp.shape[0] * z, Hp.shape[1] * z, rows, cols)


def build_block_matrix(kappa: int, gamma: int, z: int, cp) -> SparseParityMatrix:
    cp = np.asarray(cp, dtype=np.int64)
    if z < 1:
        raise CodeSpecError("z must be positive")
    if cp.shape != (gamma, kappa):
        raise CodeSpecError(f"circulant power matrix must be {(gamma, kappa)}, got {cp.shape}")
    if cp.size and (cp.min() < 0 or cp.max() >= z):
        raise CodeSpecError(f"circulant powers must lie in [0, {z})")
    return lift(np.ones((gamma, kappa), dtype=np.uint8), cp, z)


def split_components(Hp, pm, m: int | None = None) -> list[np.ndarray]:
    """Split a protograph into ``m + 1`` disjoint components selected by ``pm``."""
    Hp = np.asarray(Hp)
    pm = np.asarray(pm, dtype=np.int64)
    if pm.shape != Hp.shape:
        raise CodeSpecError("partitioning matrix must match the protograph shape")
    if m is None:
        m = int(pm.max()) if pm.size else 0
    if pm.size and (pm.min() < 0 or pm.max() > m):
        raise CodeSpecError(f"partitioning entries must lie in [0, {m}]")
    return [((pm == y) & (Hp != 0)).astype(np.uint8) for y in range(m + 1)]


def sc_protograph(spec: SCCodeSpec) -> np.ndarray:
    """The ``gamma(L+m) x kappa L`` protograph of the coupled code."""
    g, k = spec.gamma, spec.kappa
    comps = split_components(np.ones((g, k), dtype=np.uint8), spec.pm, spec.m)
    out = np.zeros((g * (spec.L + spec.m), k * spec.L), dtype=np.uint8)
    for r in range(spec.L):
        for y, comp in enumerate(comps):
            out[(r + y) * g:(r + y + 1) * g, r * k:(r + 1) * k] |= comp
    return out


def sc_power_grid(spec: SCCodeSpec) -> np.ndarray:
    """Circulant powers aligned with :func:`sc_protograph` (zero where empty).

    Every replica reuses the block code's powers.
    """
    g, k = spec.gamma, spec.kappa
    out = np.zeros((g * (spec.L + spec.m), k * spec.L), dtype=np.int64)
    for r in range(spec.L):
        for i in range(g):
            for j in range(k):
                y = spec.pm[i, j]
                out[(r + y) * g + i, r * k + j] = spec.cp[i, j]
    return out


def assemble_sc(spec: SCCodeSpec) -> SparseParityMatrix:
    return lift(sc_protograph(spec), sc_power_grid(spec), spec.z)


def design_rate(gamma: int, kappa: int, m: int, L: int | None) -> Fraction:
    """``1 - (L+m) gamma / (L kappa)``; ``L=None`` gives the uncoupled limit."""
    if kappa <= 0:
        raise CodeSpecError("kappa must be positive")
    if L is None:
        return 1 - Fraction(gamma, kappa)
    if L < 1:
        raise CodeSpecError("L must be >= 1")
    return 1 - Fraction((L + m) * gamma, L * kappa)


def read_grid(path) -> np.ndarray:
    """Whitespace-separated integer grid, one matrix row per line."""
    grid = np.loadtxt(path, dtype=np.int64, ndmin=2)
    return grid


def write_grid(path, grid) -> None:
    grid = np.asarray(grid, dtype=np.int64)
    with open(path, "w") as fh:
        for row in grid:
            fh.write(" ".join(str(v) for v in row) + "\n")
