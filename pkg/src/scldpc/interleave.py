"""Bit interleavers between codeword order and channel order.

``permutation[k]`` is the channel position of codeword bit ``k``. Channel
sections are consecutive, equal-length runs of channel positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .codeconstruct import SCCodeSpec


class InterleaverError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InterleaverMap:
    permutation: np.ndarray
    n_sections: int
    mu: int
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        perm = np.asarray(self.permutation, dtype=np.int64)
        n = perm.size
        inv = np.full(n, -1, dtype=np.int64)
        if n and (perm.min() < 0 or perm.max() >= n):
            raise InterleaverError("permutation entries out of range")
        inv[perm] = np.arange(n)
        if (inv < 0).any():
            raise InterleaverError("permutation is not a bijection")
        if self.n_sections < 1 or n % self.n_sections:
            raise InterleaverError(f"{n} bits do not split into {self.n_sections} equal sections")
        perm.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "inverse", inv)

    @property
    def total_bits(self) -> int:
        return int(self.permutation.size)

    @property
    def section_len(self) -> int:
        return self.total_bits // self.n_sections

    @property
    def boundaries(self) -> np.ndarray:
        return np.arange(self.n_sections + 1) * self.section_len

    def section_of(self) -> np.ndarray:
        """Channel section of every codeword position."""
        return self.permutation // self.section_len

    def apply(self, x) -> np.ndarray:
        """Codeword order -> channel order."""
        x = np.asarray(x)
        if x.shape[-1] != self.total_bits:
            raise InterleaverError(f"expected {self.total_bits} values, got {x.shape[-1]}")
        out = np.empty_like(x)
        out[..., self.permutation] = x
        return out

    def invert(self, y) -> np.ndarray:
        """Channel order -> codeword order."""
        y = np.asarray(y)
        if y.shape[-1] != self.total_bits:
            raise InterleaverError(f"expected {self.total_bits} values, got {y.shape[-1]}")
        return y[..., self.permutation]

    def write(self, path) -> None:
        np.savetxt(path, self.permutation, fmt="%d")


def even_split(n: int, parts: int, rotate: int = 0) -> np.ndarray:
    """Sizes of ``parts`` chunks of ``n`` items differing by at most one.

    Chunk ``c`` gets one extra item when ``(c - rotate) % parts < n % parts``.
    """
    base, extra = divmod(n, parts)
    c = np.arange(parts)
    return base + (((c - rotate) % parts) < extra).astype(np.int64)


def identity_map(total_bits: int, n_sections: int) -> InterleaverMap:
    return InterleaverMap(np.arange(total_bits), n_sections, mu=n_sections)


def block_interleaver(N: int, n: int) -> InterleaverMap:
    """Regular interleaving of ``N`` codewords of length ``n`` over ``N`` sections.

    Codeword ``j`` is cut into ``N`` chunks and section ``s`` carries chunk
    ``s`` of every codeword, in codeword order. When ``N`` does not divide
    ``n`` the position of the larger chunks rotates with ``j`` so that every
    section still carries exactly ``n`` bits.
    """
    if N < 1 or n < 1:
        raise InterleaverError("N and n must be positive")
    sizes = np.stack([even_split(n, N, rotate=j) for j in range(N)])  # [codeword, chunk]
    starts_cw = np.concatenate([np.zeros((N, 1), dtype=np.int64), np.cumsum(sizes, axis=1)[:, :-1]], axis=1)
    # offset of chunk (j, s) inside section s
    offs_sec = np.concatenate([np.zeros((1, N), dtype=np.int64), np.cumsum(sizes, axis=0)[:-1, :]], axis=0)
    perm = np.empty(N * n, dtype=np.int64)
    for j in range(N):
        for s in range(N):
            size = sizes[j, s]
            src = j * n + starts_cw[j, s]
            dst = s * n + offs_sec[j, s]
            perm[src:src + size] = dst + np.arange(size)
    return InterleaverMap(perm, N, mu=N * N)


def _chunked_map(spec: SCCodeSpec, chunks_per_group: int, chunk_order) -> InterleaverMap:
    """Lay chunks ``(g, c)`` out in channel order given by ``chunk_order``."""
    L = spec.L
    group_len = spec.kappa * spec.z
    sizes = even_split(group_len, chunks_per_group)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    perm = np.empty(L * group_len, dtype=np.int64)
    pos = 0
    for g, c in chunk_order:
        size = sizes[c]
        src = g * group_len + starts[c]
        perm[src:src + size] = pos + np.arange(size)
        pos += size
    return InterleaverMap(perm, L, mu=L * chunks_per_group)


def sc_interleaver(spec: SCCodeSpec, chunks_per_group: int | None = None) -> InterleaverMap:
    """Chunk interleaver for SC codewords.

    The codeword is cut into ``L`` groups (one per replica), each group into
    ``C = L/(m+1)`` chunks. Chunk ``(g, c)`` goes to section
    ``(g + c(m+1)) mod L``; inside a section chunks are ordered by ``c``.
    Any ``m + 1`` consecutive replicas thereby reach every section.
    """
    L, step = spec.L, spec.m + 1
    if L % step:
        raise InterleaverError(f"m+1 = {step} must divide L = {L}")
    C = L // step if chunks_per_group is None else chunks_per_group
    if C * step != L:
        raise InterleaverError("the helical layout needs exactly L/(m+1) chunks per group")
    if spec.kappa * spec.z < C:
        raise InterleaverError(f"a group of {spec.kappa * spec.z} bits cannot fill {C} chunks")
    order = []
    for s in range(L):
        for c in range(C):
            order.append(((s - c * step) % L, c))
    return _chunked_map(spec, C, order)


def round_robin_interleaver(spec: SCCodeSpec, chunks_per_group: int | None = None) -> InterleaverMap:
    """Take chunk ``c`` of groups ``0..L-1`` in turn: chunk ``(g, c)`` lands at slot ``c*L + g``.

    Kept as a reference layout; for ``m >= 1`` it leaves interior checks
    short of full section coverage.
    """
    L = spec.L
    if chunks_per_group is None:
        if L % (spec.m + 1):
            raise InterleaverError(f"m+1 = {spec.m + 1} must divide L = {L}")
        chunks_per_group = L // (spec.m + 1)
    order = [(g, c) for c in range(chunks_per_group) for g in range(L)]
    return _chunked_map(spec, chunks_per_group, order)


@dataclass(frozen=True)
class CoverageReport:
    passed: bool
    mu: int
    nu: float
    sections: dict  # interior row-group -> sorted tuple of sections reached
    missing: dict  # row-groups that fail -> sections not reached

    def summary(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"coverage: {status} (mu={self.mu}, nu={self.nu:g}, failing row-groups={len(self.missing)})"


def verify_coverage(imap: InterleaverMap, spec: SCCodeSpec) -> CoverageReport:
    """Check that every interior check row-group sees all ``L`` sections.

    Row-group ``r`` (``m <= r <= L-1``) touches replicas ``r-m .. r``.
    """
    if imap.total_bits != spec.length:
        raise InterleaverError(f"map covers {imap.total_bits} bits, code has {spec.length}")
    group_len = spec.kappa * spec.z
    sec = imap.section_of().reshape(spec.L, group_len)
    per_replica = [frozenset(np.unique(row).tolist()) for row in sec]
    everything = frozenset(range(imap.n_sections))
    sections, missing = {}, {}
    for r in range(spec.m, spec.L):
        seen = frozenset().union(*per_replica[r - spec.m:r + 1])
        sections[r] = tuple(sorted(seen))
        if seen != everything:
            missing[r] = tuple(sorted(everything - seen))
    nu = imap.mu * (spec.m + 1) / spec.L
    return CoverageReport(not missing, imap.mu, nu, sections, missing)
