"""Short-cycle and (3, 3(gamma-2)) object counting, and a greedy power optimizer."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .codeconstruct import (
    SCCodeSpec,
    SparseParityMatrix,
    assemble_sc,
    sc_power_grid,
    sc_protograph,
)


@dataclass(frozen=True)
class ObjectCount:
    name: str
    z: int
    cycles6: int
    as_count: int
    a: int = 3
    b: int = 3


def _check_neighbour_sets(H: SparseParityMatrix) -> list[frozenset]:
    return [frozenset(r.tolist()) for r in H.row_adjacency]


def count_6cycles(H: SparseParityMatrix) -> int:
    """Number of 6-cycles in the Tanner graph of ``H``.

    Works on unordered check triples {c1, c2, c3}: with ``A, B, C`` the
    variable sets shared by each check pair and ``T`` the set shared by all
    three, the number of ways to pick three distinct variables, one per pair,
    is ``|A||B||C| - |T|(|A|+|B|+|C|) + 2|T|``.
    """
    S = H.to_scipy()
    gram = (S @ S.T).tocsr()
    gram.setdiag(0)
    gram.eliminate_zeros()
    nbr = _check_neighbour_sets(H)
    adj = [dict(zip(gram.indices[gram.indptr[i]:gram.indptr[i + 1]].tolist(),
                    gram.data[gram.indptr[i]:gram.indptr[i + 1]].tolist()))
           for i in range(H.rows)]
    total = 0
    for c1 in range(H.rows):
        later = sorted(c for c in adj[c1] if c > c1)
        for idx, c2 in enumerate(later):
            a = adj[c1][c2]
            n12 = nbr[c1] & nbr[c2]
            for c3 in later[idx + 1:]:
                b = adj[c2].get(c3)
                if not b:
                    continue
                c = adj[c1][c3]
                t = len(n12 & nbr[c3])
                total += a * b * c - t * (a + b + c) + 2 * t
    return total


def _protograph_cycles(Hp) -> np.ndarray:
    """All protograph 6-cycles as rows ``(i1, jA, i2, jB, i3, jC)``.

    Rows satisfy ``i1 < i2 < i3``; ``jA`` joins i1-i2, ``jB`` i2-i3 and ``jC``
    i3-i1, all distinct. Each undirected cycle appears once.
    """
    Hp = np.asarray(Hp).astype(bool)
    n_rows = Hp.shape[0]
    common = {}
    for a, b in combinations(range(n_rows), 2):
        cols = np.flatnonzero(Hp[a] & Hp[b])
        if cols.size:
            common[a, b] = cols
    out = []
    for i1, i2, i3 in combinations(range(n_rows), 3):
        A = common.get((i1, i2))
        if A is None:
            continue
        B = common.get((i2, i3))
        if B is None:
            continue
        C = common.get((i1, i3))
        if C is None:
            continue
        ja, jb, jc = np.meshgrid(A, B, C, indexing="ij")
        ja, jb, jc = ja.ravel(), jb.ravel(), jc.ravel()
        keep = (ja != jb) & (jb != jc) & (ja != jc)
        k = int(keep.sum())
        if k:
            out.append(np.column_stack([
                np.full(k, i1), ja[keep], np.full(k, i2), jb[keep], np.full(k, i3), jc[keep],
            ]))
    if not out:
        return np.zeros((0, 6), dtype=np.int64)
    return np.concatenate(out).astype(np.int64)


def _cycle_power_sums(cycles: np.ndarray, powers: np.ndarray) -> np.ndarray:
    i1, ja, i2, jb, i3, jc = cycles.T
    return (powers[i1, ja] - powers[i2, ja] + powers[i2, jb]
            - powers[i3, jb] + powers[i3, jc] - powers[i1, jc])


def count_6cycles_lifted(Hp, powers, z: int) -> int:
    """6-cycles of the lift of ``Hp`` by ``powers`` (a grid of Hp's shape).

    A protograph 6-cycle lifts to ``z`` cycles of length 6 when its
    alternating power sum vanishes mod ``z`` and to none otherwise.
    """
    Hp = np.asarray(Hp)
    powers = np.asarray(powers, dtype=np.int64)
    if powers.shape != Hp.shape:
        raise ValueError("power grid must match the protograph shape")
    cycles = _protograph_cycles(Hp)
    if cycles.size == 0:
        return 0
    return z * int(np.count_nonzero(_cycle_power_sums(cycles, powers) % z == 0))


def count_as3(H: SparseParityMatrix, gamma: int, absorbing_only: bool = True) -> int:
    """Count elementary (3, 3(gamma-2)) objects of a column-weight-``gamma`` code.

    A variable triple qualifies when each of its three pairs shares exactly one
    check, those three checks are distinct, and no check touches all three.
    Such a triple is an absorbing set only when every variable sees more
    degree-2 than degree-1 checks (2 > gamma - 2, i.e. gamma == 3); with
    ``absorbing_only`` the count is therefore zero for gamma >= 4, otherwise
    the trapping-set configuration is counted for any gamma.
    """
    w = H.col_weights()
    if w.size and (w != gamma).any():
        raise ValueError(f"count_as3 needs column weight {gamma} everywhere")
    if absorbing_only and not 2 > gamma - 2:
        return 0
    S = H.to_scipy().tocsc()
    vv = (S.T @ S).tocsr()
    vv.setdiag(0)
    vv.eliminate_zeros()
    cols = [frozenset(c.tolist()) for c in H.col_adjacency]
    # keep only variable pairs sharing exactly one check
    single = []
    for u in range(H.cols):
        lo, hi = vv.indptr[u], vv.indptr[u + 1]
        single.append(set(vv.indices[lo:hi][vv.data[lo:hi] == 1].tolist()))
    total = 0
    for v1 in range(H.cols):
        later = sorted(v for v in single[v1] if v > v1)
        for idx, v2 in enumerate(later):
            c12 = cols[v1] & cols[v2]
            for v3 in later[idx + 1:]:
                if v3 not in single[v2]:
                    continue
                c13 = cols[v1] & cols[v3]
                c23 = cols[v2] & cols[v3]
                if len(c12 | c13 | c23) == 3:
                    total += 1
    return total


def analyze(spec: SCCodeSpec, H: SparseParityMatrix | None = None) -> ObjectCount:
    if H is None:
        H = assemble_sc(spec)
    cycles = count_6cycles_lifted(sc_protograph(spec), sc_power_grid(spec), spec.z)
    as3 = count_as3(H, spec.gamma, absorbing_only=False)
    return ObjectCount(spec.name, spec.z, cycles, as3, 3, 3 * (spec.gamma - 2))


def _block_index_grid(spec: SCCodeSpec) -> np.ndarray:
    """For each SC protograph entry, the flat index ``i*kappa + j`` of its block circulant."""
    g, k = spec.gamma, spec.kappa
    out = np.full((g * (spec.L + spec.m), k * spec.L), -1, dtype=np.int64)
    for r in range(spec.L):
        for i in range(g):
            for j in range(k):
                out[(r + spec.pm[i, j]) * g + i, r * k + j] = i * k + j
    return out


def cpo_lite(spec: SCCodeSpec, objective: str = "cycles6", max_rounds: int = 10,
             seed: int | None = 0, trace: list | None = None) -> np.ndarray:
    """Greedy coordinate descent over circulant powers.

    Each sweep visits the block circulants in a seeded random order and moves
    each one to the power minimising ``objective`` on the coupled graph
    (keeping the current power on ties). Stops after a sweep without
    improvement or after ``max_rounds`` sweeps. If ``trace`` is a list, the
    initial objective and the value after every sweep are appended to it.
    """
    if objective not in ("cycles6", "as3"):
        raise ValueError("objective must be 'cycles6' or 'as3'")
    rng = np.random.default_rng(seed)
    cp = spec.cp.copy()
    z = spec.z

    if objective == "cycles6":
        cycles = _protograph_cycles(sc_protograph(spec))
        idx = _block_index_grid(spec)
        i1, ja, i2, jb, i3, jc = cycles.T
        terms = np.stack([idx[i1, ja], idx[i2, ja], idx[i2, jb],
                          idx[i3, jb], idx[i3, jc], idx[i1, jc]], axis=1)
        signs = np.array([1, -1, 1, -1, 1, -1])

        def evaluate(flat):
            if terms.size == 0:
                return 0
            return z * int(np.count_nonzero((flat[terms] * signs).sum(axis=1) % z == 0))
    else:
        def evaluate(flat):
            H = assemble_sc(spec.replace(cp=flat.reshape(cp.shape)))
            return count_as3(H, spec.gamma, absorbing_only=False)

    flat = cp.ravel()
    current = evaluate(flat)
    if trace is not None:
        trace.append(current)
    for _ in range(max_rounds):
        improved = False
        for pos in rng.permutation(flat.size):
            keep = flat[pos]
            best_val, best_pow = current, keep
            for p in range(z):
                if p == keep:
                    continue
                flat[pos] = p
                val = evaluate(flat)
                if val < best_val:
                    best_val, best_pow = val, p
            flat[pos] = best_pow
            if best_val < current:
                current = best_val
                improved = True
        if trace is not None:
            trace.append(current)
        if not improved:
            break
    return flat.reshape(cp.shape)
