"""Minimum-overlap (MO) partitioning of a protograph into component matrices.

The overlap of two rows is the number of columns where both are nonzero.
For a component ``y`` the overlap ``t_y`` is the worst row pair, and the
overall overlap of a partitioning is ``max_y t_y``.

For balanced partitionings with ``gamma = 2(m+1)`` (two entries of every
column per component) the optimum is ``ceil(kappa / C(gamma, 2))``; it is
achieved by stripes of ``C(gamma, 2)`` columns in which every component uses
each row pair exactly once.
"""

from __future__ import annotations

import math
from itertools import combinations, combinations_with_replacement, permutations

import numpy as np

from .codeconstruct import split_components


class PartitionError(ValueError):
    pass


class SearchBudgetExceeded(PartitionError):
    pass


def pairwise_overlap(component) -> int:
    comp = np.asarray(component, dtype=np.int64)
    if comp.ndim != 2 or comp.shape[0] < 2:
        return 0
    gram = comp @ comp.T
    iu = np.triu_indices(comp.shape[0], k=1)
    return int(gram[iu].max())


def overall_overlap(pm, m: int | None = None) -> int:
    pm = np.asarray(pm, dtype=np.int64)
    if m is None:
        m = int(pm.max()) if pm.size else 0
    comps = split_components(np.ones_like(pm), pm, m)
    return max(pairwise_overlap(c) for c in comps)


def tmin(kappa: int, gamma: int) -> int:
    """Minimum overall overlap for a balanced ``gamma = 2(m+1)`` partitioning."""
    if gamma % 2:
        raise PartitionError("tmin is defined for even gamma = 2(m+1)")
    return -(-kappa // math.comb(gamma, 2))


def is_balanced(pm, m: int) -> bool:
    """Every column holds each label ``0..m`` exactly twice."""
    pm = np.asarray(pm)
    return all(((pm == y).sum(axis=0) == 2).all() for y in range(m + 1))


def stripes(kappa: int, gamma: int) -> list[slice]:
    w = math.comb(gamma, 2)
    return [slice(s, min(s + w, kappa)) for s in range(0, kappa, w)]


def _colex_pairs(n: int) -> list[tuple[int, int]]:
    return sorted(combinations(range(n), 2), key=lambda p: (p[1], p[0]))


def _first_stripe_gamma4() -> list[tuple[tuple[int, ...], ...]]:
    # one distinct O_0 per column; the complement O_1 is then distinct too
    out = []
    for p in _colex_pairs(4):
        out.append((p, tuple(sorted(set(range(4)) - set(p)))))
    return out


def _first_stripe_gamma6() -> list[tuple[tuple[int, ...], ...]]:
    """Sequential choice of O_{0+1}, then O_0, keeping all sets distinct.

    At each column the candidate 4-subset leaving the most valid O_0 choices
    is tried first (ties: lexicographic). Plain greedy can paint itself into
    a corner, so tied and lower-ranked alternatives are revisited by
    backtracking; the first completed stripe is returned.
    """
    rows = range(6)
    quads = list(combinations(rows, 4))

    def valid_o0(quad, used0, used1):
        res = []
        for p in combinations(quad, 2):
            q = tuple(x for x in quad if x not in p)
            if p not in used0 and q not in used1:
                res.append((p, q))
        return res

    def search(seq, used01, used0, used1):
        if len(seq) == 15:
            return seq
        ranked = []
        for quad in quads:
            if quad in used01:
                continue
            ranked.append((quad, valid_o0(quad, used0, used1)))
        ranked.sort(key=lambda t: (-len(t[1]), t[0]))
        for quad, opts in ranked:
            rest = tuple(x for x in rows if x not in quad)
            for p, q in opts:
                found = search(seq + [(p, q, rest)], used01 | {quad}, used0 | {p}, used1 | {q})
                if found is not None:
                    return found
        return None

    result = search([], frozenset(), frozenset(), frozenset())
    assert result is not None
    return result


def _stripe_matrix(sets, gamma: int) -> np.ndarray:
    out = np.empty((gamma, len(sets)), dtype=np.int64)
    for col, groups in enumerate(sets):
        for y, rows in enumerate(groups):
            out[list(rows), col] = y
    return out


def mo_construct(kappa: int, m: int, seed: int | None = None) -> np.ndarray:
    """Balanced MO partitioning matrix (``2(m+1) x kappa``) for ``m`` in {1, 2}.

    Stripes after the first are column permutations of it (identity unless
    ``seed`` is given); the last stripe is a prefix of the permuted stripe.
    """
    if kappa < 1:
        raise PartitionError("kappa must be >= 1")
    if m == 1:
        first = _stripe_matrix(_first_stripe_gamma4(), 4)
    elif m == 2:
        first = _stripe_matrix(_first_stripe_gamma6(), 6)
    else:
        raise PartitionError(f"mo_construct supports m in {{1, 2}}, got {m}")
    gamma = 2 * (m + 1)
    rng = np.random.default_rng(seed) if seed is not None else None
    blocks = []
    for k, sl in enumerate(stripes(kappa, gamma)):
        stripe = first
        if rng is not None and k > 0:
            stripe = first[:, rng.permutation(first.shape[1])]
        blocks.append(stripe[:, : sl.stop - sl.start])
    return np.concatenate(blocks, axis=1)


def _column_types(gamma: int, balance_counts) -> list[tuple[int, ...]]:
    labels = []
    for y, cnt in enumerate(balance_counts):
        labels.extend([y] * cnt)
    return sorted(set(permutations(labels)))


def mo_search_bruteforce(kappa: int, gamma: int, m: int, balance_counts, budget: int = 2_000_000):
    """Exhaustive minimum overall overlap over balanced partitionings.

    Overlap is invariant under column permutation, so the search runs over
    multisets of column types. Returns ``(t_star, pm)`` with one optimal
    witness. Raises :class:`SearchBudgetExceeded` if the number of
    multisets exceeds ``budget``.
    """
    balance_counts = tuple(int(c) for c in balance_counts)
    if len(balance_counts) != m + 1 or sum(balance_counts) != gamma or min(balance_counts) < 0:
        raise PartitionError("balance_counts must give m+1 non-negative counts summing to gamma")
    types = _column_types(gamma, balance_counts)
    n_multisets = math.comb(len(types) + kappa - 1, kappa)
    if n_multisets > budget:
        raise SearchBudgetExceeded(f"{n_multisets} candidate partitionings exceed budget {budget}")

    pairs = list(combinations(range(gamma), 2))
    # indicator[t, y, p]: column type t puts both rows of pair p into component y
    ind = np.zeros((len(types), m + 1, len(pairs)), dtype=np.int64)
    for t, col in enumerate(types):
        for p, (a, b) in enumerate(pairs):
            if col[a] == col[b]:
                ind[t, col[a], p] = 1
    ind = ind.reshape(len(types), -1)

    best_t, best = None, None
    for combo in combinations_with_replacement(range(len(types)), kappa):
        t = int(ind[list(combo)].sum(axis=0).max())
        if best_t is None or t < best_t:
            best_t, best = t, combo
            if t == 0:
                break
    pm = np.array([types[t] for t in best], dtype=np.int64).T
    return best_t, pm
