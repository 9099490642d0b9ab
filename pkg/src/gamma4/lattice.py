"""Embeddings of definite integral lattices into diagonal lattices.

Problems are stated for a negative definite Gram matrix ``G`` embedding into
``(Z^N, -Id)``: find an integer ``r x N`` matrix ``M`` with ``-M M^T = G``.
A positive definite input is negated first, which describes the same
question for ``(Z^N, +Id)``.

The search places the images of the basis vectors one at a time.  For each
new vector, the coordinates already touched by earlier images are solved
for exactly (integer kernel plus ellipsoid enumeration); untouched
coordinates are interchangeable under signed permutations, so only sorted
positive fillings of them are tried.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._accel import enumerate_ellipsoid
from .goeritz import NEGATIVE, POSITIVE, definiteness

__all__ = [
    "EMBEDDABLE",
    "NOT_EMBEDDABLE",
    "RESOURCE_EXHAUSTED",
    "NotDefinite",
    "NonSymmetric",
    "EmbeddingProblem",
    "EmbeddingResult",
    "SmithForm",
    "square_divisors",
    "embed",
    "embeds",
    "direct_sum",
    "smith_normal_form",
    "cokernel_orders",
]

EMBEDDABLE, NOT_EMBEDDABLE, RESOURCE_EXHAUSTED = "embeddable", "not_embeddable", "resource_exhausted"

DEFAULT_NODE_CAP = 10**9


class NonSymmetric(ValueError):
    pass


class NotDefinite(ValueError):
    pass


def square_divisors(d: int) -> list[int]:
    """Divisors ``l`` of ``d`` with ``d / l`` a perfect square, ascending."""
    if d < 1:
        raise ValueError("need a positive integer")
    out = []
    k = 1
    while k * k <= d:
        if d % (k * k) == 0:
            out.append(d // (k * k))
        k += 1
    return sorted(out)


def direct_sum(gram, *diag: int) -> np.ndarray:
    g = np.asarray(gram, dtype=np.int64)
    r = g.shape[0]
    out = np.zeros((r + len(diag), r + len(diag)), dtype=np.int64)
    out[:r, :r] = g
    for k, v in enumerate(diag):
        out[r + k, r + k] = v
    return out


@dataclass(frozen=True)
class EmbeddingProblem:
    gram: np.ndarray
    target_rank: int
    negated: bool = False

    @classmethod
    def build(cls, gram, target_rank: int) -> "EmbeddingProblem":
        g = np.asarray(gram, dtype=np.int64)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise NonSymmetric("Gram matrix must be square")
        if not np.array_equal(g, g.T):
            raise NonSymmetric("Gram matrix is not symmetric")
        cls_ = definiteness(g)
        if cls_ == POSITIVE:
            return cls(-g, target_rank, True)
        if cls_ != NEGATIVE:
            raise NotDefinite(f"Gram matrix is {cls_}")
        return cls(g, target_rank, False)

    @property
    def rank(self) -> int:
        return self.gram.shape[0]


@dataclass
class EmbeddingResult:
    status: str
    witness: np.ndarray | None = None
    nodes_searched: int = 0
    problem: EmbeddingProblem | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.status == EMBEDDABLE:
            M = np.asarray(self.witness, dtype=object)
            if self.problem is not None and not np.array_equal(-(M @ M.T), self.problem.gram.astype(object)):
                raise AssertionError("witness does not reproduce the Gram matrix")

    @property
    def embeddable(self) -> bool:
        return self.status == EMBEDDABLE


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``left @ m @ right == D`` with ``D`` diagonal, entries ``diagonal``."""

    diagonal: tuple[int, ...]
    left: np.ndarray
    right: np.ndarray

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 1)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m) -> SmithForm:
    """Smith normal form over the integers with both unimodular transforms.

    Works for rectangular input; diagonal entries are nonnegative and each
    divides the next.
    """
    a = [[int(v) for v in row] for row in np.asarray(m, dtype=object).tolist()]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst -= q * col src
        if q:
            for row in a:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            piv = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                add_row(t, i, a[i][t] // p)
                clean &= a[i][t] == 0
            for j in range(t + 1, cols):
                add_col(t, j, a[t][j] // p)
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, -1)
        if t < rows and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithForm(diag, np.array(U, dtype=object).reshape(rows, rows),
                     np.array(V, dtype=object).reshape(cols, cols))


def cokernel_orders(m) -> tuple[int, ...]:
    """Invariant factors (> 1) of ``Z^n / m Z^n``; 0 marks a free summand."""
    snf = smith_normal_form(m)
    n = np.asarray(m).shape[0]
    diag = list(snf.diagonal) + [0] * (n - len(snf.diagonal))
    return tuple(d for d in diag if d != 1)


# -- embedding search --------------------------------------------------------


@lru_cache(maxsize=None)
def _square_fillings(s: int, slots: int, cap: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Nonincreasing positive tuples of length <= slots whose squares sum to s."""
    if s == 0:
        return ((),)
    if slots == 0:
        return ()
    top = math.isqrt(s) if cap is None else min(cap, math.isqrt(s))
    out = []
    for x in range(top, 0, -1):
        for rest in _square_fillings(s - x * x, slots - 1, x):
            out.append((x,) + rest)
    return tuple(out)


def _solve_affine(P, c, m, bound):
    """Integer ``u`` in ``Z^m`` with ``P u = c`` and ``|u|^2 <= bound``."""
    k = len(P)
    if m == 0:
        return [()] if all(v == 0 for v in c) else []
    if k == 0:
        u0 = [0] * m
        K = _identity(m)
        free = m
    else:
        snf = smith_normal_form(P)
        Uc = [sum(int(snf.left[i, j]) * c[j] for j in range(k)) for i in range(k)]
        rank = sum(1 for d in snf.diagonal if d)
        if any(Uc[i] for i in range(rank, k)):
            return []
        y = []
        for i in range(rank):
            d = snf.diagonal[i]
            if Uc[i] % d:
                return []
            y.append(Uc[i] // d)
        V = snf.right
        u0 = [sum(int(V[r, i]) * y[i] for i in range(rank)) for r in range(m)]
        free = m - rank
        K = [[int(V[r, rank + j]) for j in range(free)] for r in range(m)]
    if free == 0:
        return [tuple(u0)] if sum(x * x for x in u0) <= bound else []
    Kf = np.array(K, dtype=np.float64)
    u0f = np.array(u0, dtype=np.float64)
    Q = Kf.T @ Kf
    b = Kf.T @ u0f
    center = -np.linalg.solve(Q, b)
    slack = bound - float(u0f @ u0f) + float(b @ -center)
    R = np.linalg.cholesky(Q).T
    out = []
    for t in enumerate_ellipsoid(R, center, slack):
        tl = [int(v) for v in t]
        u = [u0[r] + sum(K[r][j] * tl[j] for j in range(free)) for r in range(m)]
        if sum(x * x for x in u) <= bound:
            out.append(tuple(u))
    out.sort(key=lambda u: (sum(x * x for x in u), tuple(-abs(x) for x in u), u))
    return out


def _search_order(A) -> list[int]:
    r = A.shape[0]
    left = set(range(r))
    order: list[int] = []
    while left:
        def key(i):
            linked = any(A[i, j] for j in order)
            return (0 if linked or not order else 1, int(A[i, i]), i)
        nxt = min(left, key=key)
        order.append(nxt)
        left.remove(nxt)
    return order


class _Exhausted(Exception):
    pass


def embed(problem: EmbeddingProblem, node_cap: int = DEFAULT_NODE_CAP) -> EmbeddingResult:
    """Decide whether ``problem.gram`` embeds in ``(Z^N, -Id)``.

    Exhaustive up to the signed-permutation symmetry of untouched target
    coordinates; a found embedding comes back as a verified witness.
    """
    A = -problem.gram  # positive definite
    r, N = A.shape[0], problem.target_rank
    if r > N:
        return EmbeddingResult(NOT_EMBEDDABLE, None, 0, problem)
    order = _search_order(A)
    Ai = [[int(A[i, j]) for j in range(r)] for i in range(r)]
    rows: list[list[int]] = []
    nodes = 0

    def place(idx: int, m: int) -> bool:
        nonlocal nodes
        if idx == r:
            return True
        i = order[idx]
        norm = Ai[i][i]
        target = [Ai[i][order[j]] for j in range(idx)]
        P = [row[:m] for row in rows]
        for u in _solve_affine(P, target, m, norm):
            rest = norm - sum(x * x for x in u)
            for w in _square_fillings(rest, N - m):
                nodes += 1
                if nodes > node_cap:
                    raise _Exhausted
                vec = list(u) + list(w) + [0] * (N - m - len(w))
                rows.append(vec)
                if place(idx + 1, m + len(w)):
                    return True
                rows.pop()
        return False

    try:
        found = place(0, 0)
    except _Exhausted:
        return EmbeddingResult(RESOURCE_EXHAUSTED, None, nodes, problem)
    if not found:
        return EmbeddingResult(NOT_EMBEDDABLE, None, nodes, problem)
    M = np.zeros((r, N), dtype=np.int64)
    for idx, i in enumerate(order):
        M[i] = rows[idx]
    return EmbeddingResult(EMBEDDABLE, M, nodes, problem)


def embeds(gram, target_rank: int | None = None, node_cap: int = DEFAULT_NODE_CAP) -> EmbeddingResult:
    """Convenience wrapper: build the problem (rank defaults to the Gram size)."""
    g = np.asarray(gram)
    p = EmbeddingProblem.build(g, g.shape[0] if target_rank is None else target_rank)
    return embed(p, node_cap)
