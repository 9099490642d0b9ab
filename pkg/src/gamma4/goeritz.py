"""PreGoeritz and Goeritz matrices of a checkerboard coloring.

All determinants are computed with Python integers (Bareiss elimination), so
nothing here can overflow.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import Coloring

__all__ = [
    "POSITIVE",
    "NEGATIVE",
    "INDEFINITE",
    "DEGENERATE",
    "Degenerate",
    "PreGoeritzMatrix",
    "GoeritzForm",
    "pregoeritz",
    "goeritz",
    "determinant",
    "leading_minors",
    "definiteness",
    "parse_matrix",
    "format_matrix",
]

POSITIVE, NEGATIVE, INDEFINITE, DEGENERATE = "positive", "negative", "indefinite", "degenerate"


class Degenerate(ValueError):
    """Goeritz minor with zero determinant."""


@dataclass(frozen=True)
class PreGoeritzMatrix:
    entries: np.ndarray
    coloring: Coloring | None = None

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class GoeritzForm:
    gram: np.ndarray
    deleted_index: int
    definiteness: str
    source: tuple[str, int] = ("", 0)

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    @property
    def det(self) -> int:
        return determinant(self.gram)

    def negated(self) -> "GoeritzForm":
        flip = {POSITIVE: NEGATIVE, NEGATIVE: POSITIVE}
        return GoeritzForm(-self.gram, self.deleted_index,
                           flip.get(self.definiteness, self.definiteness), self.source)


def pregoeritz(c: Coloring) -> PreGoeritzMatrix:
    n = c.n_white
    g = np.zeros((n, n), dtype=np.int64)
    for eta, (i, j) in zip(c.eta, c.white_at):
        if i != j:
            g[i, j] -= eta
            g[j, i] -= eta
    np.fill_diagonal(g, 0)
    g[np.diag_indices(n)] = -g.sum(axis=1)
    return PreGoeritzMatrix(g, c)


def _incidence_degree(pg: PreGoeritzMatrix) -> list[int]:
    c = pg.coloring
    if c is None:
        return [int(np.count_nonzero(row)) for row in pg.entries]
    return [len(c.faces[k].corners) for k in c.white_regions]


def goeritz(pg: PreGoeritzMatrix, k: int | None = None, name: str = "") -> GoeritzForm:
    """Delete row and column ``k``.

    By default the white region touching the most crossings is removed
    (lowest index on ties).
    """
    n = pg.n
    if n < 2:
        raise ValueError("need at least two white regions")
    if k is None:
        deg = _incidence_degree(pg)
        k = max(range(n), key=lambda i: (deg[i], -i))
    keep = [i for i in range(n) if i != k]
    gram = pg.entries[np.ix_(keep, keep)].copy()
    cls = definiteness(gram)
    if cls == DEGENERATE:
        raise Degenerate(f"Goeritz minor of {name or 'diagram'} is singular")
    ident = pg.coloring.ident if pg.coloring is not None else 0
    return GoeritzForm(gram, k, cls, (name, ident))


def determinant(g) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(v) for v in row] for row in np.asarray(g, dtype=object).tolist()]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_minors(g) -> list[int]:
    a = np.asarray(g)
    return [determinant(a[:k, :k]) for k in range(1, a.shape[0] + 1)]


def definiteness(g) -> str:
    """Classify a symmetric integer matrix by its leading principal minors."""
    a = np.asarray(g)
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    minors = leading_minors(a)
    if not minors or minors[-1] == 0:
        return DEGENERATE
    if all(m > 0 for m in minors):
        return POSITIVE
    if all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(minors)):
        return NEGATIVE
    return INDEFINITE


def parse_matrix(text: str) -> np.ndarray:
    """Rows of whitespace- or comma-separated integers, one row per line."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix rows")
    return np.array(rows, dtype=np.int64)


def format_matrix(g) -> str:
    a = np.asarray(g)
    if a.size == 0:
        return ""
    w = max(len(str(int(v))) for v in a.flat)
    return "\n".join(" ".join(str(int(v)).rjust(w) for v in row) for row in a)
