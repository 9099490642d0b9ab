"""Lower-bound obstructions to a knot bounding a Moebius band in the 4-ball.

Three tests are provided:

* the mod-8 congruence on signature and Arf invariant,
* the lattice embedding test on definite Goeritz forms,
* the linking form test on the double branched cover (cyclic case only).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .goeritz import NEGATIVE, POSITIVE, GoeritzForm, determinant
from .lattice import (
    EMBEDDABLE,
    NOT_EMBEDDABLE,
    DEFAULT_NODE_CAP,
    EmbeddingProblem,
    EmbeddingResult,
    direct_sum,
    embed,
    smith_normal_form,
    square_divisors,
)

__all__ = [
    "InvalidRecord",
    "OddSignature",
    "WrongDefiniteness",
    "NonCyclic",
    "InvariantRecord",
    "LinkingForm",
    "SweepOutcome",
    "DonaldsonOutcome",
    "MoebiusOutcome",
    "congruence_class",
    "congruence_lower_bound",
    "arf_matches_determinant",
    "donaldson_obstruction",
    "linking_form",
    "moebius_obstruction",
]


class InvalidRecord(ValueError):
    pass


class OddSignature(ValueError):
    pass


class WrongDefiniteness(ValueError):
    pass


class NonCyclic(ValueError):
    pass


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def arf_matches_determinant(arf: int, det: int) -> bool:
    """The Arf invariant vanishes exactly when det is +-1 mod 8."""
    return (arf == 0) == (det % 8 in (1, 7))


@dataclass(frozen=True)
class InvariantRecord:
    name: str
    signature: int
    arf: int
    determinant: int
    slice: bool = False
    alternating: bool = False
    known_gamma4: int | None = None

    def __post_init__(self):
        if self.signature % 2:
            raise InvalidRecord(f"{self.name}: odd signature {self.signature}")
        if self.arf not in (0, 1):
            raise InvalidRecord(f"{self.name}: Arf invariant must be 0 or 1")
        if self.determinant < 1 or self.determinant % 2 == 0:
            raise InvalidRecord(f"{self.name}: determinant must be odd and positive")
        if self.slice and (self.signature != 0 or not _is_square(self.determinant)):
            raise InvalidRecord(f"{self.name}: slice knot needs signature 0 and square determinant")
        if not arf_matches_determinant(self.arf, self.determinant):
            raise InvalidRecord(f"{self.name}: Arf {self.arf} inconsistent with det {self.determinant}")

    def mirror(self) -> "InvariantRecord":
        name = self.name[1:] if self.name.startswith("-") else "-" + self.name
        return replace(self, name=name, signature=-self.signature)


def congruence_class(sigma: int, arf: int) -> int:
    if sigma % 2:
        raise OddSignature(f"signature {sigma} is odd")
    return (sigma + 4 * arf) % 8


def congruence_lower_bound(rec: InvariantRecord) -> int | None:
    return 2 if congruence_class(rec.signature, rec.arf) == 4 else None


# -- embedding obstruction ---------------------------------------------------


@dataclass
class SweepOutcome:
    """Embedding attempts of ``G + [-l]`` for every admissible ``l``."""

    form: GoeritzForm
    attempts: list[tuple[int, EmbeddingResult]] = field(default_factory=list)

    @property
    def obstructed(self) -> bool:
        return bool(self.attempts) and all(r.status == NOT_EMBEDDABLE for _, r in self.attempts)


@dataclass
class DonaldsonOutcome:
    sweeps: list[SweepOutcome]
    bound: int | None

    @property
    def nodes(self) -> int:
        return sum(r.nodes_searched for s in self.sweeps for _, r in s.attempts)


def _sweep(form: GoeritzForm, det: int, node_cap: int) -> SweepOutcome:
    g = form.gram if form.definiteness == NEGATIVE else -form.gram
    out = SweepOutcome(form)
    for ell in square_divisors(det):
        p = EmbeddingProblem.build(direct_sum(g, -ell), g.shape[0] + 1)
        res = embed(p, node_cap)
        out.attempts.append((ell, res))
        if res.status == EMBEDDABLE:
            break
    return out


def donaldson_obstruction(rec: InvariantRecord, forms, node_cap: int = DEFAULT_NODE_CAP) -> DonaldsonOutcome:
    """Embedding test for classes 0 and +-2.

    Class 2 wants the negative definite form of the knot and class 6 the
    positive one (the negative form of the mirror, negated); class 0 wants
    one form of each sign.  Every form is canonicalized to negative definite
    and ``G + [-l]`` is tested against ``-Id`` of rank one more.
    """
    forms = list(forms)
    cls = congruence_class(rec.signature, rec.arf)
    signs = sorted(f.definiteness for f in forms)
    if cls == 2:
        ok = signs == [NEGATIVE]
    elif cls == 6:
        ok = signs == [POSITIVE]
    elif cls == 0:
        ok = signs == [NEGATIVE, POSITIVE]
    else:
        raise WrongDefiniteness(f"{rec.name}: class {cls} is handled by the congruence bound")
    if not ok:
        raise WrongDefiniteness(f"{rec.name}: class {cls} cannot use forms {signs}")
    for f in forms:
        if abs(determinant(f.gram)) != rec.determinant:
            raise WrongDefiniteness(f"{rec.name}: form determinant differs from the record")
    sweeps = []
    for f in forms:
        s = _sweep(f, rec.determinant, node_cap)
        sweeps.append(s)
        if not s.obstructed:
            break
    bound = 2 if len(sweeps) == len(forms) and all(s.obstructed for s in sweeps) else None
    return DonaldsonOutcome(sweeps, bound)


# -- linking form ------------------------------------------------------------


def _orbit(n: int, q: int) -> set[int]:
    units = [u for u in range(1, n) if math.gcd(u, n) == 1] or [1]
    squares = {u * u % n for u in units}
    return {s * q % n for s in squares} | {-s * q % n for s in squares}


@dataclass(frozen=True)
class LinkingForm:
    """Self-linking ``q / n`` of a generator of a cyclic group of order ``n``.

    ``q`` is stored as the least element of its class under ``q -> +-u^2 q``.
    """

    n: int
    q: int

    @classmethod
    def make(cls, n: int, q: int) -> "LinkingForm":
        if n < 1:
            raise ValueError("order must be positive")
        q %= n
        if n > 1 and math.gcd(q, n) != 1:
            raise ValueError(f"{q}/{n} is degenerate")
        return cls(n, min(_orbit(n, q)) if n > 1 else 0)

    def equivalent(self, other: "LinkingForm") -> bool:
        return self.n == other.n and self.q == LinkingForm.make(other.n, other.q).q

    def __str__(self) -> str:
        return f"{self.q}/{self.n}"


def _inverse_unimodular(U) -> list[list[int]]:
    n = U.shape[0]
    a = [[Fraction(int(v)) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U.tolist())]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[int(v) for v in row[n:]] for row in a]


def linking_form(g) -> LinkingForm:
    """Linking form ``-G^{-1}`` on a generator of ``coker G`` (must be cyclic)."""
    gram = g.gram if isinstance(g, GoeritzForm) else np.asarray(g)
    snf = smith_normal_form(gram)
    torsion = [d for d in snf.diagonal if d != 1]
    if not torsion:
        return LinkingForm(1, 0)
    if len(torsion) != 1 or torsion[0] == 0:
        raise NonCyclic(f"cokernel has invariant factors {torsion}")
    n = torsion[0]
    r = snf.diagonal.index(n)
    x = [row[r] for row in _inverse_unimodular(snf.left)]
    y = [int(v) for v in snf.right[:, r]]
    # G^{-1} x = V D^{-1} U x = V e_r / n
    num = sum(a * b for a, b in zip(x, y))
    return LinkingForm.make(n, -num)


@dataclass(frozen=True)
class MoebiusOutcome:
    form: LinkingForm
    applicable: bool
    bound: int | None


def _prime_exponents(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius_obstruction(lf: LinkingForm) -> MoebiusOutcome:
    """Bound 2 when no generator has self-linking +-1/n.

    Only meaningful for odd ``n`` whose prime exponents are all odd; other
    orders come back with ``applicable=False`` and no bound.
    """
    n = lf.n
    if n % 2 == 0 or n == 1 or any(e % 2 == 0 for e in _prime_exponents(n).values()):
        return MoebiusOutcome(lf, False, None)
    hit = not ({1, n - 1} & _orbit(n, lf.q))
    return MoebiusOutcome(lf, True, 2 if hit else None)
