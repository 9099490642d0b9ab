"""Bound bookkeeping for the census.

Upper bounds come from certificates: a slice knot, a tabulated value, or a
non-oriented band move ``K -> K'`` (which gives ``g(K) <= g(K') + 1``, and
``g(K) = 1`` outright when ``K'`` is slice).  Lower bounds come from the
obstruction module.  ``propagate`` runs the monotone updates to a fixed
point and refuses to continue when an interval becomes empty.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

__all__ = [
    "CertificateError",
    "UnknownKnot",
    "ConflictingKnownValue",
    "SuspectCertificate",
    "Inconsistent",
    "Certificate",
    "CertificateGraph",
    "Bound",
    "BoundState",
    "CensusReport",
    "normalize_name",
    "crossing_number",
    "load_certificates",
    "dump_certificates",
    "ingest",
    "propagate",
    "resolve_census",
]

SLICE, KNOWN, BAND_MOVE = "slice", "known", "band_move"


class CertificateError(ValueError):
    pass


class UnknownKnot(CertificateError):
    pass


class ConflictingKnownValue(CertificateError):
    pass


class SuspectCertificate(CertificateError):
    """A band move to a larger knot whose value is not tabulated."""


class Inconsistent(RuntimeError):
    def __init__(self, knot: str, lower: int, upper: int):
        super().__init__(f"{knot}: lower bound {lower} exceeds upper bound {upper}")
        self.knot = knot
        self.lower = lower
        self.upper = upper


def normalize_name(name: str) -> str:
    """Mirror images share the invariant, so a leading ``-`` is dropped."""
    name = name.strip()
    return name[1:] if name.startswith("-") else name


_PART = re.compile(r"^-?(\d+)[an]?_(\d+)$")


def crossing_number(name: str) -> int:
    """Crossing number read off a table name (``10_3``, ``11n_83``, ``3_1#-3_1``)."""
    total = 0
    for part in name.split("#"):
        m = _PART.match(part.strip())
        if not m:
            raise UnknownKnot(f"cannot read a crossing number from {name!r}")
        total += int(m.group(1))
    return total


@dataclass(frozen=True, order=True)
class Certificate:
    kind: str
    knot: str
    target: str = ""
    framing: int = 0
    value: int = 0
    provenance: str = ""

    def __post_init__(self):
        if self.kind not in (SLICE, KNOWN, BAND_MOVE):
            raise CertificateError(f"unknown certificate kind {self.kind!r}")
        if self.kind == BAND_MOVE and self.framing not in (-1, 0, 1):
            raise CertificateError(f"band move framing {self.framing} not in -1, 0, 1")
        if self.kind == KNOWN and self.value < 1:
            raise CertificateError(f"{self.knot}: tabulated value must be positive")

    @classmethod
    def slice(cls, knot: str, provenance: str = "") -> "Certificate":
        return cls(SLICE, normalize_name(knot), provenance=provenance)

    @classmethod
    def known(cls, knot: str, value: int, provenance: str = "") -> "Certificate":
        return cls(KNOWN, normalize_name(knot), value=int(value), provenance=provenance)

    @classmethod
    def band_move(cls, source: str, framing: int, target: str, provenance: str = "") -> "Certificate":
        return cls(BAND_MOVE, normalize_name(source), normalize_name(target), int(framing),
                   provenance=provenance)

    def describe(self) -> str:
        tag = f" [{self.provenance}]" if self.provenance else ""
        if self.kind == SLICE:
            return f"{self.knot} is slice{tag}"
        if self.kind == KNOWN:
            return f"gamma4({self.knot}) = {self.value} (table){tag}"
        return f"{self.knot} --({self.framing:+d})--> {self.target}{tag}"

    def to_json(self) -> dict:
        if self.kind == SLICE:
            d = {"kind": SLICE, "knot": self.knot}
        elif self.kind == KNOWN:
            d = {"kind": KNOWN, "knot": self.knot, "gamma4": self.value}
        else:
            d = {"kind": BAND_MOVE, "source": self.knot, "framing": self.framing, "target": self.target}
        if self.provenance:
            d["provenance"] = self.provenance
        return d


def _from_json(obj, where: str) -> Certificate:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise CertificateError(f"{where}: expected an object with a 'kind' field")
    kind = obj["kind"]
    prov = str(obj.get("provenance", ""))
    try:
        if kind == SLICE:
            return Certificate.slice(obj["knot"], prov)
        if kind == KNOWN:
            return Certificate.known(obj["knot"], obj["gamma4"], prov)
        if kind == BAND_MOVE:
            return Certificate.band_move(obj["source"], obj["framing"], obj["target"], prov)
    except KeyError as exc:
        raise CertificateError(f"{where}: missing field {exc}") from None
    raise CertificateError(f"{where}: unknown kind {kind!r}")


def load_certificates(path) -> list[Certificate]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise CertificateError(f"{path}: expected a JSON array")
    return [_from_json(obj, f"{path}: entry {k}") for k, obj in enumerate(data)]


def dump_certificates(certs, path) -> None:
    Path(path).write_text(json.dumps([c.to_json() for c in certs], indent=1) + "\n", encoding="utf-8")


@dataclass
class CertificateGraph:
    census: tuple[str, ...]
    slice: dict[str, Certificate] = field(default_factory=dict)
    known: dict[str, Certificate] = field(default_factory=dict)
    moves: list[Certificate] = field(default_factory=list)

    @property
    def nodes(self) -> set[str]:
        return set(self.census) | set(self.slice) | set(self.known)


def ingest(certs, table) -> CertificateGraph:
    """Check certificates against the census table and index them.

    ``table`` is a sequence of records with ``name`` (and optionally
    ``slice``) attributes, or plain names.
    """
    census = []
    record_slice = {}
    for rec in table:
        name = normalize_name(getattr(rec, "name", rec))
        census.append(name)
        record_slice[name] = getattr(rec, "slice", None)
    g = CertificateGraph(tuple(census))
    for c in sorted(certs):
        if c.kind == SLICE:
            if record_slice.get(c.knot) is False:
                raise ConflictingKnownValue(f"{c.knot}: certified slice but the table says otherwise")
            g.slice.setdefault(c.knot, c)
        elif c.kind == KNOWN:
            prev = g.known.get(c.knot)
            if prev is not None and prev.value != c.value:
                raise ConflictingKnownValue(f"{c.knot}: tabulated as both {prev.value} and {c.value}")
            g.known.setdefault(c.knot, c)
        else:
            g.moves.append(c)
    for k, c in g.known.items():
        if k in g.slice and c.value != 1:
            raise ConflictingKnownValue(f"{k}: slice but tabulated as {c.value}")
    nodes = g.nodes
    # moves out of knots we are not tracking cannot affect anything
    g.moves = [m for m in g.moves if m.knot in nodes]
    for m in g.moves:
        if m.target not in nodes:
            raise UnknownKnot(f"{m.target} (from {m.describe()}) is neither in the census nor tabulated")
        if m.target not in g.known and m.target not in g.slice:
            if crossing_number(m.target) > crossing_number(m.knot):
                raise SuspectCertificate(f"{m.describe()}: target has more crossings and no tabulated value")
    return g


@dataclass(frozen=True)
class Bound:
    value: int
    reason: str
    via: Certificate | None = None


@dataclass
class BoundState:
    lower: dict[str, Bound]
    upper: dict[str, Bound]
    graph: CertificateGraph

    def interval(self, k: str) -> tuple[int, int | None]:
        k = normalize_name(k)
        up = self.upper.get(k)
        return self.lower[k].value, (up.value if up else None)

    def resolved(self, k: str) -> int | None:
        lo, hi = self.interval(k)
        return lo if hi == lo else None

    def derivation(self, k: str) -> list[str]:
        """Human-readable chain of reasons behind the bounds of ``k``."""
        k = normalize_name(k)
        lines = [f"lower {self.lower[k].value}: {self.lower[k].reason}"]
        seen = set()
        while k in self.upper and k not in seen:
            seen.add(k)
            b = self.upper[k]
            lines.append(f"upper({k}) = {b.value}: {b.reason}")
            if b.via is None or b.via.kind != BAND_MOVE:
                break
            k = b.via.target
        return lines


def propagate(g: CertificateGraph, obstructions=None) -> BoundState:
    """Monotone fixed point of the bound updates.

    ``obstructions`` maps a knot to an iterable of ``(bound, label)`` pairs.
    Raises ``Inconsistent`` naming the first knot (in sorted order) whose
    lower bound ends above its upper bound.
    """
    obstructions = obstructions or {}
    nodes = sorted(g.nodes)
    lower = {k: Bound(1, "every nontrivial knot has gamma4 >= 1") for k in nodes}
    upper: dict[str, Bound] = {}
    for k, c in g.slice.items():
        upper[k] = Bound(1, c.describe(), c)
    for k, c in g.known.items():
        if k not in upper or c.value < upper[k].value:
            upper[k] = Bound(c.value, c.describe(), c)
        if c.value > lower[k].value:
            lower[k] = Bound(c.value, c.describe(), c)
    for raw, found in sorted(obstructions.items()):
        k = normalize_name(raw)
        if k not in lower:
            raise UnknownKnot(f"obstruction reported for unknown knot {raw}")
        for value, label in sorted(found, key=lambda t: (-t[0], t[1])):
            if value > lower[k].value:
                lower[k] = Bound(value, label)

    moves = sorted(g.moves)
    changed = True
    while changed:
        changed = False
        for m in moves:
            if m.target in g.slice:
                cand = 1
                reason = f"band move to the slice knot {m.target}: {m.describe()}"
            elif m.target in upper:
                cand = upper[m.target].value + 1
                reason = f"upper({m.target}) + 1 via {m.describe()}"
            else:
                continue
            cur = upper.get(m.knot)
            if cur is None or cand < cur.value:
                upper[m.knot] = Bound(cand, reason, m)
                changed = True

    for k in nodes:
        if k in upper and lower[k].value > upper[k].value:
            raise Inconsistent(k, lower[k].value, upper[k].value)
    return BoundState(lower, upper, g)


@dataclass
class CensusReport:
    values: dict[str, int]
    unresolved: dict[str, tuple[int, int | None]]
    mismatches: dict[str, tuple[object, int]]

    @property
    def counts(self) -> dict[int, int]:
        return dict(sorted(Counter(self.values.values()).items()))

    @property
    def ok(self) -> bool:
        return not self.unresolved and not self.mismatches


def resolve_census(state: BoundState, expected: dict[str, int] | None = None) -> CensusReport:
    """Values for census knots, open intervals, and disagreements with ``expected``.

    Expected entries for knots outside the census are ignored.
    """
    values, unresolved = {}, {}
    for k in state.graph.census:
        v = state.resolved(k)
        if v is None:
            unresolved[k] = state.interval(k)
        else:
            values[k] = v
    mismatches = {}
    if expected is not None:
        for raw, want in sorted(expected.items()):
            k = normalize_name(raw)
            if k not in state.graph.census:
                continue
            got = values.get(k, unresolved.get(k))
            if got != want:
                mismatches[k] = (got, want)
    return CensusReport(values, unresolved, mismatches)
