"""Planar diagram codes, faces and checkerboard colorings.

A PD code lists one ``X[a,b,c,d]`` per crossing.  The four labels are the
edges meeting at the crossing, counterclockwise, starting from the incoming
under-strand; ``a -> c`` is the under-strand and ``b, d`` the over-strand.

Positions ``0..3`` index the slots of a tuple and the *corner* ``(x, i)`` is
the wedge of crossing ``x`` between slots ``i`` and ``i + 1``.  Corners 0 and
2 are the wedges reached by turning the over-strand clockwise.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

__all__ = [
    "DiagramError",
    "MalformedCode",
    "NonKnot",
    "NonPlanar",
    "KnotDiagram",
    "Face",
    "Coloring",
    "parse_pd",
    "extract_faces",
    "checkerboard",
]

BLACK, WHITE = "black", "white"

_TUPLE = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


class DiagramError(ValueError):
    pass


class MalformedCode(DiagramError):
    """PD text that does not parse."""


class NonKnot(DiagramError):
    """Labels not paired, or more than one component."""


class NonPlanar(DiagramError):
    """Face structure violates V - E + F = 2."""


@dataclass(frozen=True)
class KnotDiagram:
    name: str
    crossings: tuple[tuple[int, int, int, int], ...]

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def is_unknot(self) -> bool:
        return not self.crossings

    def signs(self) -> tuple[int, ...]:
        """Writhe sign of each crossing (+1 when the over-strand runs d -> b)."""
        n = self.edge_count
        out = []
        for _, b, _, d in self.crossings:
            out.append(1 if b == d % n + 1 else -1)
        return tuple(out)

    def writhe(self) -> int:
        return sum(self.signs())

    def mirror(self) -> "KnotDiagram":
        """Switch every crossing, keeping the planar projection."""
        n = self.edge_count
        flipped = []
        for a, b, c, d in self.crossings:
            # the old over-strand becomes the under-strand; rotate so the
            # tuple again starts from the incoming under edge
            if d == b % n + 1:
                flipped.append((b, c, d, a))
            else:
                flipped.append((d, a, b, c))
        name = self.name[1:] if self.name.startswith("-") else "-" + self.name
        return KnotDiagram(name, tuple(flipped))

    def to_pd(self) -> str:
        return ",".join("X[%d,%d,%d,%d]" % x for x in self.crossings)


def _slots(crossings):
    where: dict[int, list[tuple[int, int]]] = {}
    for x, tup in enumerate(crossings):
        for i, label in enumerate(tup):
            where.setdefault(label, []).append((x, i))
    return where


def _traverse(crossings, where):
    """Edge labels in the order met when walking the knot once.

    The walk direction is arbitrary; the caller orients it.
    """
    start = min(where)
    order = [start]
    x, i = where[start][0]
    while True:
        exit_slot = (x, (i + 2) % 4)
        label = crossings[x][exit_slot[1]]
        if label == start:
            break
        order.append(label)
        if len(order) > len(where):
            raise NonKnot("strand walk does not close")
        pair = where[label]
        x, i = pair[1] if pair[0] == exit_slot else pair[0]
    if len(order) != len(where):
        raise NonKnot(f"diagram has more than one component "
                      f"({len(order)} of {len(where)} edges on the first)")
    return order


def parse_pd(text: str, name: str = "") -> KnotDiagram:
    """Parse ``X[a,b,c,d],...`` into a validated diagram.

    Labels are renumbered ``1..2c`` along the knot, starting from the
    smallest input label.  Empty text is the unknot sentinel.
    """
    body = text.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    if not body:
        return KnotDiagram(name or "0_1", ())
    crossings = []
    pos = 0
    for m in _TUPLE.finditer(body):
        gap = body[pos:m.start()].strip()
        if gap not in ("", ","):
            raise MalformedCode(f"unexpected text {gap!r} at offset {pos}")
        crossings.append(tuple(int(v) for v in m.groups()))
        pos = m.end()
    if not crossings or body[pos:].strip() not in ("",):
        raise MalformedCode(f"unexpected text {body[pos:]!r} at offset {pos}")

    where = _slots(crossings)
    bad = sorted(label for label, s in where.items() if len(s) != 2)
    if bad:
        raise NonKnot(f"edge labels {bad} do not appear exactly twice")

    order = _traverse(crossings, where)
    pos = {label: k for k, label in enumerate(order)}
    a0, _, c0, _ = crossings[0]
    if order[(pos[a0] + 1) % len(order)] != c0:
        order = order[:1] + order[1:][::-1]
        pos = {label: k for k, label in enumerate(order)}
    for a, _, c, _ in crossings:
        if order[(pos[a] + 1) % len(order)] != c:
            raise MalformedCode(f"under-strand {a}->{c} runs against the knot orientation")
    relabel = {old: new for new, old in enumerate(order, start=1)}
    normalized = tuple(tuple(relabel[v] for v in tup) for tup in crossings)
    return KnotDiagram(name, normalized)


@dataclass(frozen=True)
class Face:
    """A complementary region, as its cycle of corners ``(crossing, slot)``."""

    corners: tuple[tuple[int, int], ...]
    edges: tuple[int, ...]

    def crossings(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.corners)


def extract_faces(d: KnotDiagram) -> list[Face]:
    """Faces from the rotation system of the PD code.

    The corner ``(x, i)`` is followed by the corner at the far end of the edge
    in slot ``i + 1``.
    """
    if d.is_unknot:
        return [Face((), ()), Face((), ())]
    cr = d.crossings
    where = _slots(cr)

    def far_end(x, i):
        label = cr[x][i]
        a, b = where[label]
        return b if a == (x, i) else a

    seen: set[tuple[int, int]] = set()
    faces = []
    for x in range(len(cr)):
        for i in range(4):
            if (x, i) in seen:
                continue
            corners, edges = [], []
            cur = (x, i)
            while cur not in seen:
                seen.add(cur)
                corners.append(cur)
                cx, ci = cur
                edges.append(cr[cx][(ci + 1) % 4])
                cur = far_end(cx, (ci + 1) % 4)
            faces.append(Face(tuple(corners), tuple(edges)))
    v, e, f = len(cr), d.edge_count, len(faces)
    if v - e + f != 2:
        raise NonPlanar(f"V - E + F = {v - e + f} for {d.name or 'diagram'}")
    return faces


@dataclass(frozen=True)
class Coloring:
    """One of the two checkerboard shadings of a diagram.

    ``white_at[x]`` holds the indices (into ``white_regions``) of the two white
    wedges at crossing ``x``; they coincide at a nugatory crossing.
    """

    faces: tuple[Face, ...]
    shading: tuple[str, ...]
    white_regions: tuple[int, ...]
    eta: tuple[int, ...]
    white_at: tuple[tuple[int, int], ...]
    ident: int = field(default=0)

    @property
    def n_white(self) -> int:
        return len(self.white_regions)


def _face_of_corner(faces):
    lookup = {}
    for k, face in enumerate(faces):
        for c in face.corners:
            lookup[c] = k
    return lookup


def checkerboard(d: KnotDiagram, faces: list[Face] | None = None) -> tuple[Coloring, Coloring]:
    """Both checkerboard colorings with their crossing weights.

    A crossing has weight +1 when its white wedges are the ones swept by
    turning the over-strand clockwise, and -1 otherwise.  With this choice an
    alternating diagram whose crossings all weigh +1 in a coloring yields a
    positive definite Goeritz form there.  Coloring 0 is the one in which
    crossing 0 has weight +1.
    """
    if faces is None:
        faces = extract_faces(d)
    if d.is_unknot:
        a = Coloring(tuple(faces), (WHITE, BLACK), (0,), (), (), 0)
        b = Coloring(tuple(faces), (BLACK, WHITE), (1,), (), (), 1)
        return a, b

    owner = _face_of_corner(faces)
    color = [None] * len(faces)
    color[owner[(0, 0)]] = WHITE
    queue = deque([owner[(0, 0)]])
    while queue:
        k = queue.popleft()
        for x, i in faces[k].corners:
            for j in ((i + 1) % 4, (i + 3) % 4):
                other = owner[(x, j)]
                want = BLACK if color[k] == WHITE else WHITE
                if color[other] is None:
                    color[other] = want
                    queue.append(other)
                elif color[other] != want:
                    raise NonPlanar("faces do not admit a checkerboard shading")

    def build(shading, ident):
        white = tuple(k for k, s in enumerate(shading) if s == WHITE)
        index = {k: n for n, k in enumerate(white)}
        eta, white_at = [], []
        for x in range(len(d.crossings)):
            if shading[owner[(x, 0)]] == WHITE:
                eta.append(1)
                white_at.append((index[owner[(x, 0)]], index[owner[(x, 2)]]))
            else:
                eta.append(-1)
                white_at.append((index[owner[(x, 1)]], index[owner[(x, 3)]]))
        return Coloring(tuple(faces), tuple(shading), white, tuple(eta), tuple(white_at), ident)

    flipped = tuple(BLACK if c == WHITE else WHITE for c in color)
    return build(tuple(color), 0), build(flipped, 1)
