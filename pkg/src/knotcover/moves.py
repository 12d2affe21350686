"""Reidemeister moves that add crossings, and braid-closure diagrams.

These generate test material for the bracket: every move here is a local
rewrite of the PD code whose effect on the bracket is known in advance.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass

from .diagram import DiagramError, PlanarDiagram, oriented_crossing, require_valid


@dataclass(frozen=True)
class MoveRecord:
    """One step of a move log.

    ``kind`` is one of ``R1-add``, ``R1-remove``, ``R2``, ``R3``, ``flype``,
    ``box-slide``, ``parity-move``, ``strip`` or ``rotation``.  ``site`` names
    the arcs, crossings or boxes touched; ``direction`` is a short free-form
    tag.  ``writhe_change`` is the writhe difference across the move, so the
    bracket after the move is the bracket before times ``(-A^3)**writhe_change``.
    """

    kind: str
    site: tuple
    direction: str = ""
    before: str = ""
    after: str = ""
    writhe_change: int = 0

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "site": list(self.site), "direction": self.direction}
        if self.before or self.after:
            out["before"] = self.before
            out["after"] = self.after
        if self.writhe_change:
            out["writhe_change"] = self.writhe_change
        return out

    @classmethod
    def from_dict(cls, data: dict) -> MoveRecord:
        try:
            return cls(str(data["kind"]), tuple(data.get("site", ())), str(data.get("direction", "")),
                       str(data.get("before", "")), str(data.get("after", "")),
                       int(data.get("writhe_change", 0)))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DiagramError(f"malformed move record: {data!r}") from exc


def _fresh(d: PlanarDiagram, count: int) -> list[int]:
    top = max([0, *d.arcs(), *(abs(x) for f in d.marked_faces for x in f)])
    return [top + 1 + t for t in range(count)]


def _head_slot(d: PlanarDiagram, arc: int) -> tuple[int, int] | None:
    """The slot where an oriented arc enters a crossing."""
    if d.signs is None:
        return None
    for i, j in d.slots_of()[arc]:
        s = d.signs[i]
        if j == 0 or (j == 3 and s > 0) or (j == 1 and s < 0):
            return (i, j)
    raise DiagramError(f"arc {arc} has no incoming end")


def _replace_slot(crossings: list[list[int]], i: int, j: int, label: int) -> None:
    crossings[i][j] = label


def _assemble(d: PlanarDiagram, rows: list[list[int]], extra: list[tuple[tuple[int, ...], int | None]],
              loops: Sequence[int] | None = None) -> PlanarDiagram:
    crossings = tuple(tuple(r) for r in rows) + tuple(c for c, _ in extra)
    signs = None
    if d.signs is not None:
        signs = tuple(d.signs) + tuple(s for _, s in extra)
    return PlanarDiagram(crossings, signs, tuple(d.loops if loops is None else loops), (), d.component_tags)


# ---------------------------------------------------------------------- R1
def add_kink(d: PlanarDiagram, arc: int, loop_left: bool = True, first_under: bool = True) -> tuple[PlanarDiagram, int]:
    """Insert a curl on ``arc``.  Returns the new diagram and the kink's sign.

    The bracket of the result is ``(-A^3)^sign`` times the original bracket.
    """
    require_valid(d)
    e1, = [arc]
    e2, lp = _fresh(d, 2)
    rows = [list(c) for c in d.crossings]
    loops = list(d.loops)
    if arc in loops:
        loops.remove(arc)
        e2 = arc
    else:
        ends = d.slots_of().get(arc)
        if not ends:
            raise DiagramError(f"no arc {arc}")
        head = _head_slot(d, arc) or ends[1]
        _replace_slot(rows, head[0], head[1], e2)
    ccw = [e1, e2, lp, lp] if loop_left else [e1, lp, lp, e2]
    back = 3 if loop_left else 1  # position where the loop re-enters
    if first_under:
        crossing, sign = oriented_crossing(ccw, 0, back)
    else:
        crossing, sign = oriented_crossing(ccw, back, 0)
    return _assemble(d, rows, [(crossing, sign if d.signs is not None else None)], loops), sign


# ---------------------------------------------------------------------- R2
def face_edges(d: PlanarDiagram, face_corners: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Edges on a face boundary as ``(crossing, slot)`` of their walk-start end."""
    return [(i, (j + 1) % 4) for i, j in face_corners]


def walk_corners(d: PlanarDiagram, start: tuple[int, int]) -> list[tuple[int, int]]:
    out = []
    cur = start
    while True:
        out.append(cur)
        i, j = cur
        cur = d.partner(i, (j + 1) % 4)
        if cur == start:
            return out


def add_r2(d: PlanarDiagram, start1: tuple[int, int], start2: tuple[int, int],
           first_over: bool = True) -> PlanarDiagram:
    """Push one edge across another edge of the same face, creating a bigon.

    ``start1`` and ``start2`` are ``(crossing, slot)`` walk-start ends of two
    distinct edges on the boundary of one face (walked with the face on the
    right).  The first edge passes over the second when ``first_over``.
    """
    require_valid(d)
    fc = d.face_of_corner()
    c1 = (start1[0], (start1[1] - 1) % 4)
    c2 = (start2[0], (start2[1] - 1) % 4)
    if fc[c1] != fc[c2]:
        raise DiagramError("edges do not share a face")
    e1 = d.crossings[start1[0]][start1[1]]
    e2 = d.crossings[start2[0]][start2[1]]
    if e1 == e2:
        raise DiagramError("edges must be distinct")
    end1 = d.partner(*start1)
    end2 = d.partner(*start2)
    m1, q1, m2, q2 = _fresh(d, 4)
    p1, p2 = e1, e2
    rows = [list(c) for c in d.crossings]
    _replace_slot(rows, end1[0], end1[1], q1)
    _replace_slot(rows, end2[0], end2[1], q2)
    x_ccw = [m2, p1, q2, m1]  # E N W S
    y_ccw = [p2, q1, m2, m1]
    extra: list[tuple[tuple[int, ...], int | None]] = []
    if d.signs is None:
        if first_over:
            extra = [(tuple(x_ccw), None), (tuple(y_ccw), None)]
        else:
            extra = [(tuple(x_ccw[1:] + x_ccw[:1]), None), (tuple(y_ccw[3:] + y_ccw[:3]), None)]
    else:
        along1 = _head_slot(d, e1) == end1
        along2 = _head_slot(d, e2) == end2
        # incoming positions in x_ccw / y_ccw
        x_in1 = 1 if along1 else 3
        x_in2 = 0 if along2 else 2
        y_in1 = 3 if along1 else 1
        y_in2 = 0 if along2 else 2
        for ccw, in1, in2 in ((x_ccw, x_in1, x_in2), (y_ccw, y_in1, y_in2)):
            if first_over:
                crossing, sign = oriented_crossing(ccw, in2, in1)
            else:
                crossing, sign = oriented_crossing(ccw, in1, in2)
            extra.append((crossing, sign))
    return _assemble(d, rows, extra)


# ---------------------------------------------------------------------- R3
@dataclass(frozen=True)
class Triangle:
    crossings: tuple[int, int, int]
    corners: tuple[tuple[int, int], ...]


def triangles(d: PlanarDiagram) -> list[Triangle]:
    out = []
    for f in d.faces():
        if len(f.corners) == 3 and len({i for i, _ in f.corners}) == 3:
            cs = tuple(sorted(i for i, _ in f.corners))
            out.append(Triangle(cs, tuple(sorted(f.corners))))
    return out


def _triangle_strands(d: PlanarDiagram, tri: Triangle):
    """For each triangle edge: (strand slots at both crossings, over flags)."""
    corners = walk_corners(d, tri.corners[0])
    edges = []
    for i, j in corners:
        s_out = (j + 1) % 4
        ni, nj = d.partner(i, s_out)
        edges.append(((i, s_out), (ni, nj)))
    return edges


def r3_applicable(d: PlanarDiagram, tri: Triangle) -> bool:
    edges = _triangle_strands(d, tri)
    labels = set()
    for (i, j), (k, l) in edges:
        labels.update((d.crossings[i][j], d.crossings[i][(j + 2) % 4], d.crossings[k][(l + 2) % 4]))
    if len(labels) != 9:
        return False
    for (i, j), (k, l) in edges:
        if j % 2 == l % 2:
            return True
    return False


def apply_r3(d: PlanarDiagram, tri: Triangle) -> PlanarDiagram:
    """Slide a strand across the opposite crossing of a triangular face."""
    require_valid(d)
    if not r3_applicable(d, tri):
        raise DiagramError("triangle is not in Reidemeister III position")
    rows = [list(c) for c in d.crossings]
    updates: dict[tuple[int, int], int] = {}
    for (i, j), (k, l) in _triangle_strands(d, tri):
        mid = d.crossings[i][j]
        ext_i = d.crossings[i][(j + 2) % 4]
        ext_k = d.crossings[k][(l + 2) % 4]
        updates[(i, (j + 2) % 4)] = mid
        updates[(k, (l + 2) % 4)] = mid
        updates[(i, j)] = ext_k
        updates[(k, l)] = ext_i
    for (i, j), lab in updates.items():
        rows[i][j] = lab
    return _assemble(d, rows, [])


# ---------------------------------------------------------------------- braids
def braid_closure(word: Sequence[int], strands: int | None = None) -> PlanarDiagram:
    """Oriented diagram of the closure of a braid.

    ``word`` holds nonzero integers: ``i`` is the generator crossing
    positions ``i`` and ``i + 1`` positively, ``-i`` negatively.  Strands not
    touched by any generator become free loops.
    """
    if not word:
        raise DiagramError("empty braid word")
    n = strands or max(abs(g) for g in word) + 1
    if any(g == 0 or abs(g) >= n for g in word):
        raise DiagramError("generator out of range")
    current = list(range(1, n + 1))
    nxt = n + 1
    rows: list[tuple[int, int, int, int]] = []
    signs: list[int] = []
    for g in word:
        i = abs(g) - 1
        bl, br = current[i], current[i + 1]
        tl, tr = nxt, nxt + 1
        nxt += 2
        ccw = [bl, br, tr, tl]  # SW SE NE NW
        if g > 0:
            crossing, sign = oriented_crossing(ccw, 1, 0)
        else:
            crossing, sign = oriented_crossing(ccw, 0, 1)
        rows.append(crossing)
        signs.append(sign)
        current[i], current[i + 1] = tl, tr
    rename = {current[p]: p + 1 for p in range(n)}
    touched = {x for c in rows for x in c}
    rows = [tuple(rename.get(x, x) for x in c) for c in rows]
    loops = tuple(p + 1 for p in range(n) if p + 1 not in touched)
    return PlanarDiagram(tuple(rows), tuple(signs), loops)


def random_braid_diagram(rng: random.Random, max_crossings: int = 12, max_strands: int = 4) -> PlanarDiagram:
    """A connected braid closure with at most ``max_crossings`` crossings."""
    while True:
        n = rng.randint(2, max_strands)
        length = rng.randint(n - 1, max_crossings)
        word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)]
        if {abs(g) for g in word} != set(range(1, n)):
            continue
        return braid_closure(word, n)
