"""Combinatorial isomorphisms between planar diagrams.

An isomorphism sends crossing ``i`` to crossing ``perm[i]`` and slot ``j`` to
slot ``(j + shift[i]) % 4``.  The shift is 0 or 2, so the counterclockwise
order and the over/under data are both kept.  Arc labels follow from the
slot map.  Once one crossing is placed, the rest of its connected piece
is forced, so a search seeds one crossing per piece and propagates.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .diagram import FaceId, PlanarDiagram


@dataclass(frozen=True)
class DiagramMap:
    """A structure-preserving map between two diagrams."""

    perm: tuple[int, ...]
    shift: tuple[int, ...]
    arcs: dict[int, int]

    def corner(self, i: int, j: int) -> tuple[int, int]:
        return self.perm[i], (j + self.shift[i]) % 4

    def compose(self, other: DiagramMap) -> DiagramMap:
        """``other`` after ``self``."""
        perm = tuple(other.perm[p] for p in self.perm)
        shift = tuple((s + other.shift[p]) % 4 for p, s in zip(self.perm, self.shift))
        arcs = {a: other.arcs[b] for a, b in self.arcs.items()}
        return DiagramMap(perm, shift, arcs)

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm)) and not any(self.shift) and \
            all(a == b for a, b in self.arcs.items())

    def face_image(self, src: PlanarDiagram, dst: PlanarDiagram, face: FaceId) -> FaceId:
        f = src.face_by_id(face)
        if not f.corners:
            (e,) = face
            img = self.arcs[abs(e)]
            return (img,) if e > 0 else (-img,)
        i, j = min(f.corners)
        return dst.face_of_corner()[self.corner(i, j)]


def _propagate(a: PlanarDiagram, b: PlanarDiagram, seed: int, target: int, shift: int,
               perm: dict[int, int], shifts: dict[int, int], used: set[int], oriented: bool,
               allowed: tuple[int, ...]) -> bool:
    stack = [(seed, target, shift)]
    while stack:
        i, t, s = stack.pop()
        if s not in allowed:
            return False
        if i in perm:
            if perm[i] != t or shifts[i] != s:
                return False
            continue
        if t in used:
            return False
        if oriented and a.signs is not None and b.signs is not None and a.signs[i] != b.signs[t]:
            return False
        perm[i] = t
        shifts[i] = s
        used.add(t)
        for j in range(4):
            pi, pj = a.partner(i, j)
            qi, qj = b.partner(t, (j + s) % 4)
            stack.append((pi, qi, (qj - pj) % 4))
    return True


def _arc_map(a: PlanarDiagram, b: PlanarDiagram, perm: dict[int, int], shifts: dict[int, int]) -> dict[int, int] | None:
    arcs: dict[int, int] = {}
    for i, c in enumerate(a.crossings):
        for j, x in enumerate(c):
            y = b.crossings[perm[i]][(j + shifts[i]) % 4]
            if arcs.setdefault(x, y) != y:
                return None
    if len(set(arcs.values())) != len(arcs):
        return None
    return arcs


def iter_isomorphisms(a: PlanarDiagram, b: PlanarDiagram, oriented: bool = False,
                      shifts_allowed: tuple[int, ...] | None = None) -> Iterator[DiagramMap]:
    """Every crossing-level isomorphism from ``a`` to ``b``.

    Free loops are matched by count only and mapped in sorted order.  With
    ``oriented`` set, crossing signs must agree and only shift 0 is used
    (slot 0 is the incoming under end in both diagrams).
    """
    if len(a.crossings) != len(b.crossings) or len(a.loops) != len(b.loops):
        return
    if shifts_allowed is None:
        shifts_allowed = (0,) if oriented else (0, 2)
    pieces = [p for p, _ in a.pieces() if p]
    loop_map = dict(zip(sorted(a.loops), sorted(b.loops)))
    n = len(b.crossings)

    def search(idx: int, perm: dict[int, int], shifts: dict[int, int], used: set[int]) -> Iterator[DiagramMap]:
        if idx == len(pieces):
            arcs = _arc_map(a, b, perm, shifts)
            if arcs is not None:
                arcs.update(loop_map)
                yield DiagramMap(tuple(perm[i] for i in range(len(a.crossings))),
                                 tuple(shifts[i] for i in range(len(a.crossings))), arcs)
            return
        seed = pieces[idx][0]
        for t in range(n):
            if t in used:
                continue
            for s in shifts_allowed:
                p2, s2, u2 = dict(perm), dict(shifts), set(used)
                if _propagate(a, b, seed, t, s, p2, s2, u2, oriented, shifts_allowed):
                    yield from search(idx + 1, p2, s2, u2)

    yield from search(0, {}, {}, set())


def find_isomorphism(a: PlanarDiagram, b: PlanarDiagram, oriented: bool = False,
                     match_marked: bool = False, match_tags: bool = False) -> DiagramMap | None:
    """First isomorphism from ``a`` to ``b``, optionally respecting marked faces
    (in order) and component tags (by name)."""
    if match_marked and len(a.marked_faces) != len(b.marked_faces):
        return None
    for m in iter_isomorphisms(a, b, oriented):
        if match_marked:
            if any(m.face_image(a, b, tuple(f)) != tuple(g) for f, g in zip(a.marked_faces, b.marked_faces)):
                continue
        if match_tags:
            owner_b = b.component_of_arc()
            tags_b = dict(b.component_tags)
            if any(name not in tags_b or owner_b[m.arcs[arc]] != owner_b[tags_b[name]]
                   for name, arc in a.component_tags):
                continue
        return m
    return None


def automorphisms(d: PlanarDiagram, oriented: bool = False) -> list[DiagramMap]:
    return list(iter_isomorphisms(d, d, oriented))


__all__ = ["DiagramMap", "automorphisms", "find_isomorphism", "iter_isomorphisms"]
