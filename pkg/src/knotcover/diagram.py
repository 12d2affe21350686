"""Planar diagrams in PD form: validation, faces, alternation and kink removal.

Crossing convention: a crossing is a 4-tuple of arc labels listed
counterclockwise.  Slots 0 and 2 hold the under-strand, slots 1 and 3 the
over-strand.  In an oriented diagram slot 0 is the incoming under end and the
crossing sign is +1 exactly when the over-strand runs from slot 3 to slot 1.

A corner ``(i, j)`` is the region of crossing ``i`` between slots ``j`` and
``j + 1``.  Walking a face keeps the face on the right-hand side.
"""

from __future__ import annotations

import json
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

Crossing = tuple[int, int, int, int]
Corner = tuple[int, int]
FaceId = tuple[int, ...]
# cached values that depend only on crossings and loops
_GEOMETRY_KEYS = ("slots", "faces", "corner_face")


class DiagramError(ValueError):
    """Raised when a diagram is malformed or an operation's precondition fails."""


@dataclass(frozen=True)
class Face:
    """A complementary region of a diagram.

    ``ident`` is the cyclic sequence of arcs met while walking the boundary,
    rotated to start at its smallest entry.  Faces of a crossingless loop
    ``e`` are ``(e,)`` and ``(-e,)``.
    """

    ident: FaceId
    corners: frozenset[Corner]

    @property
    def size(self) -> int:
        return len(self.corners)


def canonical_cycle(seq: Sequence[int]) -> FaceId:
    if not seq:
        return ()
    seq = tuple(seq)
    low = min(seq)
    return min(seq[r:] + seq[:r] for r, x in enumerate(seq) if x == low)


@dataclass(frozen=True)
class PlanarDiagram:
    """An immutable planar diagram of a knot or link.

    Attributes:
        crossings: PD crossings following the module convention.
        signs: per-crossing signs for an oriented diagram, or ``None``.
        loops: labels of crossingless unknotted components.
        marked_faces: face identifiers carried along by moves.
        component_tags: ``(name, arc)`` pairs naming the component through ``arc``.
    """

    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...] | None = None
    loops: tuple[int, ...] = ()
    marked_faces: tuple[FaceId, ...] = ()
    component_tags: tuple[tuple[str, int], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossings", tuple(tuple(int(x) for x in c) for c in self.crossings))
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "loops", tuple(self.loops))
        object.__setattr__(self, "marked_faces", tuple(tuple(f) for f in self.marked_faces))
        object.__setattr__(self, "component_tags", tuple((str(n), int(a)) for n, a in self.component_tags))

    # ------------------------------------------------------------------ basics
    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def oriented(self) -> bool:
        return self.signs is not None

    def arcs(self) -> list[int]:
        seen = {x for c in self.crossings for x in c}
        seen.update(self.loops)
        return sorted(seen)

    def slots_of(self) -> dict[int, list[tuple[int, int]]]:
        """Map each arc label to the ``(crossing, slot)`` pairs holding it."""
        if "slots" not in self._cache:
            where: dict[int, list[tuple[int, int]]] = defaultdict(list)
            for i, c in enumerate(self.crossings):
                for j, x in enumerate(c):
                    where[x].append((i, j))
            self._cache["slots"] = dict(where)
        return self._cache["slots"]

    def partner(self, i: int, j: int) -> tuple[int, int]:
        """The other end of the arc leaving crossing ``i`` at slot ``j``."""
        ends = self.slots_of()[self.crossings[i][j]]
        if len(ends) != 2:
            raise DiagramError(f"arc {self.crossings[i][j]} does not have two ends")
        a, b = ends
        return b if a == (i, j) else a

    @classmethod
    def _trusted(cls, crossings: tuple[Crossing, ...], signs: tuple[int, ...] | None, loops: tuple[int, ...],
                 marked_faces: tuple[FaceId, ...], component_tags: tuple[tuple[str, int], ...]) -> PlanarDiagram:
        """Build from parts that are already normalized tuples, skipping the coercion pass."""
        d = object.__new__(cls)
        for name, value in (("crossings", crossings), ("signs", signs), ("loops", loops),
                            ("marked_faces", marked_faces), ("component_tags", component_tags), ("_cache", {})):
            object.__setattr__(d, name, value)
        return d

    def _share_geometry(self, other: PlanarDiagram) -> PlanarDiagram:
        """Hand cached faces and slots to ``other``, which must have the same crossings and loops."""
        for key in _GEOMETRY_KEYS:
            if key in self._cache:
                other._cache.setdefault(key, self._cache[key])
        return other

    def with_marked_faces(self, faces: Iterable[FaceId]) -> PlanarDiagram:
        marked = tuple(tuple(int(x) for x in f) for f in faces)
        return self._share_geometry(
            PlanarDiagram._trusted(self.crossings, self.signs, self.loops, marked, self.component_tags))

    def with_tags(self, tags: Iterable[tuple[str, int]]) -> PlanarDiagram:
        return self._share_geometry(
            PlanarDiagram(self.crossings, self.signs, self.loops, self.marked_faces, tuple(tags)))

    def unoriented(self) -> PlanarDiagram:
        if self.signs is None:
            return self
        return self._share_geometry(
            PlanarDiagram._trusted(self.crossings, None, self.loops, self.marked_faces, self.component_tags))

    # ------------------------------------------------------------------ faces
    def faces(self) -> list[Face]:
        if "faces" in self._cache:
            return self._cache["faces"]
        crossings = self.crossings
        # the walk leaves corner (i, j) along slot j + 1 and turns at the far end
        step: dict[Corner, Corner] = {}
        for ends in self.slots_of().values():
            if len(ends) != 2:
                raise DiagramError(f"arc {crossings[ends[0][0]][ends[0][1]]} does not have two ends")
            a, b = ends
            step[(a[0], (a[1] - 1) % 4)] = b
            step[(b[0], (b[1] - 1) % 4)] = a
        seen: set[Corner] = set()
        out: list[Face] = []
        for i in range(len(crossings)):
            for j in range(4):
                if (i, j) in seen:
                    continue
                corners: list[Corner] = []
                arcs: list[int] = []
                cur = (i, j)
                while cur not in seen:
                    seen.add(cur)
                    corners.append(cur)
                    arcs.append(crossings[cur[0]][(cur[1] + 1) % 4])
                    cur = step[cur]
                out.append(Face(canonical_cycle(arcs), frozenset(corners)))
        for e in self.loops:
            out.append(Face((e,), frozenset()))
            out.append(Face((-e,), frozenset()))
        self._cache["faces"] = out
        return out

    def face_of_corner(self) -> dict[Corner, FaceId]:
        if "corner_face" not in self._cache:
            self._cache["corner_face"] = {c: f.ident for f in self.faces() for c in f.corners}
        return self._cache["corner_face"]

    def face_by_id(self, ident: FaceId) -> Face:
        ident = tuple(ident)
        for f in self.faces():
            if f.ident == ident:
                return f
        raise DiagramError(f"no face {ident}")

    def face_ids(self) -> list[FaceId]:
        return [f.ident for f in self.faces()]

    def face_adjacency(self) -> dict[FaceId, set[FaceId]]:
        """Dual graph: faces sharing an edge."""
        fc = self.face_of_corner()
        adj: dict[FaceId, set[FaceId]] = {f.ident: set() for f in self.faces()}
        for i, c in enumerate(self.crossings):
            for j in range(4):
                # the edge at slot j separates corners j-1 and j
                f1, f2 = fc[(i, (j - 1) % 4)], fc[(i, j)]
                if f1 != f2:
                    adj[f1].add(f2)
                    adj[f2].add(f1)
        for e in self.loops:
            adj[(e,)].add((-e,))
            adj[(-e,)].add((e,))
        return adj

    def edge_faces(self, i: int, j: int) -> tuple[FaceId, FaceId]:
        """Faces to the right and left of the arc leaving crossing ``i`` at slot ``j``."""
        fc = self.face_of_corner()
        return fc[(i, (j - 1) % 4)], fc[(i, j)]

    # ------------------------------------------------------------------ pieces and components
    def pieces(self) -> list[tuple[list[int], list[int]]]:
        """Connected pieces as ``(crossing indices, loop labels)``."""
        parent = list(range(len(self.crossings)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ends in self.slots_of().values():
            if len(ends) == 2:
                a, b = find(ends[0][0]), find(ends[1][0])
                parent[a] = b
        groups: dict[int, list[int]] = defaultdict(list)
        for i in range(len(self.crossings)):
            groups[find(i)].append(i)
        out = [(sorted(g), []) for g in groups.values()]
        out.extend(([], [e]) for e in self.loops)
        return out

    def components(self) -> list[list[tuple[int, int, int]]]:
        """Closed strands as lists of passes ``(crossing, slot_in, slot_out)``.

        Loops appear as empty lists.  For oriented diagrams each strand is
        traversed along its orientation.
        """
        if "components" in self._cache:
            return self._cache["components"]
        used: set[tuple[int, int]] = set()
        comps: list[list[tuple[int, int, int]]] = []
        starts = []
        for i in range(len(self.crossings)):
            starts.append((i, 0))
            starts.append((i, 1 if self.signs is None or self.signs[i] < 0 else 3))
        for start in starts:
            if start in used:
                continue
            comp = []
            cur = start
            while cur not in used:
                i, j = cur
                k = (j + 2) % 4
                used.add((i, j))
                used.add((i, k))
                comp.append((i, j, k))
                cur = self.partner(i, k)
            comps.append(comp)
        comps.extend([] for _ in self.loops)
        self._cache["components"] = comps
        return comps

    def component_arcs(self) -> list[list[int]]:
        """Arc labels of each component in traversal order."""
        out = []
        for comp in self.components():
            out.append([self.crossings[i][k] for i, _, k in comp])
        for idx, e in enumerate(self.loops):
            out[len(out) - len(self.loops) + idx] = [e]
        return out

    def component_of_arc(self) -> dict[int, int]:
        m = {}
        for idx, arcs in enumerate(self.component_arcs()):
            for a in arcs:
                m[a] = idx
        return m

    def tagged_component(self, name: str) -> int:
        for n, arc in self.component_tags:
            if n == name:
                return self.component_of_arc()[arc]
        raise DiagramError(f"no component tagged {name!r}")

    # ------------------------------------------------------------------ orientation
    def writhe(self) -> int:
        if self.signs is None:
            raise DiagramError("writhe needs an oriented diagram")
        return sum(self.signs)

    def orientation_problems(self) -> list[str]:
        if self.signs is None:
            return []
        problems = []
        if len(self.signs) != len(self.crossings):
            return ["sign count differs from crossing count"]
        heads: dict[int, int] = defaultdict(int)
        for i, (c, s) in enumerate(zip(self.crossings, self.signs)):
            if s not in (1, -1):
                problems.append(f"crossing {i} sign {s} is not +1 or -1")
                continue
            heads[c[0]] += 1
            heads[c[3] if s > 0 else c[1]] += 1
        for x, n in heads.items():
            if n != 1:
                problems.append(f"arc {x} enters crossings {n} times")
        return problems

    # ------------------------------------------------------------------ JSON
    def to_json_dict(self) -> dict:
        out: dict = {"crossings": [list(c) for c in self.crossings]}
        if self.signs is not None:
            out["orientations"] = list(self.signs)
        if self.loops:
            out["loops"] = list(self.loops)
        if self.marked_faces:
            out["marked_faces"] = [list(f) for f in self.marked_faces]
        if self.component_tags:
            out["components"] = {n: a for n, a in self.component_tags}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> PlanarDiagram:
        if not isinstance(data, Mapping) or "crossings" not in data:
            raise DiagramError("diagram JSON needs a 'crossings' list")
        try:
            crossings = []
            for c in data["crossings"]:
                if len(c) != 4:
                    raise DiagramError(f"crossing {c} does not have 4 slots")
                crossings.append(tuple(int(x) for x in c))
            signs = data.get("orientations")
            return cls(
                tuple(crossings),
                None if signs is None else tuple(int(s) for s in signs),
                tuple(int(x) for x in data.get("loops", ())),
                tuple(tuple(int(x) for x in f) for f in data.get("marked_faces", ())),
                tuple((str(n), int(a)) for n, a in dict(data.get("components", {})).items()),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DiagramError):
                raise
            raise DiagramError(f"malformed diagram JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> PlanarDiagram:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)


# ---------------------------------------------------------------------- validation
@dataclass
class ValidationReport:
    checks: dict[str, bool]
    messages: list[str]
    faces: list[FaceId]
    vertices: int
    edges: int

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "checks": dict(self.checks),
            "messages": list(self.messages),
            "V": self.vertices,
            "E": self.edges,
            "F": len(self.faces),
            "faces": [list(f) for f in self.faces],
        }


def validate(d: PlanarDiagram) -> ValidationReport:
    """Check arc multiplicity, planarity, over/under shape and orientation."""
    checks: dict[str, bool] = {}
    msgs: list[str] = []
    counts: dict[int, int] = defaultdict(int)
    for c in d.crossings:
        for x in c:
            counts[x] += 1
    bad = sorted(x for x, n in counts.items() if n != 2)
    clash = sorted(set(d.loops) & set(counts))
    if len(set(d.loops)) != len(d.loops):
        clash.append(-1)
    checks["arc multiplicity"] = not bad and not clash
    if bad:
        msgs.append("arc multiplicity: arcs " + ", ".join(map(str, bad)) + " do not appear exactly twice")
    if clash:
        msgs.append("arc multiplicity: loop labels clash with crossing arcs")
    checks["over/under"] = all(len(c) == 4 for c in d.crossings)
    faces: list[FaceId] = []
    v = len(d.crossings)
    e = 2 * v
    if checks["arc multiplicity"]:
        fs = d.faces()
        faces = [f.ident for f in fs]
        euler_ok = True
        for crossings, loops in d.pieces():
            if loops:
                continue
            cs = set(crossings)
            nf = sum(1 for f in fs if f.corners and next(iter(f.corners))[0] in cs)
            if len(cs) - 2 * len(cs) + nf != 2:
                euler_ok = False
                msgs.append(f"euler: piece with {len(cs)} crossings has {nf} faces")
        checks["euler"] = euler_ok
        checks["distinct face ids"] = len(set(faces)) == len(faces)
        if not checks["distinct face ids"]:
            msgs.append("face identifiers are not distinct")
        known = set(faces)
        missing = [f for f in d.marked_faces if tuple(f) not in known]
        checks["marked faces"] = not missing
        if missing:
            msgs.append(f"marked faces not present: {missing}")
    else:
        checks["euler"] = False
    problems = d.orientation_problems() if checks["arc multiplicity"] else []
    checks["orientation"] = not problems
    msgs.extend("orientation: " + p for p in problems)
    return ValidationReport(checks, msgs, faces, v, e)


def require_valid(d: PlanarDiagram) -> None:
    if d._cache.get("valid"):
        return
    rep = validate(d)
    if not rep.ok:
        raise DiagramError("invalid diagram: " + "; ".join(rep.messages))
    d._cache["valid"] = True


# ---------------------------------------------------------------------- alternation
def is_alternating(d: PlanarDiagram) -> bool:
    """True when every strand meets over- and under-passes alternately."""
    require_valid(d)
    for comp in d.components():
        kinds = [j % 2 for _, j, _ in comp]
        n = len(kinds)
        if any(kinds[t] == kinds[(t + 1) % n] for t in range(n)):
            return False
    return True


# ---------------------------------------------------------------------- nugatory crossings
def nugatory_corner(d: PlanarDiagram, i: int) -> int | None:
    """Return ``j`` if corners ``j`` and ``j + 2`` of crossing ``i`` share a face."""
    fc = d.face_of_corner()
    for j in (0, 1):
        if fc[(i, j)] == fc[(i, j + 2)]:
            return j
    return None


def find_nugatory(d: PlanarDiagram) -> set[int]:
    """Crossings met twice by the boundary walk of a single face."""
    require_valid(d)
    return _nugatory(d)


def _nugatory(d: PlanarDiagram) -> set[int]:
    return {i for i in range(len(d.crossings)) if nugatory_corner(d, i) is not None}


def _reachable(d: PlanarDiagram, start_arcs: Iterable[int], blocked: int) -> set[int]:
    slots = d.slots_of()
    seen: set[int] = set()
    stack = list(start_arcs)
    seen_arcs = set(stack)
    while stack:
        x = stack.pop()
        for i, _ in slots.get(x, ()):
            if i == blocked or i in seen:
                continue
            seen.add(i)
            for y in d.crossings[i]:
                if y not in seen_arcs:
                    seen_arcs.add(y)
                    stack.append(y)
    return seen


def reduce_r1(d: PlanarDiagram, c: int) -> PlanarDiagram:
    """Remove nugatory crossing ``c`` by untwisting one side of it.

    Marked faces are carried to their images.  Arc labels of merged arcs
    become the smaller label.
    """
    j = nugatory_corner(d, c) if 0 <= c < len(d.crossings) else None
    if j is None:
        raise DiagramError(f"crossing {c} is not nugatory")
    return _remove_nugatory(d, c, j)[0]


def _remove_nugatory(d: PlanarDiagram, c: int, j: int) -> tuple[PlanarDiagram, dict[FaceId, FaceId]]:
    x = d.crossings[c]
    # side one holds slots j+1, j+2; it gets mirrored
    side_one = _reachable(d, [x[(j + 1) % 4], x[(j + 2) % 4]], c)
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            parent[hi] = lo

    union(x[j], x[(j + 2) % 4])
    union(x[(j + 1) % 4], x[(j + 3) % 4])

    new_crossings: list[Crossing] = []
    new_signs: list[int] = []
    corner_map: dict[Corner, Corner] = {}
    for i, cr in enumerate(d.crossings):
        if i == c:
            continue
        ni = len(new_crossings)
        sign = d.signs[i] if d.signs is not None else None
        if i in side_one:
            # mirror: reverse the cyclic order and swap over with under
            pos = [s ^ 1 for s in range(4)]  # new position of old slot s before rotation
            rot = 0
            if sign is not None:
                # new slot 0 must be the incoming end of the old over-strand
                rot = pos[3] if sign > 0 else pos[1]
            new = [0] * 4
            for s in range(4):
                new[(pos[s] - rot) % 4] = cr[s]
            for cj in range(4):
                corner_map[(i, cj)] = (ni, (pos[(cj + 1) % 4] - rot) % 4)
            new_crossings.append(tuple(new))
        else:
            new_crossings.append(cr)
            for cj in range(4):
                corner_map[(i, cj)] = (ni, cj)
        if sign is not None:
            new_signs.append(sign)
    new_crossings = [tuple(find(a) for a in cr) for cr in new_crossings]
    used = {a for cr in new_crossings for a in cr}
    new_loops = list(d.loops)
    freed = {find(a) for a in x} - used
    new_loops.extend(sorted(freed))

    old_faces = d.faces()
    old_fc = d.face_of_corner()
    f_face = old_fc[(c, j)]
    g_face = old_fc[(c, (j + 1) % 4)]
    h_face = old_fc[(c, (j + 3) % 4)]
    nd = PlanarDiagram._trusted(tuple(new_crossings), tuple(new_signs) if d.signs is not None else None,
                                tuple(new_loops), (), tuple((n, find(a)) for n, a in d.component_tags))
    new_fc = nd.face_of_corner()

    def image(face: Face) -> FaceId | None:
        for corner in face.corners:
            if corner[0] != c:
                return new_fc[corner_map[corner]]
        return None

    fmap: dict[FaceId, FaceId] = {}
    by_id = {f.ident: f for f in old_faces}
    for f in old_faces:
        if not f.corners:
            fmap[f.ident] = f.ident
            continue
        if f.ident in (g_face, h_face):
            continue
        img = image(f)
        if img is not None:
            fmap[f.ident] = img
    merged = image(by_id[g_face]) or image(by_id[h_face])
    if f_face not in fmap or merged is None:
        # the crossing was alone in its piece: it became a free loop
        (loop,) = freed
        fmap.setdefault(f_face, (loop,))
        merged = merged or (-loop,)
    fmap[g_face] = merged
    fmap[h_face] = merged
    marked = tuple(fmap[tuple(f)] for f in d.marked_faces)
    nd = nd._share_geometry(PlanarDiagram._trusted(nd.crossings, nd.signs, nd.loops, marked, nd.component_tags))
    if d._cache.get("valid"):
        nd._cache["valid"] = True  # removing a nugatory crossing keeps a valid diagram valid
    return nd, fmap


def remove_nugatory_tracked(d: PlanarDiagram, c: int) -> tuple[PlanarDiagram, dict[FaceId, FaceId]]:
    """Like :func:`reduce_r1` but also returns the old-to-new face map."""
    j = nugatory_corner(d, c)
    if j is None:
        raise DiagramError(f"crossing {c} is not nugatory")
    return _remove_nugatory(d, c, j)


@dataclass(frozen=True)
class UnknotCheck:
    is_unknot: bool
    log: tuple[int, ...]
    remaining: PlanarDiagram


def alternating_unknot_check(d: PlanarDiagram) -> UnknotCheck:
    """Strip nugatory crossings until none are left.

    For a connected alternating knot diagram this decides unknottedness: a
    reduced alternating diagram with crossings is never the unknot.  The log
    lists the index (in the diagram current at that step) of each removed
    crossing.
    """
    if "unknot" in d._cache:
        return d._cache["unknot"]
    require_valid(d)
    if not is_alternating(d):
        raise DiagramError("diagram is not alternating")
    if len(d.components()) != 1:
        raise DiagramError("diagram has more than one component")
    log: list[int] = []
    cur = d
    while cur.crossings:
        nug = sorted(_nugatory(cur))
        if not nug:
            break
        log.append(nug[0])
        cur = reduce_r1(cur, nug[0])
    result = UnknotCheck(not cur.crossings, tuple(log), cur)
    d._cache["unknot"] = result
    return result


# ---------------------------------------------------------------------- construction helpers
def relabel(d: PlanarDiagram, start: int = 1) -> PlanarDiagram:
    """Renumber arcs consecutively along components, keeping marked faces."""
    order: list[int] = []
    for arcs in d.component_arcs():
        for a in arcs:
            if a not in order:
                order.append(a)
    m = {a: start + t for t, a in enumerate(order)}
    crossings = tuple(tuple(m[a] for a in c) for c in d.crossings)
    loops = tuple(m[a] for a in d.loops)
    nd = PlanarDiagram(crossings, d.signs, loops, (), tuple((n, m[a]) for n, a in d.component_tags))
    marked = []
    for f in d.marked_faces:
        marked.append(_translate_face(d, nd, tuple(f), m))
    return nd.with_marked_faces(marked)


def _translate_face(old: PlanarDiagram, new: PlanarDiagram, ident: FaceId, m: Mapping[int, int]) -> FaceId:
    face = old.face_by_id(ident)
    if face.corners:
        corner = next(iter(face.corners))
        return new.face_of_corner()[corner]
    (e,) = ident
    return (m[e],) if e > 0 else (-m[-e],)


def oriented_crossing(ccw: Sequence[int], in_under: int, in_over: int) -> tuple[Crossing, int]:
    """Build a crossing from labels in counterclockwise order.

    ``in_under`` and ``in_over`` are positions in ``ccw`` of the incoming
    under and incoming over ends.  Returns the rotated tuple and its sign.
    """
    if (in_over - in_under) % 2 == 0:
        raise DiagramError("incoming over end must be adjacent to the under-strand")
    r = in_under
    crossing = tuple(ccw[(r + t) % 4] for t in range(4))
    sign = 1 if (in_over - r) % 4 == 3 else -1
    return crossing, sign


def disjoint_union(a: PlanarDiagram, b: PlanarDiagram) -> PlanarDiagram:
    """Place two diagrams side by side; labels of ``b`` are shifted."""
    shift = max([0, *a.arcs()])
    m = {x: x + shift for x in b.arcs()}
    signs = None
    if a.signs is not None and b.signs is not None:
        signs = a.signs + b.signs
    return PlanarDiagram(
        a.crossings + tuple(tuple(m[x] for x in c) for c in b.crossings),
        signs,
        a.loops + tuple(m[x] for x in b.loops),
        (),
        a.component_tags + tuple((n, m[x]) for n, x in b.component_tags),
    )


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Switch every crossing, keeping the orientation of each strand."""
    crossings = []
    signs = []
    rot = []
    for i, (a, b, c, e) in enumerate(d.crossings):
        if d.signs is None or d.signs[i] < 0:
            crossings.append((b, c, e, a))
            rot.append(1)
        else:
            # new under-strand is the old over-strand, entering at slot 3
            crossings.append((e, a, b, c))
            rot.append(3)
        if d.signs is not None:
            signs.append(-d.signs[i])
    nd = PlanarDiagram(tuple(crossings), tuple(signs) if d.signs is not None else None,
                       d.loops, (), d.component_tags)
    return nd.with_marked_faces(_translate_faces_rotated(d, nd, rot))


def _translate_faces_rotated(old: PlanarDiagram, new: PlanarDiagram, rot: Sequence[int]) -> list[FaceId]:
    """Carry marked faces across a diagram whose crossing ``i`` was rotated by ``rot[i]``."""
    out = []
    for f in old.marked_faces:
        face = old.face_by_id(tuple(f))
        if not face.corners:
            out.append(tuple(f))
            continue
        i, j = next(iter(face.corners))
        out.append(new.face_of_corner()[(i, (j - rot[i]) % 4)])
    return out


def orient_components(d: PlanarDiagram, reverse: Iterable[int] = ()) -> PlanarDiagram:
    """Orient an unoriented diagram along its traversal order.

    Components whose indices are in ``reverse`` are traversed backwards.
    Marked faces and tags are preserved.
    """
    rev = set(reverse)
    comps = d.components()
    direction: dict[tuple[int, int], int] = {}  # (crossing, slot) -> +1 incoming, -1 outgoing
    for idx, comp in enumerate(comps):
        for i, jin, jout in comp:
            if idx in rev:
                jin, jout = jout, jin
            direction[(i, jin)] = 1
            direction[(i, jout)] = -1
    crossings = []
    signs = []
    rot = []
    for i, c in enumerate(d.crossings):
        in_under = 0 if direction[(i, 0)] == 1 else 2
        in_over = 1 if direction[(i, 1)] == 1 else 3
        nc, s = oriented_crossing(c, in_under, in_over)
        crossings.append(nc)
        signs.append(s)
        rot.append(in_under)
    nd = PlanarDiagram(tuple(crossings), tuple(signs), d.loops, (), d.component_tags)
    return nd.with_marked_faces(_translate_faces_rotated(d, nd, rot))
