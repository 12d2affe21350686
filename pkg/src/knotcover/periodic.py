"""Periodic diagrams, their quotients, and the pinwheel normal form.

Geometric conventions
---------------------
A tangle sits in a wedge-shaped disk next to the axis.  Going
counterclockwise around the disk boundary the endpoints are met in the order
``I_1 .. I_k, O_k .. O_1``.  The axis lies beyond the boundary segment from
``O_1`` to ``I_1``, and the point at infinity beyond ``I_k .. O_k``.  Closing
the tangle joins ``O_j`` to ``I_j`` by an arc running counterclockwise around
the axis.  A periodic diagram glues ``O_j`` of copy ``m`` to ``I_j`` of copy
``m + 1``.

A face walk keeps its face on the right.  So an arc travelled
counterclockwise around the axis has the axis side on its left.

The pinwheel diagram of ``QuotientNormalForm(k, boxes, mirror)`` has closure
arcs ``r_1 .. r_k``.  The axis face is the monogon bounded by ``r_1`` and the
point at infinity is the monogon bounded by ``r_k``.  Box ``i`` is a
horizontal twist of ``boxes[i-1]`` crossings joining ``r_i`` and ``r_{i+1}``.
Odd boxes sit below the chain and even boxes above it.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from .diagram import (
    DiagramError,
    FaceId,
    PlanarDiagram,
    alternating_unknot_check,
    is_alternating,
    nugatory_corner,
    remove_nugatory_tracked,
    require_valid,
    _nugatory,
    _reachable,
)
from .iso import DiagramMap, iter_isomorphisms
from .moves import MoveRecord


class QuotientError(ValueError):
    """Base class for errors raised while normalizing quotient diagrams."""


class NotAlternating(QuotientError):
    pass


class InternalNugatory(QuotientError):
    """A nugatory crossing whose circle does not separate the axis from infinity."""


class NontrivialKnot(QuotientError):
    """The knot is not the unknot, or no R-I loop passes through the axis face."""


class PeriodError(ValueError):
    """The recorded automorphism is not a rotation of the right order."""


# ---------------------------------------------------------------------- dual graph
def dual_distances(d: PlanarDiagram, start: FaceId) -> dict[FaceId, int]:
    adj = d.face_adjacency()
    seen = {start: 0}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for g in sorted(adj.get(f, ())):
            if g not in seen:
                seen[g] = seen[f] + 1
                queue.append(g)
    return seen


def face_distance(d: PlanarDiagram, a: FaceId, b: FaceId) -> int:
    dist = dual_distances(d, a)
    if b not in dist:
        raise DiagramError(f"faces {a} and {b} are not connected in the dual graph")
    return dist[b]


# ---------------------------------------------------------------------- axis closures
@dataclass(frozen=True)
class AxisClosureDiagram:
    """A knot diagram with the two points where the axis meets the sphere."""

    diagram: PlanarDiagram
    axis_face: FaceId
    infinity_face: FaceId
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis_face", tuple(self.axis_face))
        object.__setattr__(self, "infinity_face", tuple(self.infinity_face))
        d = self.diagram
        if d.marked_faces != (self.axis_face, self.infinity_face):
            object.__setattr__(self, "diagram", d.with_marked_faces((self.axis_face, self.infinity_face)))

    def check(self) -> None:
        require_valid(self.diagram)
        if self.axis_face == self.infinity_face:
            raise DiagramError("axis face and infinity face coincide")
        if self.k < 1:
            raise DiagramError("k must be positive")

    @classmethod
    def from_diagram(cls, d: PlanarDiagram, axis_face: FaceId, infinity_face: FaceId) -> AxisClosureDiagram:
        """Take ``k`` as the dual distance between the two faces."""
        d = d.with_marked_faces((tuple(axis_face), tuple(infinity_face)))
        require_valid(d)
        return cls(d, tuple(axis_face), tuple(infinity_face), face_distance(d, tuple(axis_face), tuple(infinity_face)))

    def to_json_dict(self) -> dict:
        out = self.diagram.to_json_dict()
        out.pop("marked_faces", None)
        out["axis_face"] = list(self.axis_face)
        out["infinity_face"] = list(self.infinity_face)
        out["k"] = self.k
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> AxisClosureDiagram:
        if "axis_face" not in data:
            raise DiagramError("axis closure JSON needs an 'axis_face'")
        extra = ("axis_face", "infinity_face", "k")
        d = PlanarDiagram.from_json_dict({key: v for key, v in data.items() if key not in extra})
        try:
            axis = tuple(int(x) for x in data["axis_face"])
            if "infinity_face" in data:
                inf = tuple(int(x) for x in data["infinity_face"])
            else:
                inf = _outer_face(d, axis)
        except (TypeError, ValueError) as exc:
            raise DiagramError(f"malformed face in axis closure JSON: {exc}") from exc
        out = cls.from_diagram(d, axis, inf)
        if "k" in data and int(data["k"]) < out.k:
            raise DiagramError(f"k={data['k']} is below the axis-to-infinity distance {out.k}")
        if "k" in data:
            out = cls(out.diagram, out.axis_face, out.infinity_face, int(data["k"]))
        return out

    @classmethod
    def from_json(cls, text: str) -> AxisClosureDiagram:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, Mapping):
            raise DiagramError("axis closure JSON must be an object")
        return cls.from_json_dict(data)


def _outer_face(d: PlanarDiagram, axis: FaceId) -> FaceId:
    """Default infinity face: the largest face, ties broken by identifier."""
    faces = [f for f in d.faces() if f.ident != axis]
    if not faces:
        raise DiagramError("diagram has no face besides the axis face")
    return max(faces, key=lambda f: (len(f.ident), tuple(-x for x in f.ident))).ident


# ---------------------------------------------------------------------- tangles
@dataclass(frozen=True)
class TangleDiagram:
    """Crossings plus the arc labels at the boundary points ``I_j`` and ``O_j``.

    Interior arcs appear in two crossing slots.  A boundary arc appears in
    one crossing slot and in ``inputs`` or ``outputs``.  The only strand
    allowed to avoid crossings is the single strand of the trivial
    one-strand tangle.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    signs: tuple[int, ...] | None = None

    @property
    def k(self) -> int:
        return len(self.inputs)

    def check(self) -> None:
        if not self.inputs or len(self.inputs) != len(self.outputs):
            raise DiagramError("a tangle needs k inputs and k outputs with k >= 1")
        if not self.crossings:
            if self.k != 1 or self.inputs != self.outputs:
                raise DiagramError("the only crossingless tangle is the single through strand")
            return
        counts: dict[int, int] = {}
        for c in self.crossings:
            for x in c:
                counts[x] = counts.get(x, 0) + 1
        boundary = list(self.inputs) + list(self.outputs)
        if len(set(boundary)) != len(boundary):
            raise DiagramError("boundary labels must be distinct")
        for x in boundary:
            if counts.get(x) != 1:
                raise DiagramError(f"boundary arc {x} must meet exactly one crossing slot")
        inner = [x for x, n in counts.items() if x not in set(boundary)]
        if any(counts[x] != 2 for x in inner):
            raise DiagramError("interior arcs must meet exactly two crossing slots")
        require_valid(closure_diagram(self))

    def relabeled(self, offset: int) -> tuple[list[tuple[int, ...]], list[int], list[int]]:
        crossings = [tuple(x + offset for x in c) for c in self.crossings]
        return crossings, [x + offset for x in self.inputs], [x + offset for x in self.outputs]

    def to_json_dict(self) -> dict:
        out: dict = {"crossings": [list(c) for c in self.crossings],
                     "inputs": list(self.inputs), "outputs": list(self.outputs)}
        if self.signs is not None:
            out["orientations"] = list(self.signs)
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> TangleDiagram:
        try:
            crossings = tuple(tuple(int(x) for x in c) for c in data["crossings"])
            if any(len(c) != 4 for c in crossings):
                raise DiagramError("each crossing needs 4 slots")
            signs = data.get("orientations")
            t = cls(crossings, tuple(int(x) for x in data["inputs"]), tuple(int(x) for x in data["outputs"]),
                    None if signs is None else tuple(int(s) for s in signs))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DiagramError):
                raise
            raise DiagramError(f"malformed tangle JSON: {exc}") from exc
        t.check()
        return t


def closure_diagram(t: TangleDiagram) -> PlanarDiagram:
    """Join each ``O_j`` to ``I_j``; labels of ``I_j`` survive."""
    if not t.crossings:
        return PlanarDiagram((), None, (t.inputs[0],))
    rename = dict(zip(t.outputs, t.inputs))
    crossings = tuple(tuple(rename.get(x, x) for x in c) for c in t.crossings)
    return PlanarDiagram(crossings, t.signs)


def _axis_faces_at(d: PlanarDiagram, t: TangleDiagram) -> tuple[FaceId, FaceId]:
    """Axis and infinity faces of a diagram that keeps the crossing slots of ``t``.

    Slot positions are read in the tangle, where each input arc has a
    single crossing end.
    """
    ends = {}
    for i, c in enumerate(t.crossings):
        for j, x in enumerate(c):
            ends[x] = (i, j)
    i, s = ends[t.inputs[0]]
    axis = d.edge_faces(i, s)[0]
    i, s = ends[t.inputs[-1]]
    inf = d.edge_faces(i, s)[1]
    return axis, inf


def closure(t: TangleDiagram) -> AxisClosureDiagram:
    """The tangle closed by ``k`` arcs around the axis."""
    t.check()
    d = closure_diagram(t)
    if not d.crossings:
        e = d.loops[0]
        return AxisClosureDiagram(d, (e,), (-e,), 1)
    axis, inf = _axis_faces_at(d, t)
    return AxisClosureDiagram(d, axis, inf, t.k)


def cut_to_tangle(a: AxisClosureDiagram) -> TangleDiagram:
    """Cut along a shortest dual path from the axis face to the infinity face.

    The ``j``-th arc crossed becomes the pair ``(I_j, O_j)``; ``I_j`` keeps the
    arc's label and ``O_j`` gets a fresh one, so closing the result gives
    back the same labelled diagram.
    """
    d = a.diagram
    if not d.crossings:
        (e,) = d.loops
        return TangleDiagram((), (e,), (e,))
    dist = dual_distances(d, a.infinity_face)
    path = [a.axis_face]
    while path[-1] != a.infinity_face:
        here = path[-1]
        nxt = min(g for g in d.face_adjacency()[here] if dist[g] == dist[here] - 1)
        path.append(nxt)
    rows = [list(c) for c in d.crossings]
    top = max(d.arcs())
    inputs, outputs = [], []
    used: set[int] = set()
    for step, (near, far) in enumerate(zip(path, path[1:])):
        choice = None
        for i, c in enumerate(d.crossings):
            for s in range(4):
                if c[s] in used:
                    continue
                right, left = d.edge_faces(i, s)
                if left == near and right == far:
                    choice = (i, s)
                    break
            if choice:
                break
        if choice is None:
            raise DiagramError("no arc separates consecutive faces on the cut path")
        i, s = choice
        label = d.crossings[i][s]
        used.add(label)
        fresh = top + 1 + step
        rows[i][s] = fresh  # leaving here runs counterclockwise: this is the output end
        inputs.append(label)
        outputs.append(fresh)
    return TangleDiagram(tuple(tuple(r) for r in rows), tuple(inputs), tuple(outputs), d.signs)


# ---------------------------------------------------------------------- periodic diagrams
@dataclass(frozen=True)
class PeriodicDiagram:
    """A diagram with a combinatorial rotation of order ``n``.

    ``axis_faces`` are the two faces fixed by the rotation, axis first.  A
    crossingless circle is accepted for every ``n`` as the rotation about its
    centre; it carries an empty automorphism.
    """

    diagram: PlanarDiagram
    n: int
    automorphism: DiagramMap
    axis_faces: tuple[FaceId, FaceId]
    k: int | None = None

    def power(self, m: int) -> DiagramMap:
        g = self.automorphism
        out = DiagramMap(tuple(range(len(g.perm))), (0,) * len(g.perm), {a: a for a in g.arcs})
        for _ in range(m % self.n):
            out = out.compose(g)
        return out

    def check(self) -> None:
        require_valid(self.diagram)
        if self.n < 2:
            raise PeriodError("period order must be at least 2")
        if not self.diagram.crossings:
            if len(self.diagram.loops) != 1:
                raise PeriodError("a crossingless periodic diagram must be a single circle")
            return
        if not _is_automorphism(self.diagram, self.automorphism):
            raise PeriodError("the recorded map is not an automorphism of the diagram")
        problem = rotation_problem(self.diagram, self.automorphism, self.n)
        if problem:
            raise PeriodError(problem)
        fixed = fixed_faces(self.diagram, self.automorphism)
        if set(fixed) != set(self.axis_faces):
            raise PeriodError("axis faces are not the fixed faces of the rotation")

    def to_json_dict(self) -> dict:
        out = self.diagram.to_json_dict()
        out.pop("marked_faces", None)
        out.update({"n": self.n, "axis_face": list(self.axis_faces[0]), "infinity_face": list(self.axis_faces[1]),
                    "rotation": {"perm": list(self.automorphism.perm), "shift": list(self.automorphism.shift)}})
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> PeriodicDiagram:
        """Read the output of :meth:`to_json_dict`; the arc map is rebuilt from the crossing map."""
        d = PlanarDiagram.from_json_dict({key: v for key, v in data.items()
                                          if key in ("crossings", "orientations", "loops")})
        try:
            n = int(data["n"])
            perm = tuple(int(i) for i in data["rotation"]["perm"])
            shift = tuple(int(s) for s in data["rotation"]["shift"])
            axis = tuple(int(x) for x in data["axis_face"])
            inf = tuple(int(x) for x in data["infinity_face"])
            k = int(data["k"]) if "k" in data else None
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed periodic diagram JSON: {exc}") from exc
        size = len(d.crossings)
        if sorted(perm) != list(range(size)) or len(shift) != size:
            raise PeriodError("rotation is not a permutation of the crossings")
        arcs = {e: e for e in d.loops}
        for i, row in enumerate(d.crossings):
            for j, x in enumerate(row):
                y = d.crossings[perm[i]][(j + shift[i]) % 4]
                if arcs.setdefault(x, y) != y:
                    raise PeriodError(f"rotation sends arc {x} to two different arcs")
        p = cls(d.with_marked_faces((axis, inf)), n, DiagramMap(perm, shift, arcs), (axis, inf), k)
        p.check()
        return p


def _is_automorphism(d: PlanarDiagram, g: DiagramMap) -> bool:
    if sorted(g.perm) != list(range(len(d.crossings))):
        return False
    for i, c in enumerate(d.crossings):
        t = g.perm[i]
        for j, x in enumerate(c):
            if g.arcs.get(x) != d.crossings[t][(j + g.shift[i]) % 4]:
                return False
        if d.signs is not None and d.signs[i] != d.signs[t]:
            return False
    return True


def fixed_faces(d: PlanarDiagram, g: DiagramMap) -> list[FaceId]:
    return [f.ident for f in d.faces() if g.face_image(d, d, f.ident) == f.ident]


def rotation_problem(d: PlanarDiagram, g: DiagramMap, n: int) -> str | None:
    """Why ``g`` is not a rotation of order ``n`` fixing two faces, or ``None``."""
    power = g
    for m in range(1, n):
        if any(p == i for i, p in enumerate(power.perm)):
            return f"power {m} fixes a crossing"
        if any(a == b for a, b in power.arcs.items()):
            return f"power {m} fixes an arc"
        fixed = fixed_faces(d, power)
        if len(fixed) != 2:
            return f"power {m} fixes {len(fixed)} faces instead of 2"
        power = power.compose(g)
    if not power.is_identity():
        return f"the map does not have order {n}"
    return None


def build_periodic(t: TangleDiagram, n: int) -> PeriodicDiagram:
    """``n`` copies of ``t`` placed around the axis, copy ``m`` feeding copy ``m + 1``."""
    if n < 2:
        raise PeriodError("period order must be at least 2")
    t.check()
    if not t.crossings:
        e = t.inputs[0]
        d = PlanarDiagram((), None, (e,))
        return PeriodicDiagram(d, n, DiagramMap((), (), {e: e}), ((e,), (-e,)), 1)
    labels = sorted({x for c in t.crossings for x in c})
    width = max(labels) + 1
    out_to_in = dict(zip(t.outputs, t.inputs))

    def lab(x: int, m: int) -> int:
        if x in out_to_in:
            return out_to_in[x] + width * ((m + 1) % n)
        return x + width * m

    crossings = []
    signs = [] if t.signs is not None else None
    for m in range(n):
        for c in t.crossings:
            crossings.append(tuple(lab(x, m) for x in c))
        if signs is not None:
            signs.extend(t.signs)
    d = PlanarDiagram(tuple(crossings), None if signs is None else tuple(signs))
    c = len(t.crossings)
    perm = tuple(((i // c + 1) % n) * c + i % c for i in range(n * c))
    arcs = {}
    for x in d.arcs():
        base, m = x % width, x // width
        arcs[x] = base + width * ((m + 1) % n)
    g = DiagramMap(perm, (0,) * (n * c), arcs)
    axis, inf = _axis_faces_at(d, t)
    p = PeriodicDiagram(d.with_marked_faces((axis, inf)), n, g, (axis, inf), t.k)
    p.check()
    return p


def quotient(p: PeriodicDiagram) -> AxisClosureDiagram:
    """Identify each orbit of crossings and arcs into one."""
    try:
        p.check()
    except DiagramError as exc:
        raise PeriodError(str(exc)) from exc
    d = p.diagram
    if not d.crossings:
        e = d.loops[0]
        return AxisClosureDiagram(PlanarDiagram((), None, (e,)), (e,), (-e,), 1)
    g = p.automorphism
    rep: dict[int, tuple[int, int]] = {}
    for i in range(len(d.crossings)):
        if i in rep:
            continue
        cur, shift = i, 0
        for _ in range(p.n):
            rep[cur] = (i, shift)  # slot j at i is slot j + shift at cur
            shift = (shift + g.shift[cur]) % 4
            cur = g.perm[cur]
    arc_rep: dict[int, int] = {}
    for x in d.arcs():
        if x in arc_rep:
            continue
        y = x
        orbit = []
        for _ in range(p.n):
            orbit.append(y)
            y = g.arcs[y]
        lo = min(orbit)
        for y in orbit:
            arc_rep[y] = lo
    reps = sorted({r for r, _ in rep.values()})
    index = {r: t for t, r in enumerate(reps)}
    crossings = tuple(tuple(arc_rep[x] for x in d.crossings[r]) for r in reps)
    signs = None if d.signs is None else tuple(d.signs[r] for r in reps)
    q = PlanarDiagram(crossings, signs)

    def image(face: FaceId) -> FaceId:
        i, j = min(d.face_by_id(face).corners)
        r, shift = rep[i]
        return q.face_of_corner()[(index[r], (j - shift) % 4)]

    axis, inf = (image(f) for f in p.axis_faces)
    k = p.k if p.k is not None else face_distance(q, axis, inf)
    out = AxisClosureDiagram(q, axis, inf, k)
    out.check()
    return out


def period_witnesses(d: PlanarDiagram, n: int) -> list[PeriodicDiagram]:
    """Every rotation of order ``n`` of the diagram, as periodic diagrams."""
    require_valid(d)
    if n < 2:
        return []
    if not d.crossings:
        if len(d.loops) == 1:
            e = d.loops[0]
            return [PeriodicDiagram(d, n, DiagramMap((), (), {e: e}), ((e,), (-e,)), 1)]
        return []
    out = []
    for g in iter_isomorphisms(d, d, oriented=d.signs is not None):
        if rotation_problem(d, g, n) is None:
            axis, inf = sorted(fixed_faces(d, g))
            out.append(PeriodicDiagram(d.with_marked_faces((axis, inf)), n, g, (axis, inf)))
    return out


def detect_period(d: PlanarDiagram, n: int) -> PeriodicDiagram | None:
    """A rotation of order ``n`` with two fixed faces and no fixed crossing, or ``None``."""
    found = period_witnesses(d, n)
    return found[0] if found else None


# ---------------------------------------------------------------------- normal form
@dataclass(frozen=True)
class QuotientNormalForm:
    """Size ``k``, ``k - 1`` box sizes and a chirality bit."""

    k: int
    boxes: tuple[int, ...]
    mirror: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "boxes", tuple(self.boxes))
        if not isinstance(self.k, int) or self.k < 1:
            raise DiagramError(f"k must be a positive integer, got {self.k!r}")
        if len(self.boxes) != self.k - 1:
            raise DiagramError(f"k={self.k} needs {self.k - 1} boxes, got {len(self.boxes)}")
        if any(not isinstance(c, int) or c < 1 for c in self.boxes):
            raise DiagramError(f"box sizes must be positive integers: {self.boxes}")
        if self.mirror not in (1, -1):
            raise DiagramError("mirror must be +1 or -1")
        if self.k == 1:
            object.__setattr__(self, "mirror", 1)  # a round circle has no chirality

    def __str__(self) -> str:
        return f"{self.k};{','.join(map(str, self.boxes))};{'+' if self.mirror > 0 else '-'}"

    @classmethod
    def parse(cls, text: str) -> QuotientNormalForm:
        parts = [p.strip() for p in text.strip().split(";")]
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise DiagramError(f"expected 'k;c1,...;+|-', got {text!r}")
        try:
            k = int(parts[0])
            boxes = tuple(int(x) for x in parts[1].split(",")) if parts[1] else ()
        except ValueError as exc:
            raise DiagramError(f"bad integers in {text!r}") from exc
        return cls(k, boxes, 1 if parts[2] == "+" else -1)


def _twist_box(count: int, nw: int, sw: int, ne: int, se: int, new: Callable[[], int],
               kind: int) -> list[tuple[int, int, int, int]]:
    """A horizontal row of ``count`` crossings between the four corner arcs."""
    upper = [nw] + [new() for _ in range(count - 1)] + [ne]
    lower = [sw] + [new() for _ in range(count - 1)] + [se]
    out = []
    for t in range(1, count + 1):
        ccw = (upper[t - 1], lower[t - 1], lower[t], upper[t])
        out.append(ccw if kind > 0 else ccw[1:] + ccw[:1])
    return out


def nf_to_diagram(q: QuotientNormalForm) -> AxisClosureDiagram:
    """The pinwheel diagram, unoriented, with the axis and infinity faces marked."""
    counter = [0]

    def new() -> int:
        counter[0] += 1
        return counter[0]

    k = q.k
    r = [0] + [new() for _ in range(k)]
    if k == 1:
        d = PlanarDiagram((), None, (r[1],))
        return AxisClosureDiagram(d, (r[1],), (-r[1],), 1)
    mids = [0] + [new() for _ in range(k - 2)]
    rows: list[tuple[int, int, int, int]] = []
    for i in range(1, k):
        right_mid = r[1] if i == 1 else mids[i - 1]
        left_mid = r[k] if i == k - 1 else mids[i]
        if i % 2 == 1:
            nw, sw, ne, se = left_mid, r[i + 1], right_mid, r[i]
        else:
            nw, sw, ne, se = r[i + 1], left_mid, r[i], right_mid
        kind = q.mirror * (-1) ** (i - 1)
        rows.extend(_twist_box(q.boxes[i - 1], nw, sw, ne, se, new, kind))
    d = PlanarDiagram(tuple(rows))
    return AxisClosureDiagram(d, (r[1],), (r[k],), k)


def nf_to_tangle(q: QuotientNormalForm) -> TangleDiagram:
    return cut_to_tangle(nf_to_diagram(q))


def nf_reversed(q: QuotientNormalForm) -> QuotientNormalForm:
    """The same diagram read with axis and infinity exchanged."""
    if q.k == 1:
        return QuotientNormalForm(1, (), 1)
    return QuotientNormalForm(q.k, q.boxes[::-1], q.mirror * (-1) ** q.k)


def nf_canonical(q: QuotientNormalForm) -> QuotientNormalForm:
    """Smaller of the two readings; ties prefer mirror ``+``."""
    if q.k == 1:
        return QuotientNormalForm(1, (), 1)
    return min(q, nf_reversed(q), key=lambda x: (x.boxes, -x.mirror))


def face_parity(d: PlanarDiagram, face: FaceId) -> int | None:
    """Common parity of the corner slots of a face (None for loop faces or mixed parities)."""
    corners = d.face_by_id(face).corners
    parities = {j % 2 for _, j in corners}
    return parities.pop() if len(parities) == 1 else None


# ---------------------------------------------------------------------- stripping
def _side(d: PlanarDiagram, crossing: int, j: int, face: FaceId) -> str:
    """Which side of nugatory crossing ``crossing`` a face lies on."""
    fc = d.face_of_corner()
    if face == fc[(crossing, j)]:
        return "F"
    c = d.crossings[crossing]
    side_one = _reachable(d, [c[(j + 1) % 4], c[(j + 2) % 4]], crossing)
    if face == fc[(crossing, (j + 1) % 4)]:
        return "1"
    if face == fc[(crossing, (j + 3) % 4)]:
        return "2"
    corners = d.face_by_id(face).corners
    return "1" if any(i in side_one for i, _ in corners) else "2"


def check_no_internal_nugatory(d: PlanarDiagram, axis: FaceId, inf: FaceId) -> None:
    for x in sorted(_nugatory(d)):
        j = nugatory_corner(d, x)
        a, b = _side(d, x, j, axis), _side(d, x, j, inf)
        # a marked point in the doubly touched face can sit on either side of the circle
        if a == b or "F" in (a, b):
            raise InternalNugatory(f"crossing {d.crossings[x]} is nugatory inside the tangle")


@dataclass(frozen=True)
class StripResult:
    closure: AxisClosureDiagram
    count: int
    records: tuple[MoveRecord, ...]


def strip_string(a: AxisClosureDiagram) -> StripResult:
    """Remove the R-I loop around the axis face and the twist string behind it.

    The first removal pulls the loop across the axis, so the axis face moves
    to the face on the far side of the crossing.  Each further removal is an
    ordinary R-I move on the monogon left behind.
    """
    cur = a.diagram
    dot, inf = a.axis_face, a.infinity_face
    face = cur.face_by_id(dot)
    if len(face.corners) != 1:
        raise NontrivialKnot("no Reidemeister I loop passes through the axis face")
    ((x, j),) = face.corners
    fc = cur.face_of_corner()
    far, behind = fc[(x, (j + 1) % 4)], fc[(x, (j + 2) % 4)]
    records = [_r1_record(cur, x, "across-axis")]
    more = len(cur.face_by_id(behind).corners) == 2
    nd, fmap = remove_nugatory_tracked(cur, x)
    dot, inf, mono = fmap[far], fmap[inf], fmap[behind]
    cur = nd.with_marked_faces((dot, inf))
    count = 1
    while more:
        g = cur.face_by_id(mono)
        if len(g.corners) != 1:
            raise QuotientError("twist string does not end in an R-I loop")
        ((x, j),) = g.corners
        fc = cur.face_of_corner()
        behind = fc[(x, (j + 2) % 4)]
        more = len(cur.face_by_id(behind).corners) == 2
        records.append(_r1_record(cur, x, "ordinary"))
        nd, fmap = remove_nugatory_tracked(cur, x)
        cur, mono = nd, fmap[behind]
        dot, inf = cur.marked_faces
        count += 1
    if dot == inf:
        raise NontrivialKnot("axis and infinity faces merged while stripping")
    k = face_distance(cur, dot, inf)
    return StripResult(AxisClosureDiagram(cur, dot, inf, k), count, tuple(records))


def _r1_record(d: PlanarDiagram, x: int, how: str) -> MoveRecord:
    dw = -d.signs[x] if d.signs is not None else 0
    return MoveRecord("R1-remove", tuple(d.crossings[x]), how, writhe_change=dw)


def normalize_unknot_quotient(a: AxisClosureDiagram) -> tuple[QuotientNormalForm, list[MoveRecord]]:
    """Reduce an alternating axis closure of the unknot to its pinwheel normal form.

    Each induction step strips the maximal twist string behind the R-I loop
    around the axis face; the string length is the next box size and the
    axis-to-infinity distance drops by one.
    """
    d = a.diagram
    require_valid(d)
    if a.axis_face == a.infinity_face:
        raise QuotientError("axis face and infinity face coincide")
    if len(d.components()) != 1:
        raise QuotientError("the quotient knot must have one component")
    if not is_alternating(d):
        raise NotAlternating("the quotient diagram is not alternating")
    if not alternating_unknot_check(d.unoriented()).is_unknot:
        raise NontrivialKnot("the quotient knot is not trivial")
    mirror = 1
    if d.crossings:
        parity = face_parity(d, a.axis_face)
        mirror = 1 if parity == 0 else -1
    cur = AxisClosureDiagram.from_diagram(d, a.axis_face, a.infinity_face)
    boxes: list[int] = []
    log: list[MoveRecord] = []
    while cur.diagram.crossings:
        check_no_internal_nugatory(cur.diagram, cur.axis_face, cur.infinity_face)
        step = strip_string(cur)
        if step.closure.k != cur.k - 1:
            raise QuotientError(f"strip changed the axis distance from {cur.k} to {step.closure.k}")
        log.extend(step.records)
        log.append(MoveRecord("strip", (len(boxes) + 1, step.count), f"k {cur.k}->{step.closure.k}"))
        boxes.append(step.count)
        cur = step.closure
    return QuotientNormalForm(len(boxes) + 1, tuple(boxes), mirror), log


# ---------------------------------------------------------------------- inverse strip
def insert_twist_string(a: AxisClosureDiagram, count: int, corner: tuple[int, int] | None = None,
                        first_over: bool = False) -> AxisClosureDiagram:
    """Push a twisted finger of ``count`` crossings into the axis face.

    The finger grows from the edge that leaves ``corner`` (a corner of the
    axis face) and the axis ends up in the monogon at its tip.  Over and
    under passes continue the alternation of the edge.  ``first_over`` only
    matters when the diagram has no crossings.
    """
    if count < 1:
        raise DiagramError("a twist string needs at least one crossing")
    d = a.diagram.unoriented()
    top = max([0, *d.arcs()])
    fresh = iter(range(top + 1, top + 4 * count + 4))
    rows = [list(c) for c in d.crossings]
    if d.crossings:
        face = d.face_by_id(a.axis_face)
        if corner is None:
            corner = min(face.corners)
        if corner not in face.corners:
            raise DiagramError(f"corner {corner} is not on the axis face")
        i, j = corner
        s = (j + 1) % 4
        u_label = d.crossings[i][s]
        vi, vs = d.partner(i, s)
        first_over = s % 2 == 0
        loops: list[int] = list(d.loops)
    else:
        (u_label,) = d.loops
        loops = []
    if d.crossings:
        t_end = next(fresh)
        rows[vi][vs] = t_end
    else:
        t_end = u_label  # the finger closes up on the old circle
    loop = next(fresh)
    b = [loop] + [next(fresh) for _ in range(count - 1)] + [u_label]
    t = [loop] + [next(fresh) for _ in range(count - 1)] + [t_end]
    finger = [(b[m], b[m - 1], t[m - 1], t[m]) for m in range(1, count + 1)]
    # walk the new strand from the u end, recording passages
    base = len(rows)
    where: dict[int, list[tuple[int, int]]] = {}
    for m, c in enumerate(finger):
        for pos, x in enumerate(c):
            where.setdefault(x, []).append((m, pos))
    passages: list[tuple[int, int]] = []
    m, pos = count - 1, 0
    seen = set()
    while (m, pos) not in seen:
        seen.add((m, pos))
        passages.append((m, pos))
        out_label = finger[m][(pos + 2) % 4]
        nxt = [e for e in where.get(out_label, []) if e != (m, (pos + 2) % 4)]
        if not nxt:
            break
        m, pos = nxt[0]
    rot = [0] * count
    for p, (m, pos) in enumerate(passages):
        over = (p % 2 == 0) == first_over
        if not over:
            rot[m] = pos % 2
        else:
            rot[m] = (pos + 1) % 2
    new_rows = [tuple(finger[m][(rot[m] + q) % 4] for q in range(4)) for m in range(count)]
    nd = PlanarDiagram(tuple(tuple(r) for r in rows) + tuple(new_rows), None, tuple(loops))
    tip = (base, (1 - rot[0]) % 4)
    dot = nd.face_of_corner()[tip]
    if d.crossings:
        old_inf = d.face_by_id(a.infinity_face)
        inf = nd.face_of_corner()[min(old_inf.corners)]
    else:
        inf = nd.face_of_corner()[(base + count - 1, (3 - rot[count - 1]) % 4)]
    out = AxisClosureDiagram.from_diagram(nd, dot, inf)
    return out


__all__ = [
    "AxisClosureDiagram",
    "InternalNugatory",
    "NontrivialKnot",
    "NotAlternating",
    "PeriodError",
    "PeriodicDiagram",
    "QuotientError",
    "QuotientNormalForm",
    "StripResult",
    "TangleDiagram",
    "build_periodic",
    "closure",
    "closure_diagram",
    "cut_to_tangle",
    "detect_period",
    "dual_distances",
    "face_distance",
    "face_parity",
    "insert_twist_string",
    "nf_canonical",
    "nf_reversed",
    "nf_to_diagram",
    "nf_to_tangle",
    "normalize_unknot_quotient",
    "period_witnesses",
    "quotient",
    "strip_string",
]
