"""Two-component links of a knot quotient and its axis, and the exchange procedure.

The link is drawn as a 4-plat.  Plat positions 1 and 2 carry the knot-like
component (the one with the twist boxes), positions 3 and 4 the circle that
encircles it.  Reading from the top the braid word is::

    clasp_0  box_0  clasp_1  box_1  ...  box_{k-2}  clasp_{k-1}

where ``clasp_j`` is ``s2 ** (2 * hook_j)`` with ``hook_j = +-1`` and ``box_i``
is ``s1 ** x_i`` (or ``s3 ** x_i`` once the box has been transferred to the
encircling side).  Caps join positions (1, 2) and (3, 4) at both ends.

Hooks are tied to box parities by ``hook_{j+1} = hook_j * (-1) ** x_j``.
This makes every clasp contribute the same sign, so the linking number
is ``+-k``.  The free data is therefore ``hook_0`` and the signed
exponents.  :class:`NormalFormLink` stores them as ``mirror = hook_0``,
box sizes ``|x_i|`` and ``sides``.  ``sides[i]`` is +1 when ``x_i`` has
the default sign ``mirror * (-1) ** i``.

Three moves act on this data:

* clasp flip at clasp ``h``: ``hook_h`` changes sign and both neighbouring
  exponents drop by the old ``hook_h``.  A box move (carrying a box once
  around the encircling strand) is the pair of flips at its two clasps;
* flype of box ``i``: ``s1 ** x_i`` becomes ``s3 ** x_i``;
* rotation by pi about a vertical axis in the page: ``s1`` and ``s3`` trade
  places, exponents are unchanged, the two components trade roles.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

from .diagram import DiagramError, PlanarDiagram, orient_components
from .moves import MoveRecord

LABEL_CHOICES = ("KA", "AK")


class ExchangeError(ValueError):
    """Base class for errors raised by the exchange procedure."""


class MalformedNFL(ExchangeError):
    """Unparseable or inconsistent link parameters."""


class PreconditionParity(ExchangeError):
    """A box other than the first one has an odd number of crossings."""


def _sign(x: int) -> int:
    return 1 if x >= 0 else -1


@dataclass(frozen=True)
class NormalFormLink:
    """Parameters of the two-component side-view link.

    ``labels`` names the boxed component first: ``"KA"`` means the knot
    quotient carries the boxes and the axis encircles it.  ``sides`` and
    ``axis_boxes`` default to the plain layout (all boxes in default
    position, all on the boxed component).  Zero-size boxes are allowed:
    parity normalization can empty an interior box.
    """

    k: int
    boxes: tuple[int, ...]
    mirror: int = 1
    labels: str = "KA"
    sides: tuple[int, ...] = field(default=())
    axis_boxes: tuple[bool, ...] = field(default=())

    def __post_init__(self) -> None:
        boxes = tuple(self.boxes)
        if not isinstance(self.k, int) or self.k < 1:
            raise MalformedNFL(f"k must be a positive integer, got {self.k!r}")
        if len(boxes) != self.k - 1:
            raise MalformedNFL(f"k={self.k} needs {self.k - 1} boxes, got {len(boxes)}")
        if any(not isinstance(c, int) or c < 0 for c in boxes):
            raise MalformedNFL(f"box sizes must be non-negative integers: {boxes}")
        if self.mirror not in (1, -1):
            raise MalformedNFL("mirror must be +1 or -1")
        if self.labels not in LABEL_CHOICES:
            raise MalformedNFL(f"labels must be one of {LABEL_CHOICES}")
        sides = tuple(self.sides) or (1,) * len(boxes)
        axis = tuple(bool(a) for a in self.axis_boxes) or (False,) * len(boxes)
        if len(sides) != len(boxes) or any(s not in (1, -1) for s in sides):
            raise MalformedNFL("sides must hold one +1/-1 per box")
        if len(axis) != len(boxes):
            raise MalformedNFL("axis_boxes must hold one flag per box")
        # an empty box has no handedness
        sides = tuple(1 if c == 0 else s for c, s in zip(boxes, sides))
        object.__setattr__(self, "boxes", boxes)
        object.__setattr__(self, "sides", sides)
        object.__setattr__(self, "axis_boxes", axis)

    # ------------------------------------------------------------------ word data
    def exponents(self) -> list[int]:
        return [self.mirror * (-1) ** i * s * c for i, (c, s) in enumerate(zip(self.boxes, self.sides))]

    def hooks(self) -> list[int]:
        out = [self.mirror]
        for c in self.boxes:
            out.append(out[-1] * (-1) ** c)
        return out

    @classmethod
    def from_exponents(cls, hook0: int, xs: Sequence[int], labels: str = "KA",
                       axis_boxes: Sequence[bool] = ()) -> NormalFormLink:
        sides = tuple(1 if x == 0 else _sign(x) * hook0 * (-1) ** i for i, x in enumerate(xs))
        return cls(len(xs) + 1, tuple(abs(x) for x in xs), hook0, labels, sides, tuple(axis_boxes))

    def braid_word(self) -> list[tuple[int, int]]:
        """``(generator, exponent)`` pairs from top to bottom."""
        word = []
        xs = self.exponents()
        for j, h in enumerate(self.hooks()):
            word.append((2, 2 * h))
            if j < self.k - 1:
                word.append((3 if self.axis_boxes[j] else 1, xs[j]))
        return word

    @property
    def plain(self) -> bool:
        return all(s == 1 for s in self.sides) and not any(self.axis_boxes)

    # ------------------------------------------------------------------ text
    def __str__(self) -> str:
        sign = "+" if self.mirror > 0 else "-"
        text = f"{self.k};{','.join(map(str, self.boxes))};{sign};labels={self.labels}"
        if any(s != 1 for s in self.sides):
            text += ";sides=" + "".join("+" if s > 0 else "-" for s in self.sides)
        if any(self.axis_boxes):
            text += ";axis=" + ",".join(str(i + 1) for i, a in enumerate(self.axis_boxes) if a)
        return text

    @classmethod
    def parse(cls, text: str) -> NormalFormLink:
        """Read ``k;c1,...;+|-;labels=KA|AK`` with optional ``sides=`` and ``axis=`` fields."""
        parts = [p.strip() for p in text.strip().split(";")]
        if len(parts) < 3:
            raise MalformedNFL(f"expected 'k;c1,...;+|-[;labels=..]', got {text!r}")
        try:
            k = int(parts[0])
            boxes = tuple(int(x) for x in parts[1].split(",")) if parts[1] else ()
        except ValueError as exc:
            raise MalformedNFL(f"bad integers in {text!r}") from exc
        if parts[2] not in ("+", "-"):
            raise MalformedNFL(f"mirror field must be + or -, got {parts[2]!r}")
        mirror = 1 if parts[2] == "+" else -1
        labels, sides, axis = "KA", (), ()
        for extra in parts[3:]:
            key, _, value = extra.partition("=")
            if key == "labels":
                labels = value
            elif key == "sides":
                if set(value) - {"+", "-"}:
                    raise MalformedNFL(f"sides must be a string of + and -, got {value!r}")
                sides = tuple(1 if ch == "+" else -1 for ch in value)
            elif key == "axis":
                try:
                    idx = {int(x) for x in value.split(",") if x}
                except ValueError as exc:
                    raise MalformedNFL(f"bad axis list {value!r}") from exc
                if any(i < 1 or i > len(boxes) for i in idx):
                    raise MalformedNFL(f"axis box index out of range in {value!r}")
                axis = tuple(i + 1 in idx for i in range(len(boxes)))
            else:
                raise MalformedNFL(f"unknown field {key!r}")
        return cls(k, boxes, mirror, labels, sides, axis)

    def swap_labels(self) -> NormalFormLink:
        return replace(self, labels=self.labels[::-1])

    def reversed(self) -> NormalFormLink:
        """The same link read from the bottom up."""
        return NormalFormLink.from_exponents(self.hooks()[-1], self.exponents()[::-1], self.labels,
                                             self.axis_boxes[::-1])

    def canonical(self) -> NormalFormLink:
        """The smaller of this reading and the bottom-up reading."""
        other = self.reversed()
        return min(self, other, key=_order_key)


def _order_key(L: NormalFormLink) -> tuple:
    return (L.boxes, tuple(-s for s in L.sides), -L.mirror, L.axis_boxes, L.labels)


# ---------------------------------------------------------------------- diagrams
def plat_diagram(word: Sequence[tuple[int, int]], tags: tuple[str, str] = ("K", "A")) -> PlanarDiagram:
    """Unoriented 4-plat closure of ``word``.

    A positive exponent crossing has the strand from top-left to
    bottom-right passing over.  ``tags`` name the components through the
    top caps at positions (1, 2) and (3, 4).
    """
    counter = [0]

    def new() -> int:
        counter[0] += 1
        return counter[0]

    cap_left, cap_right = new(), new()
    cur = [cap_left, cap_left, cap_right, cap_right]
    rows: list[tuple[int, int, int, int]] = []
    for gen, exp in word:
        if gen not in (1, 2, 3):
            raise DiagramError(f"4-plat generator must be 1, 2 or 3, got {gen}")
        for _ in range(abs(exp)):
            i = gen - 1
            tl, tr = cur[i], cur[i + 1]
            bl, br = new(), new()
            rows.append((tr, tl, bl, br) if exp > 0 else (tl, bl, br, tr))
            cur[i], cur[i + 1] = bl, br
    if not rows:
        raise DiagramError("4-plat word has no crossings")
    rename = {cur[1]: cur[0], cur[3]: cur[2]}
    rows = [tuple(rename.get(x, x) for x in c) for c in rows]
    return PlanarDiagram(tuple(rows), component_tags=((tags[0], rename.get(cap_left, cap_left)),
                                                      (tags[1], rename.get(cap_right, cap_right))))


def linking_number(d: PlanarDiagram) -> int:
    """Half the signed count of crossings between the two components."""
    if d.signs is None:
        raise DiagramError("linking number needs an oriented diagram")
    comps = d.components()
    if len(comps) != 2:
        raise DiagramError(f"linking number needs exactly two components, got {len(comps)}")
    owner = d.component_of_arc()
    total = sum(s for c, s in zip(d.crossings, d.signs) if owner[c[0]] != owner[c[1]])
    return total // 2


def orient_positive(d: PlanarDiagram) -> PlanarDiagram:
    """Orient a two-component diagram so that its linking number is non-negative."""
    od = orient_components(d)
    if linking_number(od) < 0:
        od = orient_components(d, [1])
    return od


def nfl_to_pd(L: NormalFormLink) -> PlanarDiagram:
    """Oriented side-view diagram with linking number ``+k``.

    Components are tagged ``K`` and ``A`` according to ``L.labels``.
    """
    names = ("K", "A") if L.labels == "KA" else ("A", "K")
    d = orient_positive(plat_diagram(L.braid_word(), names))
    lk = linking_number(d)
    if lk != L.k:
        raise ExchangeError(f"internal: linking number {lk} differs from k={L.k} for {L}")
    return d


# ---------------------------------------------------------------------- moves
def _flip_clasp(hooks: list[int], xs: list[int], h: int) -> None:
    old = hooks[h]
    hooks[h] = -old
    if h > 0:
        xs[h - 1] -= old
    if h < len(xs):
        xs[h] -= old


def _writhe(L: NormalFormLink) -> int:
    return nfl_to_pd(L).writhe()


def box_move(L: NormalFormLink, box: int) -> NormalFormLink:
    """Carry box ``box`` (0-based) once around the encircling component.

    Both neighbouring boxes change by one crossing and the moved box by zero
    or two, so exactly the neighbours change parity.
    """
    if any(L.axis_boxes):
        raise ExchangeError("box moves need every box on the boxed component")
    if not 0 <= box < L.k - 1:
        raise ExchangeError(f"no box {box + 1} in {L}")
    hooks, xs = L.hooks(), L.exponents()
    _flip_clasp(hooks, xs, box)
    _flip_clasp(hooks, xs, box + 1)
    return NormalFormLink.from_exponents(hooks[0], xs, L.labels)


def flype_box(L: NormalFormLink, box: int) -> NormalFormLink:
    """Move the twists of one box onto the encircling component."""
    if L.axis_boxes[box]:
        raise ExchangeError(f"box {box + 1} is already transferred")
    axis = list(L.axis_boxes)
    axis[box] = True
    return replace(L, axis_boxes=tuple(axis))


def rotate(L: NormalFormLink) -> NormalFormLink:
    """Turn the picture about a vertical axis: the transferred twists become
    boxes of the other component.  Requires every box to be transferred."""
    if not all(L.axis_boxes):
        raise ExchangeError("rotation needs every box transferred")
    return replace(L.swap_labels(), axis_boxes=(False,) * (L.k - 1))


# ---------------------------------------------------------------------- logs
@dataclass
class ExchangeLog:
    """Ordered move records; each carries the parameters before and after."""

    records: list[MoveRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def extend(self, other: Iterable[MoveRecord]) -> None:
        self.records.extend(other)

    def kinds(self) -> list[str]:
        return [r.kind for r in self.records]

    def to_list(self) -> list[dict]:
        return [r.to_dict() for r in self.records]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> ExchangeLog:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ExchangeError(f"invalid log JSON: {exc}") from exc
        if not isinstance(data, list):
            raise ExchangeError("an exchange log is a JSON list")
        try:
            return cls([MoveRecord.from_dict(r) for r in data])
        except DiagramError as exc:
            raise ExchangeError(str(exc)) from exc

    def replay(self, start: NormalFormLink) -> NormalFormLink:
        """Re-apply every move from ``start``, checking the recorded parameters."""
        cur = start
        for rec in self.records:
            if rec.before and rec.before != str(cur):
                raise ExchangeError(f"log expects {rec.before}, state is {cur}")
            if rec.kind == "parity-move":
                cur = box_move(cur, int(rec.site[0]) - 1)
            elif rec.kind == "flype":
                cur = flype_box(cur, int(rec.site[0]) - 1)
            elif rec.kind == "rotation":
                cur = rotate(cur)
            else:
                raise ExchangeError(f"move kind {rec.kind!r} is not part of the exchange procedure")
            if rec.after and rec.after != str(cur):
                raise ExchangeError(f"log records {rec.after}, replay gives {cur}")
        return cur


def _record(kind: str, site: tuple, direction: str, before: NormalFormLink,
            after: NormalFormLink) -> MoveRecord:
    return MoveRecord(kind, site, direction, str(before), str(after), _writhe(after) - _writhe(before))


# ---------------------------------------------------------------------- procedure
def interior_odd_boxes(L: NormalFormLink) -> list[int]:
    """1-based indices of odd boxes other than the first."""
    return [i + 1 for i in range(1, L.k - 1) if L.boxes[i] % 2]


def parity_normalize(L: NormalFormLink) -> tuple[NormalFormLink, ExchangeLog]:
    """Make every box after the first even, working from the bottom up.

    To fix box ``t`` the box above it is carried around the encircling
    component, together with every box an even distance above that one.
    This flips the parity of box ``t`` and possibly of the first box.
    """
    if any(L.axis_boxes):
        raise ExchangeError("parity normalization expects every box on the boxed component")
    log = ExchangeLog()
    cur = L
    for target in range(L.k - 2, 0, -1):
        if cur.boxes[target] % 2 == 0:
            continue
        for moved in range(target - 1, -1, -2):
            nxt = box_move(cur, moved)
            direction = "under-over" if cur.hooks()[moved] > 0 else "over-under"
            log.records.append(_record("parity-move", (moved + 1,), direction, cur, nxt))
            cur = nxt
    return cur, log


def transfer_all(L: NormalFormLink) -> tuple[NormalFormLink, ExchangeLog]:
    """Flype every box, top to bottom, onto the encircling component."""
    odd = interior_odd_boxes(L)
    if odd:
        raise PreconditionParity(f"boxes {odd} have an odd number of crossings")
    if any(L.axis_boxes):
        raise ExchangeError("some boxes are already transferred")
    log = ExchangeLog()
    cur = L
    for box in range(L.k - 1):
        nxt = flype_box(cur, box)
        log.records.append(_record("flype", (box + 1,), "to-axis", cur, nxt))
        cur = nxt
    return cur, log


def exchange_components(L: NormalFormLink) -> tuple[NormalFormLink, ExchangeLog]:
    """Parity normalization, transfer and a half turn: the components trade roles."""
    normal, log = parity_normalize(L)
    moved, more = transfer_all(normal)
    log.extend(more)
    out = rotate(moved)
    log.records.append(_record("rotation", (), "pi-vertical", moved, out))
    return out, log


__all__ = [
    "ExchangeError",
    "ExchangeLog",
    "MalformedNFL",
    "NormalFormLink",
    "PreconditionParity",
    "box_move",
    "exchange_components",
    "flype_box",
    "interior_odd_boxes",
    "linking_number",
    "nfl_to_pd",
    "orient_positive",
    "parity_normalize",
    "plat_diagram",
    "rotate",
    "transfer_all",
]
