"""Seifert data of cyclic branched covers of torus knots.

The ``n``-fold cyclic branched cover of the torus knot ``T(a1, a2)`` is a
Seifert fibred space with orientable base.  Here it is described coarsely by
the base genus plus the multiset of exceptional fibre orders.  That is
enough to recover the knot once ``n`` is known, which the scan checks
exhaustively.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

LENS_SPACE = "LensSpace"
MULTIPLE_FIBRATIONS = "MultipleFibrationsPossible"
CASE_TAGS = ("1", "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d", "3e", "3f")


class TorusError(ValueError):
    """Invalid torus knot or cover parameters."""


class NotACoverSignature(ValueError):
    """No torus knot has a cover with the given signature."""


@dataclass(frozen=True)
class TorusKnot:
    """Unordered coprime pair, stored with ``a1 < a2``."""

    a1: int
    a2: int

    def __post_init__(self) -> None:
        a, b = self.a1, self.a2
        if not all(isinstance(x, int) for x in (a, b)):
            raise TorusError("torus knot parameters must be integers")
        if a < 2 or b < 2:
            raise TorusError(f"torus knot parameters must be >= 2, got ({a}, {b})")
        if gcd(a, b) != 1:
            raise TorusError(f"torus knot parameters must be coprime, got ({a}, {b})")
        if a > b:
            object.__setattr__(self, "a1", b)
            object.__setattr__(self, "a2", a)

    def __str__(self) -> str:
        return f"T({self.a1},{self.a2})"


@dataclass(frozen=True)
class CoverParams:
    n: int
    d1: int
    d2: int

    @property
    def d(self) -> int:
        return self.d1 * self.d2


@dataclass(frozen=True)
class CoverCase:
    """Case tag, plus whether the case needed ``a1`` and ``a2`` in the other order."""

    tag: str
    swapped: bool = False


@dataclass(frozen=True)
class SeifertSignature:
    genus: int
    fibres: tuple[int, ...]
    flags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "fibres", tuple(sorted(self.fibres)))
        object.__setattr__(self, "flags", frozenset(self.flags))
        if not isinstance(self.genus, int) or self.genus < 0:
            raise NotACoverSignature(f"genus must be a non-negative integer, got {self.genus!r}")
        if any(not isinstance(o, int) or o < 2 for o in self.fibres):
            raise NotACoverSignature(f"fibre orders must be integers >= 2, got {self.fibres}")
        unknown = self.flags - {LENS_SPACE, MULTIPLE_FIBRATIONS}
        if unknown:
            raise NotACoverSignature(f"unknown flags {sorted(unknown)}")

    def classes(self) -> list[tuple[int, int]]:
        """``(order, multiplicity)`` pairs sorted by order."""
        return sorted(Counter(self.fibres).items())

    def to_dict(self) -> dict:
        return {"genus": self.genus, "fibres": list(self.fibres), "flags": sorted(self.flags)}


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise TorusError(f"cover degree must be an integer >= 2, got {n!r}")


def classify_case(knot: TorusKnot, n: int) -> tuple[CoverCase, CoverParams]:
    """Case tag and gcd data, with the pair ordered to fit the case."""
    _check_n(n)
    a1, a2 = knot.a1, knot.a2
    d1, d2 = gcd(a1, n), gcd(a2, n)
    swapped = False
    if (d1 == 1) != (d2 == 1):
        if d1 == 1:
            swapped = True
    elif d1 > 1 and (d1 == a1) != (d2 == a2) and d2 == a2:
        swapped = True
    if swapped:
        a1, a2, d1, d2 = a2, a1, d2, d1
    d = d1 * d2
    if d == 1:
        tag = "1"
    elif d2 == 1:
        tag = {(False, False): "2a", (False, True): "2b", (True, False): "2c", (True, True): "2d"}[(d1 == a1, d == n)]
    elif d1 < a1 and d2 < a2:
        tag = "3b" if d == n else "3a"
    elif d2 < a2:
        tag = "3d" if d == n else "3c"
    else:
        tag = "3f" if d == n else "3e"
    return CoverCase(tag, swapped), CoverParams(n, d1, d2)


def _ordered(knot: TorusKnot, case: CoverCase) -> tuple[int, int]:
    return (knot.a2, knot.a1) if case.swapped else (knot.a1, knot.a2)


def cover_signature(knot: TorusKnot, n: int) -> SeifertSignature:
    case, p = classify_case(knot, n)
    a1, a2 = _ordered(knot, case)
    d1, d2, d = p.d1, p.d2, p.d
    tag = case.tag
    fibres: list[int] = []
    if tag == "1":
        fibres = [a1, a2, n]
    elif tag.startswith("2"):
        fibres = [a2] * (n if d == n else d)
        if d < a1:
            fibres.append(a1 // d)
        if d < n:
            fibres.append(n // d)
    else:
        if d2 < a2:
            fibres += [a2 // d2] * d1
        if d1 < a1:
            fibres += [a1 // d1] * d2
        if d < n:
            fibres.append(n // d)
    assert all(o >= 2 for o in fibres), (knot, n, fibres)
    genus = (d1 - 1) * (d2 - 1) // 2
    flags = frozenset({LENS_SPACE, MULTIPLE_FIBRATIONS}) if tag == "2d" and n == 2 else frozenset()
    return SeifertSignature(genus, tuple(fibres), flags)


def orbifold_euler(sig: SeifertSignature) -> Fraction:
    return Fraction(2 - 2 * sig.genus) - sum((1 - Fraction(1, o) for o in sig.fibres), Fraction(0))


def euler_check(sig: SeifertSignature, knot: TorusKnot, n: int) -> bool:
    """Orbifold Euler characteristic of the base against ``d * (1/a1 + 1/a2 + 1/n - 1)``.

    The right side is the Euler characteristic of the branched cover of the
    base orbifold ``S^2(a1, a2, n)`` of the quotient, lifted to degree ``d``.
    """
    _check_n(n)
    d = gcd(knot.a1 * knot.a2, n)
    expected = d * (Fraction(1, knot.a1) + Fraction(1, knot.a2) + Fraction(1, n) - 1)
    return orbifold_euler(sig) == expected


def _div(a: int, b: int) -> int:
    if b <= 0 or a % b:
        raise NotACoverSignature(f"{a} is not divisible by {b}")
    return a // b


def _solve_sum_product(total: int, product: int) -> tuple[int, int]:
    """Integers ``x <= y`` with ``x + y = total`` and ``x * y = product``."""
    disc = total * total - 4 * product
    if disc < 0 or isqrt(disc) ** 2 != disc or (total + isqrt(disc)) % 2:
        raise NotACoverSignature(f"no integers with sum {total} and product {product}")
    root = isqrt(disc)
    return (total - root) // 2, (total + root) // 2


def _candidate(sig: SeifertSignature, n: int) -> tuple[int, int, str]:
    classes = sig.classes()
    counts = [c for _, c in classes]
    if sig.genus == 0:
        if len(classes) == 3:
            if len(sig.fibres) == 3:
                orders = [o for o, _ in classes]
                if n not in orders:
                    raise NotACoverSignature("three single fibres but none of order n")
                a, b = (o for o in orders if o != n)
                return a, b, "1"
            repeated = [(o, c) for o, c in classes if c > 1]
            if len(repeated) != 1:
                raise NotACoverSignature("expected exactly one repeated fibre order")
            a2, d = repeated[0]
            singles = [o for o, c in classes if c == 1]
            tail = [o for o in singles if o * d == n]
            if len(tail) != 1:
                raise NotACoverSignature("no single fibre of order n/d")
            other = next(o for o in singles if o != tail[0])
            return d * other, a2, "2a"
        if len(classes) == 2:
            (o1, c1), (o2, c2) = sorted(classes, key=lambda oc: (-oc[1], oc[0]))
            if c2 != 1:
                raise NotACoverSignature("two repeated fibre orders over the sphere")
            if c1 == n:
                return n * o2, o1, "2b"
            return _div(n, o2), o1, "2c"
        if len(classes) == 1:
            ((o, c),) = classes
            if c != n:
                raise NotACoverSignature("a single fibre order must occur n times")
            return n, o, "2d"
        raise NotACoverSignature("sphere base needs exceptional fibres")
    if len(classes) == 3:
        big = [(o, c) for o, c in classes if c > 1]
        if len(big) != 2 or counts.count(1) != 1:
            raise NotACoverSignature("expected two repeated orders and one single fibre")
        (oa, ca), (ob, cb) = big
        return ca * ob, cb * oa, "3a"
    if len(classes) == 2:
        if 1 in counts:
            (o, c), (s, _) = sorted(classes, key=lambda oc: -oc[1])
            d = _div(n, s)
            return c, _div(d, c) * o, "3c"
        (oa, ca), (ob, cb) = classes
        return ca * ob, cb * oa, "3b"
    if len(classes) == 1:
        ((o, c),) = classes
        if c > 1:
            return c, _div(n, c) * o, "3d"
        d = _div(n, o)
        a, b = _solve_sum_product(d + 1 - 2 * sig.genus, d)
        return a, b, "3e"
    a, b = _solve_sum_product(n + 1 - 2 * sig.genus, n)
    return a, b, "3f"


def recover_torus_knot(sig: SeifertSignature, n: int) -> tuple[TorusKnot, CoverCase]:
    """The unique torus knot whose ``n``-fold cover has this signature.

    The case is read off from the genus and the fibre classes; the knot is
    then rebuilt and its forward signature and Euler characteristic are
    compared with the input.
    """
    _check_n(n)
    a, b, tag = _candidate(sig, n)
    try:
        knot = TorusKnot(a, b)
    except TorusError as exc:
        raise NotACoverSignature(f"reconstructed pair ({a}, {b}) is not a torus knot: {exc}") from exc
    case, _ = classify_case(knot, n)
    if case.tag != tag:
        raise NotACoverSignature(f"reconstruction lands in case {case.tag}, not {tag}")
    forward = cover_signature(knot, n)
    if (forward.genus, forward.fibres) != (sig.genus, sig.fibres):
        raise NotACoverSignature(f"{knot} has signature {forward.to_dict()}, not {sig.to_dict()}")
    if not sig.flags <= forward.flags:
        raise NotACoverSignature(f"flags {sorted(sig.flags)} do not match {sorted(forward.flags)}")
    if not euler_check(sig, knot, n):
        raise NotACoverSignature("orbifold Euler characteristic mismatch")
    return knot, case


@dataclass(frozen=True)
class TwinsVerdict:
    verdict: str
    evidence: str = ""

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "evidence": self.evidence}


def _first_difference(s: SeifertSignature, t: SeifertSignature) -> str:
    if s.genus != t.genus:
        return f"genus {s.genus} vs {t.genus}"
    cs, ct = Counter(s.fibres), Counter(t.fibres)
    for order in sorted(set(cs) | set(ct)):
        if cs[order] != ct[order]:
            return f"fibres {list(s.fibres)} vs {list(t.fibres)}: order {order} occurs {cs[order]} vs {ct[order]} times"
    if s.flags != t.flags:
        return f"flags {sorted(s.flags)} vs {sorted(t.flags)}"
    return ""


def twins_decision(k1: TorusKnot, k2: TorusKnot, n: int) -> TwinsVerdict:
    """Whether two torus knots can share an ``n``-fold cyclic branched cover."""
    _check_n(n)
    if k1 == k2:
        return TwinsVerdict("EquivalentKnots")
    diff = _first_difference(cover_signature(k1, n), cover_signature(k2, n))
    if not diff:
        return TwinsVerdict("Twins", "identical signatures")
    return TwinsVerdict("NotTwins", diff)


def coprime_pairs(a_max: int) -> list[TorusKnot]:
    return [TorusKnot(a, b) for a in range(2, a_max + 1) for b in range(a + 1, a_max + 1) if gcd(a, b) == 1]


@dataclass
class ScanRow:
    n: int
    collisions: list[tuple[TorusKnot, TorusKnot]]
    tallies: dict[str, int]


@dataclass
class ScanReport:
    a_max: int
    n_max: int
    rows: list[ScanRow]

    @property
    def collisions(self) -> int:
        return sum(len(r.collisions) for r in self.rows)

    def tallies(self) -> Counter:
        total: Counter = Counter()
        for r in self.rows:
            total.update(r.tallies)
        return total

    def lines(self) -> list[str]:
        out = []
        for r in self.rows:
            cases = " ".join(f"{t}={r.tallies[t]}" for t in CASE_TAGS if r.tallies.get(t))
            pairs = ", ".join(f"{a}={b}" for a, b in r.collisions) or "none"
            out.append(f"n={r.n} collisions=[{pairs}] {cases}")
        out.append(f"collisions: {self.collisions}")
        return out

    def to_dict(self) -> dict:
        return {
            "a_max": self.a_max,
            "n_max": self.n_max,
            "collisions": self.collisions,
            "rows": [{"n": r.n, "collisions": [[str(a), str(b)] for a, b in r.collisions],
                      "tallies": {t: r.tallies[t] for t in CASE_TAGS if r.tallies.get(t)}} for r in self.rows],
        }


def injectivity_scan(a_max: int, n_max: int) -> ScanReport:
    """Look for two torus knots with the same cover signature at some fixed ``n``."""
    if a_max < 3 or n_max < 2:
        raise TorusError("scan needs a_max >= 3 and n_max >= 2")
    knots = coprime_pairs(a_max)
    rows = []
    for n in range(2, n_max + 1):
        seen: dict[SeifertSignature, TorusKnot] = {}
        collisions = []
        tallies: Counter = Counter()
        for k in knots:
            sig = cover_signature(k, n)
            tallies[classify_case(k, n)[0].tag] += 1
            if sig in seen:
                collisions.append((seen[sig], k))
            else:
                seen[sig] = k
        rows.append(ScanRow(n, collisions, dict(tallies)))
    return ScanReport(a_max, n_max, rows)


def cover_json(knot: TorusKnot, n: int) -> dict:
    case, _ = classify_case(knot, n)
    sig = cover_signature(knot, n)
    return {"a1": knot.a1, "a2": knot.a2, "n": n, "case": case.tag, **sig.to_dict()}


__all__ = [
    "CASE_TAGS",
    "CoverCase",
    "CoverParams",
    "LENS_SPACE",
    "MULTIPLE_FIBRATIONS",
    "NotACoverSignature",
    "ScanReport",
    "SeifertSignature",
    "TorusError",
    "TorusKnot",
    "TwinsVerdict",
    "classify_case",
    "coprime_pairs",
    "cover_json",
    "cover_signature",
    "euler_check",
    "injectivity_scan",
    "orbifold_euler",
    "recover_torus_knot",
    "twins_decision",
]
