"""Kauffman bracket and Jones polynomial.

Two independent evaluators are provided.  :func:`bracket_state_sum` walks all
``2**c`` smoothings and counts loops with a union-find.  :func:`kauffman_bracket`
contracts crossings one at a time while tracking how the open arc ends are
paired, which keeps the work proportional to the number of distinct pairings
rather than the number of states.  Tests compare the two.

Smoothing convention for a crossing ``(a, b, c, d)``: the A-smoothing joins
``a`` with ``b`` and ``c`` with ``d``; the B-smoothing joins ``a`` with ``d``
and ``b`` with ``c``.
"""

from __future__ import annotations

import os
from collections import defaultdict

from .diagram import DiagramError, PlanarDiagram, require_valid
from .laurent import A, LOOP_VALUE, LaurentPolynomial

DEFAULT_CAP = 26
CAP_ENV = "KNOTCOVER_BRACKET_CAP"


class CrossingCapExceeded(DiagramError):
    """The diagram has more crossings than the configured bracket cap."""


def bracket_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise DiagramError(f"{CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise DiagramError(f"{CAP_ENV} must be non-negative")
    return value


def _check_cap(d: PlanarDiagram, cap: int | None) -> None:
    limit = bracket_cap() if cap is None else cap
    if len(d.crossings) > limit:
        raise CrossingCapExceeded(f"{len(d.crossings)} crossings exceed the bracket cap of {limit}")


def _delta_powers(n: int) -> list[LaurentPolynomial]:
    out = [LaurentPolynomial.constant(1)]
    for _ in range(n):
        out.append(out[-1] * LOOP_VALUE)
    return out


def bracket_state_sum(d: PlanarDiagram, cap: int | None = None) -> LaurentPolynomial:
    """Bracket by enumerating every state; the reference oracle."""
    require_valid(d)
    _check_cap(d, cap)
    labels = d.arcs()
    index = {x: t for t, x in enumerate(labels)}
    n = len(d.crossings)
    pairs_a = [((index[a], index[b]), (index[c], index[e])) for a, b, c, e in d.crossings]
    pairs_b = [((index[a], index[e]), (index[b], index[c])) for a, b, c, e in d.crossings]
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for i in range(n):
            if state >> i & 1:
                pr = pairs_b[i]
            else:
                pr = pairs_a[i]
                a_count += 1
            for x, y in pr:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        loops = sum(1 for t in range(len(labels)) if find(t) == t)
        counts[(2 * a_count - n, loops)] += 1
    deltas = _delta_powers(len(labels) + 1)
    total = LaurentPolynomial()
    for (exp, loops), mult in counts.items():
        total = total + LaurentPolynomial.monomial(exp, mult) * deltas[loops - 1]
    return total


def _join(m: dict[int, int], x: int, y: int) -> int:
    """Join the ends of arcs ``x`` and ``y``; return the number of loops closed."""
    if x == y:
        return 1
    ex = m.pop(x, None)
    ey = m.pop(y, None)
    if ex is not None and ex == y:
        return 1
    end1 = x if ex is None else ex
    end2 = y if ey is None else ey
    m[end1] = end2
    m[end2] = end1
    return 0


def _order(d: PlanarDiagram) -> list[int]:
    """Greedy elimination order keeping the open frontier small."""
    n = len(d.crossings)
    remaining = set(range(n))
    open_count: dict[int, int] = defaultdict(int)
    order: list[int] = []
    while remaining:
        best = max(
            remaining,
            key=lambda i: (sum(1 for x in d.crossings[i] if open_count[x] == 1), -i),
        )
        remaining.discard(best)
        order.append(best)
        for x in d.crossings[best]:
            open_count[x] += 1
    return order


def kauffman_bracket(d: PlanarDiagram, cap: int | None = None) -> LaurentPolynomial:
    """Normalized bracket with loop value ``-A^2 - A^-2`` and unknot = 1."""
    require_valid(d)
    _check_cap(d, cap)
    factors = {
        (shift, loops): LaurentPolynomial.monomial(shift) * LOOP_VALUE**loops
        for shift in (1, -1)
        for loops in range(3)
    }
    states: dict[frozenset, LaurentPolynomial] = {frozenset(): LaurentPolynomial.constant(1)}
    for i in _order(d):
        a, b, c, e = d.crossings[i]
        nxt: dict[frozenset, LaurentPolynomial] = {}
        for key, poly in states.items():
            for shift, pr in ((1, ((a, b), (c, e))), (-1, ((a, e), (b, c)))):
                m = dict(key)
                loops = sum(_join(m, x, y) for x, y in pr)
                nk = frozenset(m.items())
                term = poly * factors[(shift, loops)]
                nxt[nk] = nxt[nk] + term if nk in nxt else term
        states = nxt
    if set(states) != {frozenset()}:
        raise DiagramError("unmatched arc ends after contraction")
    total = states[frozenset()] * LOOP_VALUE ** len(d.loops)
    if total == LaurentPolynomial.constant(1) and not d.crossings and not d.loops:
        return total
    return total.exact_div(LOOP_VALUE)


def jones(d: PlanarDiagram, cap: int | None = None, oracle: bool = False) -> LaurentPolynomial:
    """Jones polynomial in the variable ``A``; use ``.in_t()`` for ``t = A^-4``.

    Raises ``DiagramError`` for an unoriented diagram.
    """
    if d.signs is None:
        raise DiagramError("jones needs an oriented diagram")
    br = bracket_state_sum(d, cap) if oracle else kauffman_bracket(d, cap)
    w = d.writhe()
    return br * ((-(A**3)) ** (-w))


__all__ = [
    "CrossingCapExceeded",
    "bracket_cap",
    "bracket_state_sum",
    "jones",
    "kauffman_bracket",
]
