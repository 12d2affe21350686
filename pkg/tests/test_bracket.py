from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotcover.bracket import (
    CAP_ENV,
    CrossingCapExceeded,
    bracket_cap,
    bracket_state_sum,
    jones,
    kauffman_bracket,
)
from knotcover.diagram import DiagramError, PlanarDiagram, validate
from knotcover.laurent import A
from knotcover.moves import (
    add_kink,
    add_r2,
    apply_r3,
    braid_closure,
    face_edges,
    r3_applicable,
    random_braid_diagram,
    triangles,
)

seeds = st.integers(0, 10**9)


def r3_rich_braid(rng: random.Random) -> PlanarDiagram:
    """Random braid closure containing a same-sign ``s_i s_{i+1} s_i`` pattern.

    Every generator appears on both sides of the pattern, so the six arcs
    leaving its triangle are distinct.  At most 11 crossings.
    """
    n = rng.randint(3, 4)
    i = rng.randint(1, n - 2)
    s = rng.choice([1, -1])

    def pad() -> list[int]:
        gens = list(range(1, n)) + [rng.randint(1, n - 1) for _ in range(rng.randint(0, 1))]
        rng.shuffle(gens)
        return [rng.choice([1, -1]) * g for g in gens]

    return braid_closure(pad() + [s * i, s * (i + 1), s * i] + pad(), n)


class TestKnownValues:
    def test_unknot(self):
        assert kauffman_bracket(PlanarDiagram((), None, (1,))).terms == {0: 1}

    def test_positive_kink(self):
        d, sign = add_kink(PlanarDiagram((), None, (1,)), 1)
        assert sign == 1
        assert kauffman_bracket(d) == -(A**3)

    def test_trefoil_bracket(self, trefoil):
        expected = -(A**5) - A**-3 + A**-7
        assert kauffman_bracket(trefoil) == expected
        assert bracket_state_sum(trefoil) == expected

    def test_trefoil_jones(self, trefoil):
        assert jones(trefoil).to_t_string() == "t + t^3 - t^4"
        assert jones(trefoil) == jones(trefoil, oracle=True)

    def test_hopf_jones(self, hopf):
        assert jones(hopf).to_t_string() == "-t^(1/2) - t^(5/2)"
        assert jones(hopf) == jones(hopf, oracle=True)

    def test_two_component_unlink(self):
        d = PlanarDiagram((), None, (1, 2))
        assert kauffman_bracket(d) == -(A**2) - A**-2

    def test_jones_needs_orientation(self, trefoil):
        with pytest.raises(DiagramError):
            jones(trefoil.unoriented())


class TestCap:
    def test_explicit_cap(self, trefoil):
        with pytest.raises(CrossingCapExceeded):
            kauffman_bracket(trefoil, cap=2)

    def test_env_override(self, trefoil, monkeypatch):
        monkeypatch.setenv(CAP_ENV, "2")
        assert bracket_cap() == 2
        with pytest.raises(CrossingCapExceeded):
            jones(trefoil)

    def test_default(self, monkeypatch):
        monkeypatch.delenv(CAP_ENV, raising=False)
        assert bracket_cap() == 26

    def test_bad_env(self, monkeypatch):
        monkeypatch.setenv(CAP_ENV, "lots")
        with pytest.raises(DiagramError):
            bracket_cap()


@given(seeds)
def test_contraction_matches_state_sum(seed):
    d = random_braid_diagram(random.Random(seed), 12)
    assert kauffman_bracket(d) == bracket_state_sum(d)


@given(seeds, st.booleans(), st.booleans())
def test_r1_scales_by_kink_factor(seed, left, under):
    rng = random.Random(seed)
    d = random_braid_diagram(rng, 11)
    kinked, sign = add_kink(d, rng.choice(d.arcs()), loop_left=left, first_under=under)
    assert validate(kinked).ok
    assert kauffman_bracket(kinked) == kauffman_bracket(d) * (-(A**3)) ** sign
    assert jones(kinked) == jones(d)


@given(seeds, st.booleans())
def test_r2_keeps_bracket(seed, first_over):
    rng = random.Random(seed)
    d = random_braid_diagram(rng, 10)
    faces = [f for f in d.faces() if len(f.corners) >= 2]
    face = rng.choice(faces)
    edges = face_edges(d, sorted(face.corners))
    e1, e2 = rng.sample(edges, 2)
    if d.crossings[e1[0]][e1[1]] == d.crossings[e2[0]][e2[1]]:
        return
    out = add_r2(d, e1, e2, first_over)
    assert validate(out).ok
    assert len(out.crossings) == len(d.crossings) + 2
    assert kauffman_bracket(out) == kauffman_bracket(d)
    assert jones(out) == jones(d)


@given(seeds)
def test_r3_keeps_bracket(seed):
    d = r3_rich_braid(random.Random(seed))
    moves = [t for t in triangles(d) if r3_applicable(d, t)]
    assert moves, "the inserted braid relation always yields a triangle"
    for tri in moves:
        out = apply_r3(d, tri)
        assert validate(out).ok
        assert out.crossings != d.crossings
        assert kauffman_bracket(out) == kauffman_bracket(d)
        assert jones(out) == jones(d)


def test_r_moves_on_two_hundred_diagrams():
    """Fixed-seed sweep: R1, R2 and R3 checks on 200 diagrams of at most 12 crossings."""
    rng = random.Random(20240611)
    checked = {"R1": 0, "R2": 0, "R3": 0}
    for _ in range(200):
        d = random_braid_diagram(rng, 10)
        base = kauffman_bracket(d)
        kinked, sign = add_kink(d, rng.choice(d.arcs()), rng.random() < 0.5, rng.random() < 0.5)
        assert kauffman_bracket(kinked) == base * (-(A**3)) ** sign
        checked["R1"] += 1
        face = rng.choice([f for f in d.faces() if len(f.corners) >= 2])
        e1, e2 = rng.sample(face_edges(d, sorted(face.corners)), 2)
        if d.crossings[e1[0]][e1[1]] != d.crossings[e2[0]][e2[1]]:
            assert kauffman_bracket(add_r2(d, e1, e2, rng.random() < 0.5)) == base
            checked["R2"] += 1
        r = r3_rich_braid(rng)
        assert len(r.crossings) <= 12
        for tri in triangles(r):
            if r3_applicable(r, tri):
                assert kauffman_bracket(apply_r3(r, tri)) == kauffman_bracket(r)
                checked["R3"] += 1
    assert checked["R1"] == 200 and checked["R2"] > 100 and checked["R3"] >= 200
