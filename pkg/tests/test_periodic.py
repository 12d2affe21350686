from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotcover.bracket import jones
from knotcover.diagram import (
    DiagramError,
    PlanarDiagram,
    alternating_unknot_check,
    find_nugatory,
    is_alternating,
    mirror,
    orient_components,
    validate,
)
from knotcover.iso import DiagramMap, find_isomorphism
from knotcover.moves import random_braid_diagram
from knotcover.periodic import (
    AxisClosureDiagram,
    InternalNugatory,
    NontrivialKnot,
    NotAlternating,
    PeriodError,
    PeriodicDiagram,
    QuotientError,
    QuotientNormalForm,
    TangleDiagram,
    build_periodic,
    closure,
    cut_to_tangle,
    detect_period,
    face_distance,
    insert_twist_string,
    nf_canonical,
    nf_reversed,
    nf_to_diagram,
    nf_to_tangle,
    normalize_unknot_quotient,
    period_witnesses,
    quotient,
    strip_string,
)

QNF = QuotientNormalForm

forms = st.builds(
    lambda k, boxes, m: QNF(k, tuple(boxes[: k - 1]), m),
    st.integers(1, 6),
    st.lists(st.integers(1, 4), min_size=5, max_size=5),
    st.sampled_from([1, -1]),
)

wide_forms = st.builds(
    lambda k, boxes, m: QNF(k, tuple(boxes[: k - 1]), m),
    st.integers(1, 8),
    st.lists(st.integers(1, 5), min_size=7, max_size=7),
    st.sampled_from([1, -1]),
)


def same_closure(a: AxisClosureDiagram, b: AxisClosureDiagram) -> bool:
    return find_isomorphism(a.diagram, b.diagram, match_marked=True) is not None


def twist_string(count: int) -> AxisClosureDiagram:
    """Unknot drawn as a row of ``count`` twists, axis in the monogon at one end."""
    return insert_twist_string(nf_to_diagram(QNF(1, ())), count)


class TestText:
    def test_round_trip(self):
        for text in ["5;2,1,3,1;+", "1;;+", "2;4;-"]:
            assert str(QNF.parse(text)) == text

    @pytest.mark.parametrize("text", ["", "3;2;+", "2;0;+", "2;1;*", "x;;+", "2;1", "0;;+"])
    def test_malformed(self, text):
        with pytest.raises(DiagramError):
            QNF.parse(text)


class TestCanonical:
    def test_reversal_is_smaller(self):
        assert nf_canonical(QNF(4, (3, 1, 2))).boxes == (2, 1, 3)

    def test_palindrome(self):
        assert nf_canonical(QNF(3, (2, 2))) == QNF(3, (2, 2))

    def test_trivial(self):
        assert nf_canonical(QNF(1, (), -1)) == QNF(1, ())

    @given(forms)
    def test_idempotent(self, q):
        assert nf_canonical(nf_canonical(q)) == nf_canonical(q)
        assert nf_canonical(nf_reversed(q)) == nf_canonical(q)

    @given(forms)
    def test_reversal_is_an_involution(self, q):
        if q.k > 1:
            assert nf_reversed(nf_reversed(q)) == q


class TestPinwheel:
    def test_crossingless(self):
        a = nf_to_diagram(QNF(1, ()))
        assert a.diagram.crossings == () and a.k == 1

    def test_two_strands_is_a_twist_row(self):
        a = nf_to_diagram(QNF(2, (4,)))
        assert len(a.diagram.crossings) == 4
        assert find_nugatory(a.diagram) == set(range(4))

    def test_five_strands(self):
        a = nf_to_diagram(QNF(5, (2, 1, 3, 1)))
        assert len(a.diagram.crossings) == 7
        assert face_distance(a.diagram, a.axis_face, a.infinity_face) == 5

    @given(forms)
    def test_alternating_unknot(self, q):
        a = nf_to_diagram(q)
        assert validate(a.diagram).ok
        assert is_alternating(a.diagram)
        assert alternating_unknot_check(a.diagram).is_unknot
        assert face_distance(a.diagram, a.axis_face, a.infinity_face) == q.k
        if q.k >= 2:
            # both ends of the pinwheel are R-I loops
            assert len(a.diagram.face_by_id(a.axis_face).corners) == 1
            assert len(a.diagram.face_by_id(a.infinity_face).corners) == 1

    @given(forms)
    def test_mirror_bit_is_chirality(self, q):
        a, b = nf_to_diagram(q), nf_to_diagram(QNF(q.k, q.boxes, -q.mirror))
        assert find_isomorphism(mirror(a.diagram), b.diagram, match_marked=True) is not None

    @given(forms)
    def test_reversed_reading_swaps_marked_faces(self, q):
        if q.k == 1:
            return
        a, b = nf_to_diagram(q), nf_to_diagram(nf_reversed(q))
        swapped = a.diagram.with_marked_faces((a.infinity_face, a.axis_face))
        assert find_isomorphism(swapped, b.diagram, match_marked=True) is not None


class TestNormalize:
    def test_crossingless(self):
        q, log = normalize_unknot_quotient(nf_to_diagram(QNF(1, ())))
        assert q == QNF(1, ()) and log == []

    def test_strip_record_kinds(self):
        step = strip_string(nf_to_diagram(QNF(3, (3, 2))))
        assert step.count == 3
        assert [r.direction for r in step.records] == ["across-axis", "ordinary", "ordinary"]
        assert step.closure.k == 2

    def test_reinserted_string(self):
        """Push an extra twist string into the axis face, then normalize it away."""
        base = nf_to_diagram(QNF(3, (2, 2)))
        stripped = strip_string(base).closure
        for corner in sorted(stripped.diagram.face_by_id(stripped.axis_face).corners):
            grown = insert_twist_string(stripped, 2, corner)
            assert grown.k == 3
            q, _ = normalize_unknot_quotient(grown)
            assert nf_canonical(q) == QNF(3, (2, 2))

    def test_extra_string_raises_k(self):
        a = nf_to_diagram(QNF(3, (2, 2)))
        for corner in sorted(a.diagram.face_by_id(a.axis_face).corners):
            q, _ = normalize_unknot_quotient(insert_twist_string(a, 1, corner))
            assert q.k == 4 and q.boxes[1:] == (2, 2)

    @given(forms)
    def test_round_trip(self, q):
        out, log = normalize_unknot_quotient(nf_to_diagram(q))
        assert out == q
        strips = [r for r in log if r.kind == "strip"]
        assert [r.site[1] for r in strips] == list(q.boxes)
        ks = [int(r.direction.split()[1].split("->")[0]) for r in strips]
        assert ks == list(range(q.k, 1, -1))

    @given(wide_forms)
    def test_wide_range(self, q):
        a = nf_to_diagram(q)
        assert is_alternating(a.diagram) and alternating_unknot_check(a.diagram).is_unknot
        out, log = normalize_unknot_quotient(a)
        assert nf_canonical(out) == nf_canonical(q)
        # each strip lowers the crossing count by the length of its string
        assert sum(r.site[1] for r in log if r.kind == "strip") == len(a.diagram.crossings)

    @given(forms)
    def test_other_side(self, q):
        a = nf_to_diagram(q)
        flipped = AxisClosureDiagram(a.diagram, a.infinity_face, a.axis_face, a.k)
        out, _ = normalize_unknot_quotient(flipped)
        assert out == nf_reversed(q)
        assert nf_canonical(out) == nf_canonical(q)

    @given(forms, st.integers(0, 10**6))
    def test_relabelled_input(self, q, seed):
        a = nf_to_diagram(q)
        if not a.diagram.crossings:
            return
        rng = random.Random(seed)
        labels = a.diagram.arcs()
        names = dict(zip(labels, rng.sample(range(500, 500 + len(labels)), len(labels))))
        rows = tuple(tuple(names[x] for x in c) for c in a.diagram.crossings)
        d = PlanarDiagram(rows)
        face = {f: tuple(names[x] for x in f) for f in a.diagram.face_ids()}
        ids = {tuple(sorted(f)): f for f in d.face_ids()}
        axis, inf = (ids[tuple(sorted(face[f]))] for f in (a.axis_face, a.infinity_face))
        out, _ = normalize_unknot_quotient(AxisClosureDiagram(d, axis, inf, a.k))
        assert out == q

    @given(forms)
    def test_final_reconstruction_has_loops_at_both_ends(self, q):
        out, _ = normalize_unknot_quotient(nf_to_diagram(q))
        rebuilt = nf_to_diagram(out)
        d = rebuilt.diagram
        if out.k >= 2:
            for face in (rebuilt.axis_face, rebuilt.infinity_face):
                ((x, _),) = d.face_by_id(face).corners
                assert x in find_nugatory(d)


class TestNormalizeErrors:
    def test_not_alternating(self, trefoil):
        d = trefoil.unoriented()
        a, b, c, e = d.crossings[0]
        switched = PlanarDiagram(((b, c, e, a),) + d.crossings[1:])
        faces = switched.face_ids()
        with pytest.raises(NotAlternating):
            normalize_unknot_quotient(AxisClosureDiagram.from_diagram(switched, faces[0], faces[1]))

    def test_trefoil_is_not_a_quotient_of_the_unknot(self, trefoil):
        d = trefoil.unoriented()
        for axis, inf in itertools.permutations(d.face_ids(), 2):
            with pytest.raises(NontrivialKnot):
                normalize_unknot_quotient(AxisClosureDiagram.from_diagram(d, axis, inf))

    def test_three_twists_with_adjacent_marked_faces(self):
        a = twist_string(3)
        d = a.diagram
        for f in d.face_ids():
            if f != a.axis_face and face_distance(d, a.axis_face, f) == 1:
                with pytest.raises((NontrivialKnot, InternalNugatory)):
                    normalize_unknot_quotient(AxisClosureDiagram.from_diagram(d, a.axis_face, f))

    def test_kink_away_from_both_marks(self):
        # three curls; marks in two of the loops leave the third curl inside the tangle
        rows = tuple((2 * i + 1, (2 * i + 2) % 6 + 1, 2 * i + 2, 2 * i + 2) for i in range(3))
        d = PlanarDiagram(rows)
        with pytest.raises(InternalNugatory):
            normalize_unknot_quotient(AxisClosureDiagram.from_diagram(d, (2,), (4,)))

    def test_link_rejected(self, hopf):
        faces = hopf.face_ids()
        with pytest.raises(QuotientError, match="one component"):
            normalize_unknot_quotient(AxisClosureDiagram.from_diagram(hopf.unoriented(), faces[0], faces[1]))


class TestClosure:
    def test_json_round_trip(self):
        a = nf_to_diagram(QNF(3, (2, 1)))
        again = AxisClosureDiagram.from_json(a.to_json())
        assert again == a and again.to_json() == a.to_json()

    def test_json_requires_axis(self):
        with pytest.raises(DiagramError):
            AxisClosureDiagram.from_json('{"crossings": [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]}')

    @given(forms)
    def test_cut_then_close(self, q):
        a = nf_to_diagram(q)
        t = cut_to_tangle(a)
        assert t.k == q.k
        assert same_closure(closure(t), a)

    @given(st.integers(0, 10**6))
    def test_cut_random_diagrams(self, seed):
        rng = random.Random(seed)
        d = random_braid_diagram(rng, 6, 3).unoriented()
        axis, inf = rng.sample(d.face_ids(), 2)
        a = AxisClosureDiagram.from_diagram(d, axis, inf)
        t = cut_to_tangle(a)
        assert t.k == a.k
        assert same_closure(closure(t), a)

    def test_tangle_json(self):
        t = nf_to_tangle(QNF(3, (2, 1)))
        assert TangleDiagram.from_json_dict(t.to_json_dict()) == t

    def test_bad_tangle(self):
        with pytest.raises(DiagramError):
            TangleDiagram(((1, 2, 3, 4),), (1,), (1,)).check()


class TestBuildPeriodic:
    def test_crossingless(self):
        p = build_periodic(nf_to_tangle(QNF(1, ())), 3)
        assert p.diagram.crossings == () and p.n == 3

    def test_order_one_rejected(self):
        with pytest.raises(PeriodError):
            build_periodic(nf_to_tangle(QNF(2, (1,))), 1)

    def test_trefoil(self, trefoil):
        p = build_periodic(nf_to_tangle(QNF(2, (1,))), 3)
        d = p.diagram
        assert len(d.crossings) == 3 and is_alternating(d)
        j = jones(orient_components(d))
        assert j in (jones(trefoil), jones(trefoil).substitute_power(-1))

    def test_six_fold_three_strands(self):
        t = nf_to_tangle(QNF(3, (1, 2)))
        p = build_periodic(t, 6)
        assert len(p.diagram.crossings) == 18
        assert quotient(p).k == 3

    @given(forms, st.integers(2, 6))
    def test_round_trip(self, q, n):
        t = nf_to_tangle(q)
        p = build_periodic(t, n)
        assert len(p.diagram.crossings) == n * len(t.crossings)
        assert is_alternating(p.diagram)
        assert same_closure(quotient(p), closure(t))

    def test_identity_rejected(self):
        p = build_periodic(nf_to_tangle(QNF(2, (1,))), 3)
        c = len(p.diagram.crossings)
        ident = DiagramMap(tuple(range(c)), (0,) * c, {x: x for x in p.diagram.arcs()})
        with pytest.raises(PeriodError):
            quotient(PeriodicDiagram(p.diagram, 3, ident, p.axis_faces))


    @given(forms, st.integers(2, 6))
    def test_json_round_trip(self, q, n):
        p = build_periodic(nf_to_tangle(q), n)
        again = PeriodicDiagram.from_json_dict(json.loads(json.dumps(p.to_json_dict())))
        assert again.automorphism == p.automorphism
        assert (again.n, again.k, again.axis_faces) == (n, p.k, p.axis_faces)
        assert same_closure(quotient(again), quotient(p))

    def test_json_rejects_broken_rotation(self):
        data = build_periodic(nf_to_tangle(QNF(3, (1, 2))), 4).to_json_dict()
        data["rotation"]["shift"][0] = 2
        with pytest.raises(PeriodError):
            PeriodicDiagram.from_json_dict(data)
        data["rotation"]["perm"][0] = data["rotation"]["perm"][1]
        with pytest.raises(PeriodError):
            PeriodicDiagram.from_json_dict(data)

    def test_json_needs_rotation(self):
        data = build_periodic(nf_to_tangle(QNF(2, (1,))), 3).to_json_dict()
        del data["rotation"]
        with pytest.raises(DiagramError):
            PeriodicDiagram.from_json_dict(data)


class TestDetect:
    def test_trefoil_three(self, trefoil):
        w = detect_period(trefoil, 3)
        assert w is not None and w.n == 3

    def test_figure_eight_five(self, figure_eight):
        assert detect_period(figure_eight, 5) is None

    def test_order_four_witness(self):
        p = build_periodic(nf_to_tangle(QNF(3, (2, 1))), 4)
        found = period_witnesses(p.diagram, 4)
        assert any(w.automorphism.perm == p.automorphism.perm for w in found)

    def test_order_one(self, trefoil):
        assert detect_period(trefoil, 1) is None

    @given(st.integers(2, 6), forms)
    def test_quotient_of_detected_period(self, n, q):
        p = build_periodic(nf_to_tangle(q), n)
        w = detect_period(p.diagram, n)
        assert w is not None
        if p.diagram.crossings:
            out = quotient(w)
            assert len(out.diagram.crossings) == len(p.diagram.crossings) // n
