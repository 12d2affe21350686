from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from knotcover.bracket import CAP_ENV
from knotcover.cli import cli, main
from knotcover.periodic import QuotientNormalForm, nf_to_diagram, nf_to_tangle


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args: str, env: dict[str, str] | None = None):
        return runner.invoke(cli, list(args), env=env, catch_exceptions=False)

    return invoke


@pytest.fixture
def write(tmp_path):
    def put(name: str, payload) -> str:
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return put


TREFOIL = {"crossings": [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]}
FIGURE_EIGHT = {"crossings": [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]}


class TestTorus:
    def test_cover_json(self, run):
        res = run("cover", "--a1", "2", "--a2", "3", "--n", "5", "--json")
        assert res.exit_code == 0
        assert json.loads(res.output) == {"a1": 2, "a2": 3, "n": 5, "case": "1", "genus": 0,
                                          "fibres": [2, 3, 5], "flags": []}

    def test_cover_text(self, run):
        res = run("cover", "--a1", "3", "--a2", "2", "--n", "2")
        assert "case=2d" in res.output and "LensSpace" in res.output

    def test_cover_not_coprime(self, run):
        res = run("cover", "--a1", "2", "--a2", "4", "--n", "5")
        assert res.exit_code == 2 and "TorusError" in res.output

    def test_cover_bad_degree(self, run):
        assert run("cover", "--a1", "2", "--a2", "3", "--n", "1").exit_code == 2

    def test_recover(self, run):
        res = run("recover", "--n", "6", "--genus", "1", "--json")
        assert res.exit_code == 0
        assert json.loads(res.output) == {"a1": 2, "a2": 3, "n": 6, "case": "3f"}

    def test_recover_lens(self, run):
        res = run("recover", "--n", "2", "--genus", "0", "--fibres", "3,3", "--flags", "LensSpace")
        assert res.exit_code == 0 and res.output.strip() == "T(2,3) case=2d"

    def test_recover_impossible(self, run):
        res = run("recover", "--n", "21", "--genus", "2", "--fibres", "7")
        assert res.exit_code == 1 and "NotACoverSignature" in res.output

    def test_recover_bad_fibres(self, run):
        assert run("recover", "--n", "5", "--genus", "0", "--fibres", "2,x").exit_code == 2
        assert run("recover", "--n", "5", "--genus", "0", "--fibres", "1,3").exit_code == 2
        assert run("recover", "--n", "5", "--genus", "0", "--flags", "Prism").exit_code == 2

    def test_twins(self, run):
        res = run("twins", "--a1", "2", "--a2", "3", "--b1", "2", "--b2", "7", "--n", "2", "--json")
        out = json.loads(res.output)
        assert out["verdict"] == "NotTwins" and "[3, 3] vs [7, 7]" in out["evidence"]
        res = run("twins", "--a1", "2", "--a2", "3", "--b1", "3", "--b2", "2", "--n", "4")
        assert res.output.strip() == "EquivalentKnots"

    def test_scan(self, run):
        res = run("scan", "--amax", "30", "--nmax", "30")
        assert res.exit_code == 0
        assert res.output.strip().splitlines()[-1] == "collisions: 0"

    def test_scan_json(self, run):
        out = json.loads(run("scan", "--amax", "5", "--nmax", "3", "--json").output)
        assert out["collisions"] == 0 and len(out["rows"]) == 2


class TestPeriodic:
    def test_quotient_normal_form(self, run, write):
        path = write("q.json", nf_to_diagram(QuotientNormalForm(3, (2, 2))).to_json())
        res = run("quotient", "--in", path)
        assert res.exit_code == 0 and res.output.strip() == "3;2,2;+"

    def test_quotient_json_log(self, run, write):
        path = write("q.json", nf_to_diagram(QuotientNormalForm(3, (3, 1), -1)).to_json())
        out = json.loads(run("quotient", "--in", path, "--json").output)
        assert out["qnf"] == "3;3,1;-" and out["canonical"] == "3;1,3;+"
        assert [r["kind"] for r in out["log"]].count("strip") == 2

    def test_quotient_detects_period(self, run, write):
        res = run("quotient", "--in", write("t.json", TREFOIL), "--n", "3")
        assert res.exit_code == 0 and res.output.strip() == "2;1;+"

    def test_quotient_of_built_periodic_diagram(self, run, write):
        built = run("build-periodic", "--qnf", "3;1,2;+", "--n", "4", "--json").output
        path = write("p.json", built)
        assert run("quotient", "--in", path).output.strip() == "3;1,2;+"
        assert run("quotient", "--in", path, "--n", "4").output.strip() == "3;1,2;+"
        assert run("quotient", "--in", path, "--n", "3").exit_code == 2

    def test_quotient_of_built_circle(self, run, write):
        path = write("c.json", run("build-periodic", "--qnf", "1;;+", "--n", "3", "--json").output)
        assert run("quotient", "--in", path).output.strip() == "1;;+"

    def test_quotient_without_axis(self, run, write):
        assert run("quotient", "--in", write("t.json", TREFOIL)).exit_code == 2

    def test_quotient_no_period(self, run, write):
        res = run("quotient", "--in", write("f.json", FIGURE_EIGHT), "--n", "5")
        assert res.exit_code == 1 and "PeriodError" in res.output

    def test_quotient_nontrivial(self, run, write):
        data = dict(TREFOIL, axis_face=[1, 5, 3], infinity_face=[2, 4, 6], k=2)
        res = run("quotient", "--in", write("t.json", data))
        assert res.exit_code == 1 and "NontrivialKnot" in res.output

    def test_build_periodic(self, run):
        out = json.loads(run("build-periodic", "--qnf", "2;1;+", "--n", "3", "--json").output)
        assert len(out["crossings"]) == 3 and out["n"] == 3 and out["k"] == 2

    def test_build_periodic_from_tangle(self, run, write):
        path = write("t.json", nf_to_tangle(QuotientNormalForm(3, (1, 2))).to_json_dict())
        out = json.loads(run("build-periodic", "--in", path, "--n", "4", "--json").output)
        assert len(out["crossings"]) == 12

    def test_build_periodic_needs_one_source(self, run):
        assert run("build-periodic", "--n", "3").exit_code == 2

    def test_detect_period(self, run, write):
        out = json.loads(run("detect-period", "--in", write("t.json", TREFOIL), "--n", "3", "--json").output)
        assert out["found"] is True and len(out["axis_faces"]) == 2

    def test_detect_period_none(self, run, write):
        res = run("detect-period", "--in", write("f.json", FIGURE_EIGHT), "--n", "5", "--json")
        assert res.exit_code == 0 and json.loads(res.output) == {"found": False, "n": 5}


class TestExchange:
    def test_text(self, run):
        res = run("exchange", "--nfl", "2;4;+")
        assert res.exit_code == 0
        assert res.output.strip().splitlines()[-1] == "result 2;4;+;labels=AK"

    def test_json(self, run, write):
        out = json.loads(run("exchange", "--in", write("l.txt", "4;3,3,2;+\n"), "--json").output)
        assert out["linking_number"] == 4
        assert [r["kind"] for r in out["log"]][0] == "parity-move"

    def test_malformed(self, run):
        res = run("exchange", "--nfl", "2;4")
        assert res.exit_code == 2 and "MalformedNFL" in res.output


class TestDiagrams:
    def test_jones(self, run, write):
        res = run("jones", "--in", write("t.json", dict(TREFOIL, orientations=[1, 1, 1])))
        assert res.output.strip() == "t + t^3 - t^4"

    def test_jones_orients_knots(self, run, write):
        out = json.loads(run("jones", "--in", write("t.json", TREFOIL), "--json", "--oracle").output)
        assert out["text"] in ("t + t^3 - t^4", "t^-1 + t^-3 - t^-4")

    def test_jones_cap(self, run, write):
        path = write("t.json", TREFOIL)
        res = run("jones", "--in", path, env={CAP_ENV: "2"})
        assert res.exit_code == 1 and "CrossingCapExceeded" in res.output

    def test_jones_unoriented_link(self, run, write):
        res = run("jones", "--in", write("h.json", {"crossings": [[1, 3, 2, 4], [3, 1, 4, 2]]}))
        assert res.exit_code == 1

    def test_validate(self, run, write):
        assert run("validate", "--in", write("t.json", TREFOIL)).exit_code == 0
        bad = {"crossings": [[1, 5, 2, 4], [3, 1, 4, 6], [5, 1, 6, 2]]}
        res = run("validate", "--in", write("b.json", bad))
        assert res.exit_code == 1 and "arc multiplicity: FAIL" in res.output

    @pytest.mark.parametrize("payload", ["{", "[1, 2]", '{"crossings": [[1, 2]]}'])
    def test_malformed_json(self, run, write, payload):
        assert run("validate", "--in", write("x.json", payload)).exit_code == 2

    def test_missing_file(self, run, tmp_path):
        assert run("validate", "--in", str(tmp_path / "nope.json")).exit_code == 2


def test_unknown_command(run):
    assert run("frobnicate").exit_code == 2


def test_json_is_deterministic(run):
    first = run("scan", "--amax", "12", "--nmax", "12", "--json").output
    assert first == run("scan", "--amax", "12", "--nmax", "12", "--json").output
    json.loads(first)


def test_console_entry_point():
    with pytest.raises(SystemExit) as exc:
        main(["cover", "--a1", "2", "--a2", "3", "--n", "5"])
    assert exc.value.code == 0
