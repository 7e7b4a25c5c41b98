import json

import pytest

from cyclicmon.cli import cmd_compute, cmd_verify, format_text, main, parse_report
from cyclicmon.config import ConfigError, parse_config


def cfg(**kw):
    base = {"schema": 1, "group": {"cyclic": 1}, "category": "vec",
            "algebra": {"named": "unit"}, "coefficient": {"named": "Ve"}}
    base.update(kw)
    return json.dumps(base)


def test_minimal_config():
    c = parse_config(cfg(max_degree=3))
    assert c.max_degree == 3 and c.pipeline == "old"
    assert len(c.instances) == 1
    assert c.instances[0].algebra.dim == 1


def test_multi_instance_document():
    doc = {"schema": 1, "pipeline": "all", "instances": [
        {"name": "unit", "group": {"cyclic": 1}, "category": "vec",
         "algebra": {"named": "unit"}, "coefficient": {"named": "Ve"}},
        {"name": "dual", "group": {"symmetric": 3}, "category": "rep",
         "algebra": {"named": "unit"}, "coefficient": {"named": "adHdelta"},
         "pairs": ["canonical", {"free": "regular"}]},
    ]}
    c = parse_config(json.dumps(doc), max_degree=2)
    assert [i.name for i in c.instances] == ["unit", "dual"]
    assert [p[0] for p in c.instances[1].pairs] == ["canonical", "free"]


def test_mpi_with_chi_x_not_one_is_rejected():
    text = cfg(group={"cyclic": 2}, category="graded",
               coefficient={"named": "mpi", "chi": [1, -1], "x": 1})
    with pytest.raises(ConfigError, match="stability"):
        parse_config(text)


def test_explicit_non_sayd_coefficient_reports_witness():
    text = cfg(group={"cyclic": 2}, category="graded",
               coefficient={"explicit": {"degrees": [1], "action": [[[1]], [[-1]]]}})
    with pytest.raises(ConfigError, match=r"stability_violation\(1,\)") as exc:
        parse_config(text)
    assert exc.value.path == "$.coefficient"


def test_budget_rejected_before_matrix_work():
    text = cfg(group={"cyclic": 2}, algebra={"matrix": 2, "inner": {"named": "group_algebra"}})
    with pytest.raises(ConfigError, match="exceeds budget"):
        parse_config(text, budget=1000)


@pytest.mark.parametrize("doc,path", [
    ({"schema": 1, "group": {"cyclic": 1}, "category": "vec", "algebra": {"named": "unit"},
      "coefficient": {"named": "Ve"}, "colour": 1}, "$.colour"),
    ({"schema": 2}, "$.schema"),
    ({"schema": 1, "group": {"table": [[0, 1], [1, 1]]}, "category": "rep",
      "algebra": {"named": "unit"}, "coefficient": {"named": "Ve"}}, "$.group.table"),
    ({"schema": 1, "group": {"cyclic": 2}, "category": "rep", "algebra": {"named": "unit"},
      "coefficient": {"named": "Ve", "rep": [[[1, 0], [0, 1]], [[1]]]}}, "$.coefficient.rep[1]"),
    ({"schema": 1, "group": {"cyclic": 2}, "category": "rep", "algebra": {"named": "unit"},
      "coefficient": {"named": "Ve"}, "trace": "B"}, "$.trace"),
    ({"schema": 1, "group": {"cyclic": 2}, "category": "rep", "algebra": {"crossed": {"named": "unit"}},
      "coefficient": {"named": "Ve"}}, "$.algebra"),
])
def test_schema_errors_carry_paths(doc, path):
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps(doc))
    assert exc.value.path == path


def test_invalid_json():
    with pytest.raises(ConfigError, match="invalid JSON"):
        parse_config("{")


def test_explicit_algebra():
    alg = {"explicit": {"dim": 2, "products": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
                        "unit": [1, 0]}}
    c = parse_config(cfg(algebra=alg))
    rep = cmd_compute(c)
    assert rep["instances"][0]["rows"][0]["HH"] == [2, 1, 1, 1]
    bad = {"explicit": {"dim": 2, "products": [[0, 0, 0, 1], [0, 1, 1, 1]], "unit": [1, 0]}}
    with pytest.raises(ConfigError, match="algebra check failed"):
        parse_config(cfg(algebra=bad))


def test_compute_unit_and_kz2():
    rep = cmd_compute(parse_config(cfg(pipeline="all")))
    rows = rep["instances"][0]["rows"]
    assert [r["pipeline"] for r in rows] == ["old", "new[canonical]"]
    assert all(r["HC"] == [1, 0, 1, 0] for r in rows)
    assert rep["instances"][0]["agree"] and rep["passed"]
    rep = cmd_compute(parse_config(cfg(group={"cyclic": 2}, algebra={"named": "group_algebra"},
                                       pipeline="all", pairs=["canonical", {"free": "unit"}])))
    assert [r["HC"] for r in rep["instances"][0]["rows"]] == [[2, 0, 2, 0]] * 3


def test_report_round_trip_and_determinism():
    c = parse_config(cfg(group={"cyclic": 2}, category="graded", algebra={"named": "group_algebra"},
                         coefficient={"named": "adHdelta"}, pipeline="all"))
    a, b = cmd_compute(c), cmd_compute(c)
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b
    text = json.dumps(a)
    assert parse_report(text) == a
    with pytest.raises(ValueError):
        parse_report(json.dumps({"schema": 9}))


def test_text_table_carries_same_numbers():
    rep = cmd_compute(parse_config(cfg(pipeline="all")))
    text = format_text(rep)
    lines = [l for l in text.splitlines() if l.startswith("#0")]
    assert len(lines) == 2
    for line, row in zip(lines, rep["instances"][0]["rows"]):
        cells = line.split("  ")
        cells = [c.strip() for c in cells if c.strip()]
        assert cells[1] == row["pipeline"]
        assert cells[2].split() == [str(x) for x in row["HH"]]
        assert cells[3].split() == [str(x) for x in row["HC"]]


def test_verify_morita():
    status, rep = cmd_verify(["morita"], 3)
    assert status == 0
    assert len(rep["suites"][0]["instances"]) == 3


def test_cli_exit_codes(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(cfg())
    assert main(["compute", str(p), "--max-degree", "3"]) == 0
    assert "1 0 1" in capsys.readouterr().out
    out = tmp_path / "r.json"
    assert main(["compute", str(p), "--format", "json", "--out", str(out), "--pipeline", "all"]) == 0
    rep = parse_report(out.read_text())
    assert rep["instances"][0]["rows"][1]["HC"] == [1, 0, 1, 0]
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["compute", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(cfg(group={"cyclic": 2}, category="graded",
                       coefficient={"named": "mpi", "chi": [1, -1], "x": 1}))
    assert main(["compute", str(bad)]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--suite", "morita", "--max-degree", "2", "--format", "json"]) == 0


def test_cli_explain(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(cfg(group={"cyclic": 2}, algebra={"named": "group_algebra"}))
    assert main(["explain", str(p), "--max-degree", "2"]) == 0
    out = capsys.readouterr().out
    assert "tau_2" in out and "delta_2: C^1 -> C^2" in out
    assert main(["explain", str(p), "--max-degree", "6"]) == 2


def test_mathematical_failure_exit_code(monkeypatch, tmp_path):
    import cyclicmon.cli as cli
    from cyclicmon.cyclic import StructuralFailure

    def broken(*a, **k):
        raise StructuralFailure("b^2 != 0 at degree 0")
    monkeypatch.setattr(cli, "build_old_cocyclic", broken)
    p = tmp_path / "c.json"
    p.write_text(cfg())
    assert main(["compute", str(p)]) == 1
