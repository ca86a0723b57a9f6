import json

import pytest
from click.testing import CliRunner

from utgrading.cli import main
from utgrading.config import ConfigError, parse, validate
from utgrading.runner import (
    EXIT_ASSERTION,
    EXIT_BUDGET,
    EXIT_CONFIG,
    EXIT_OK,
    render_json,
    render_text,
    run_raw,
)


def base_config(**overrides):
    raw = {
        "n": 3,
        "field": {"type": "gf", "p": 3},
        "product": "assoc",
        "group": {"abelian": {"free_rank": 0, "torsion": [2]}},
        "grading": {"kind": "elementary", "eta": [[1], [1]]},
        "tasks": ["verify"],
        "format": "json",
        "seed": 0,
    }
    raw.update(overrides)
    return raw


def paths(diags):
    return [d["path"] for d in diags]


# -- validation -------------------------------------------------------------

def test_parse_valid_config():
    cfg = parse(base_config())
    assert cfg.n == 3
    assert cfg.product == "assoc"
    assert cfg.grading.kind == "elementary"
    assert cfg.tasks == ["verify"]
    assert validate(base_config()) == []


def test_invalid_n():
    diags = validate(base_config(n=0))
    assert paths(diags) == ["/n"]
    with pytest.raises(ConfigError):
        parse(base_config(n=0))


def test_invalid_product_and_field():
    diags = validate(base_config(product="boolean",
                                 field={"type": "reals"}))
    assert "/product" in paths(diags)
    assert "/field/type" in paths(diags)


def test_gf_requires_prime():
    diags = validate(base_config(field={"type": "gf", "p": 6}))
    assert paths(diags) == ["/field/p"]


def test_eta_length_and_coords():
    diags = validate(base_config(grading={"kind": "elementary", "eta": [[1]]}))
    assert paths(diags) == ["/grading/eta"]
    diags = validate(base_config(
        grading={"kind": "elementary", "eta": [[1], [1, 0]]}))
    assert paths(diags) == ["/grading/eta/1"]


def test_mt_requires_char_not_2():
    raw = base_config(product="jordan",
                      field={"type": "gf", "p": 2},
                      grading={"kind": "mt", "eta": [[1], [1]]})
    diags = validate(raw)
    assert {"path": "/field", "message": "MT requires characteristic != 2"} in diags


def test_mt_requires_lie_or_jordan_and_symmetry():
    raw = base_config(grading={"kind": "mt", "eta": [[1], [1]]})
    assert "/grading/kind" in paths(validate(raw))
    raw = base_config(product="jordan",
                      grading={"kind": "mt", "eta": [[1], [0]]})
    assert "/grading/eta" in paths(validate(raw))


def test_lie_requires_abelian_group():
    s3 = [
        [0, 1, 2, 3, 4, 5],
        [1, 2, 0, 4, 5, 3],
        [2, 0, 1, 5, 3, 4],
        [3, 5, 4, 0, 2, 1],
        [4, 3, 5, 1, 0, 2],
        [5, 4, 3, 2, 1, 0],
    ]
    raw = base_config(product="lie",
                      group={"cayley": s3},
                      grading={"kind": "elementary", "eta": [1, 2]})
    diags = validate(raw)
    assert {"path": "/group",
            "message": "Lie/Jordan gradings require an abelian group"} in diags
    # the same table is fine for the associative product
    assoc = base_config(group={"cayley": s3},
                        grading={"kind": "elementary", "eta": [1, 2]})
    assert validate(assoc) == []


def test_enumeration_needs_finite_field():
    raw = base_config(field={"type": "q"})
    diags = validate(raw)
    assert "/field" in paths(diags)


def test_unknown_task_and_budget():
    diags = validate(base_config(tasks=["verify", "solve-everything"]))
    assert "/tasks/1" in paths(diags)
    assert "/budget" in paths(validate(base_config(budget=0)))
    assert "/format" in paths(validate(base_config(format="yaml")))
    assert "/seed" in paths(validate(base_config(seed="zero")))


def test_omega_config():
    raw = base_config(n=2, product="assoc",
                      grading={"kind": "elementary", "eta": [[1]]},
                      tasks=["omega-construct"],
                      omega={"k": "1", "entries": {"1,1": "2"}})
    cfg = parse(raw)
    assert cfg.omega_params["k"] == cfg.field.one
    assert cfg.omega_params["entries"][(1, 1)] == cfg.field.element(2)
    bad = dict(raw, omega={"k": "0"})
    assert "/omega/k" in paths(validate(bad))
    bad = dict(raw, omega={"entries": {"2,2": "1"}})
    assert "/omega/entries/2,2" in paths(validate(bad))


# -- runner -----------------------------------------------------------------

def test_run_verify_exit_ok():
    code, report = run_raw(base_config())
    assert code == EXIT_OK
    assert all(a["status"] == "pass" for a in report["assertions"])
    assert report["results"]["verify"]["stab"]["inner_count"] == 12
    assert report["timing"] == {"verify": None}


def test_run_invalid_config_exit_1():
    code, report = run_raw(base_config(n=0))
    assert code == EXIT_CONFIG
    assert paths(report["diagnostics"]) == ["/n"]


def test_run_budget_exceeded_exit_3():
    code, report = run_raw(base_config(budget=10))
    assert code == EXIT_BUDGET
    assert report["incomplete"] is True
    assert report["results"]["verify"]["status"] == "budget-exceeded"


def test_run_tasks_stab_weyl_diag():
    raw = base_config(tasks=["stab", "weyl", "diag"])
    code, report = run_raw(raw)
    assert code == EXIT_OK
    assert report["results"]["stab"]["inner_count"] == 12
    assert report["results"]["weyl"]["order"] == 1
    assert report["results"]["diag"]["order"] == 2
    assert report["results"]["diag"]["universal"] == {"free_rank": 0, "torsion": [2]}


def test_run_involutions_task():
    code, report = run_raw(base_config(tasks=["involutions"]))
    assert code == EXIT_OK
    inv = report["results"]["involutions"]
    assert inv["exists"] and inv["canonical"] == 6 and inv["symplectic"] == 0
    asym = base_config(grading={"kind": "elementary", "eta": [[1], [0]]},
                       tasks=["involutions"])
    code, report = run_raw(asym)
    assert code == EXIT_OK
    inv = report["results"]["involutions"]
    assert not inv["exists"]
    assert inv["reason"] == "the defining sequence is not symmetric"


def test_run_omega_construct():
    raw = base_config(n=2, grading={"kind": "elementary", "eta": [[1]]},
                      tasks=["omega-construct"],
                      omega={"k": "1", "entries": {"1,1": "2"}})
    code, report = run_raw(raw)
    assert code == EXIT_OK
    res = report["results"]["omega-construct"]
    assert res["exists"] and res["matrix"] == {"1,1": "2", "2,2": "2"}
    # odd n with non-square k: a clean no-solution answer, not a failure
    raw = base_config(n=3, tasks=["omega-construct"],
                      omega={"k": "2", "entries": {"1,1": "1", "1,2": "0"}})
    code, report = run_raw(raw)
    assert code == EXIT_OK
    res = report["results"]["omega-construct"]
    assert res["exists"] is False and "square" in res["reason"]


def test_run_report_task():
    code, report = run_raw(base_config(tasks=["report"]))
    assert code == EXIT_OK
    res = report["results"]["report"]
    assert "support" in res and "components" in res and "involutions" in res


def test_reports_are_deterministic():
    a = render_json(run_raw(base_config())[1])
    b = render_json(run_raw(base_config())[1])
    assert a == b
    assert a.endswith("\n")
    json.loads(a)  # valid JSON


def test_render_text():
    code, report = run_raw(base_config())
    text = render_text(report)
    assert "[verify]" in text and "PASS" in text
    code, report = run_raw(base_config(n=0))
    assert "invalid config" in render_text(report)


# -- CLI --------------------------------------------------------------------

def write_config(tmp_path, raw, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


def test_cli_run_json(tmp_path):
    path = write_config(tmp_path, base_config())
    runner = CliRunner()
    result = runner.invoke(main, ["run", "--config", path])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["results"]["verify"]["weyl"]["order"] == 1


def test_cli_run_out_file_deterministic(tmp_path):
    path = write_config(tmp_path, base_config())
    runner = CliRunner()
    out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
    assert runner.invoke(main, ["run", "--config", path, "--out", out1]).exit_code == 0
    assert runner.invoke(main, ["run", "--config", path, "--out", out2]).exit_code == 0
    with open(out1) as f1, open(out2) as f2:
        assert f1.read() == f2.read()


def test_cli_run_exit_codes(tmp_path):
    runner = CliRunner()
    bad = write_config(tmp_path, base_config(n=0), "bad.json")
    assert runner.invoke(main, ["run", "--config", bad]).exit_code == 1
    tight = write_config(tmp_path, base_config(), "tight.json")
    result = runner.invoke(main, ["run", "--config", tight, "--budget", "10"])
    assert result.exit_code == 3


def test_cli_run_format_override(tmp_path):
    path = write_config(tmp_path, base_config(format="text"))
    runner = CliRunner()
    result = runner.invoke(main, ["run", "--config", path, "--format", "json"])
    assert result.exit_code == 0
    json.loads(result.output)


def test_cli_validate(tmp_path):
    runner = CliRunner()
    good = write_config(tmp_path, base_config(), "good.json")
    result = runner.invoke(main, ["validate", "--config", good])
    assert result.exit_code == 0 and result.output.strip() == "ok"
    bad = write_config(tmp_path, base_config(product="boolean"), "bad.json")
    result = runner.invoke(main, ["validate", "--config", bad])
    assert result.exit_code == 1
    assert "/product" in result.output
