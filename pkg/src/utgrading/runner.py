"""Task dispatch: run a validated JobConfig and assemble the report.

Exit codes: 0 all assertions pass, 1 invalid config, 2 some assertion
failed, 3 budget exceeded (report carries "incomplete": true).
"""

import json
import random
import time

from .analysis import (
    BudgetExceeded,
    NoSolution,
    TheoremViolation,
    construct_omega_invertible,
    diag_group,
    enumerate_stab,
    involution_survey,
    verify_theorems,
    weyl_group,
    _ser,
)
from .config import ConfigError, parse
from .gradings import ELEMENTARY, GradingError, is_symmetric
from .groups import is_commutative_subset
from .triangular import packed_cells

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ASSERTION = 2
EXIT_BUDGET = 3


def run_raw(raw, include_timing=False):
    """Run a raw config dict; returns (exit_code, report_dict)."""
    try:
        cfg = parse(raw)
    except ConfigError as exc:
        return EXIT_CONFIG, {"config_echo": raw, "diagnostics": exc.diagnostics}
    return run(cfg, include_timing=include_timing)


def run(cfg, include_timing=False):
    """Run all configured tasks; returns (exit_code, report_dict)."""
    results = {}
    assertions = []
    timing = {}
    exit_code = EXIT_OK
    incomplete = False
    rng = random.Random(cfg.seed)

    for task in cfg.tasks:
        start = time.perf_counter()
        try:
            code = _run_task(task, cfg, rng, results, assertions)
            exit_code = max(exit_code, code)
        except BudgetExceeded as exc:
            incomplete = True
            exit_code = EXIT_BUDGET
            results[task] = {"status": "budget-exceeded",
                             "needed": exc.needed, "allowed": exc.allowed}
        # timing defaults to null per task so reruns stay byte-identical
        timing[task] = round(time.perf_counter() - start, 6) if include_timing else None

    report = {
        "config_echo": cfg.raw,
        "results": results,
        "assertions": assertions,
        "timing": timing,
    }
    if incomplete:
        report["incomplete"] = True
    return exit_code, report


def _run_task(task, cfg, rng, results, assertions):
    if task in ("verify", "report"):
        return _task_verify(task, cfg, rng, results, assertions)
    if task == "stab":
        return _task_stab(cfg, results)
    if task == "weyl":
        return _task_weyl(cfg, results)
    if task == "diag":
        return _task_diag(cfg, results, assertions)
    if task == "involutions":
        return _task_involutions(cfg, results)
    if task == "omega-construct":
        return _task_omega(cfg, results)
    raise ValueError(f"unknown task {task!r}")


def _task_verify(task, cfg, rng, results, assertions):
    report = verify_theorems(cfg.grading, cfg.product, cfg.budget, rng)
    for entry in report["assertions"]:
        assertions.append(entry)
    summary = {"stab": report["stab"], "weyl": report["weyl"]}
    if "diag" in report:
        summary["diag"] = report["diag"]
    if task == "report":
        summary["support"] = _ser(cfg.grading.support())
        summary["components"] = {
            str(_ser(g)): len(idx) for g, idx in sorted(cfg.grading.components().items())}
        if (cfg.grading.kind == ELEMENTARY and cfg.field.characteristic != 2):
            inv = involution_survey(cfg.grading, cfg.budget)
            summary["involutions"] = _involution_summary(cfg, inv)
    results[task] = summary
    failed = any(a["status"] == "fail" for a in report["assertions"])
    return EXIT_ASSERTION if failed else EXIT_OK


def _task_stab(cfg, results):
    rep = enumerate_stab(cfg.grading, cfg.product, cfg.budget)
    results["stab"] = {
        "candidates": rep.candidates,
        "graded_matrices": rep.graded_matrix_count,
        "inner_count": rep.inner_count,
        "psi_count": len(rep.psi_maps),
        "outer": {"name": rep.outer_name, "graded": rep.outer_graded},
        "total_order": rep.total_order,
        "structure": rep.structure,
    }
    return EXIT_OK


def _task_weyl(cfg, results):
    rep = weyl_group(cfg.grading, cfg.product, cfg.budget)
    results["weyl"] = {
        "order": rep.order,
        "structure": rep.structure,
        "support": _ser(rep.support),
        "permutations": [list(q) for q in rep.permutations],
    }
    return EXIT_OK


def _task_diag(cfg, results, assertions):
    try:
        rep = diag_group(cfg.grading, cfg.product, cfg.budget)
    except TheoremViolation as exc:
        assertions.append({"id": "diag-equals-characters", "status": "fail",
                           "details": str(exc)})
        return EXIT_ASSERTION
    results["diag"] = {
        "order": rep.order,
        "universal": rep.presentation.descriptor(),
        "character_count": len(rep.character_maps),
    }
    assertions.append({"id": "diag-equals-characters", "status": "pass",
                       "details": {"order": rep.order}})
    return EXIT_OK


def _involution_summary(cfg, rep):
    grading = cfg.grading
    reason = None
    if not rep.exists:
        if not is_symmetric(grading.eta):
            reason = "the defining sequence is not symmetric"
        elif not is_commutative_subset(grading.support()):
            reason = "the support is not commutative"
        else:
            reason = "no invertible matrix a with t(a) = +/-a yields a graded involution"
    summary = {
        "exists": rep.exists,
        "candidates": rep.candidates,
        "count": len(rep.witnesses),
        "canonical": sum(1 for w in rep.witnesses if w.classification == "canonical"),
        "symplectic": sum(1 for w in rep.witnesses if w.classification == "symplectic"),
        "witnesses": [
            {"classification": w.classification,
             "matrix": _matrix_entries(w.matrix)}
            for w in rep.witnesses[:8]
        ],
    }
    if reason:
        summary["reason"] = reason
    return summary


def _matrix_entries(a):
    return {f"{i},{j}": a.field.to_str(a.entry(i, j))
            for (i, j) in packed_cells(a.n) if a.entry(i, j) != a.field.zero}


def _task_involutions(cfg, results):
    if cfg.grading.kind != ELEMENTARY:
        raise GradingError("the involution survey applies to elementary gradings")
    rep = involution_survey(cfg.grading, cfg.budget)
    results["involutions"] = _involution_summary(cfg, rep)
    return EXIT_OK


def _task_omega(cfg, results):
    params = cfg.omega_params
    try:
        a = construct_omega_invertible(params["entries"], params["k"], cfg.n, cfg.field)
    except NoSolution as exc:
        results["omega-construct"] = {"exists": False, "reason": str(exc)}
        return EXIT_OK
    results["omega-construct"] = {
        "exists": True,
        "k": cfg.field.to_str(params["k"]),
        "matrix": _matrix_entries(a),
    }
    return EXIT_OK


def render_json(report):
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def render_text(report):
    lines = []
    if "diagnostics" in report:
        lines.append("invalid config:")
        for d in report["diagnostics"]:
            lines.append(f"  {d['path'] or '/'}: {d['message']}")
        return "\n".join(lines) + "\n"
    for task, data in report.get("results", {}).items():
        lines.append(f"[{task}]")
        lines.extend(_text_block(data, indent="  "))
    if report.get("assertions"):
        lines.append("[assertions]")
        for a in report["assertions"]:
            lines.append(f"  {a['status'].upper():4s} {a['id']}")
    if report.get("incomplete"):
        lines.append("incomplete: budget exceeded")
    return "\n".join(lines) + "\n"


def _text_block(data, indent):
    lines = []
    if isinstance(data, dict):
        for k in data:
            v = data[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_text_block(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)):
                lines.extend(_text_block(v, indent))
            else:
                lines.append(f"{indent}- {v}")
    else:
        lines.append(f"{indent}{data}")
    return lines
