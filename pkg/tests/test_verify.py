"""Verification sweeps: small-cap runs, determinism, replay, CLI wiring.

Full-cap sweeps live in the acceptance module; here every check runs at
reduced caps so the orchestration logic (instance counting, verdicts,
counterexample serialization, report shape) is exercised quickly.
"""
import json
import subprocess
import sys

import pytest

from clawham.clawfree import net_condition_holds
from clawham.cli import main
from clawham.graphio import parse_graph6, write_graph6
from clawham.graphs import GraphError, is_triangle_free, mask_of
from clawham.trails import closed_trail_exists, has_dct, has_sct
from clawham.verify import (
    CHECKS,
    GADGET_DCT_EXPECTED,
    GADGET_SCT_EXPECTED,
    CheckResult,
    check_gadget_fixture,
    gadget_graph,
    run_all_checks,
    run_check,
)

SMALL = {
    "gadget": {},
    "c5-attachment": {},
    "marked-edge-dct": {"max_n": 5},
    "line-hamilton-dct": {"max_n": 6},
    "closure": {"max_n": 7},
    "min-degree-hamilton": {"max_n": 7},
    "net-condition-hamilton": {"max_n": 7},
    "dct-or-heavy-matching": {"max_n": 7},
    "matching-degree-sum": {"max_n": 7},
    "collapsible-remainder": {"max_n": 6},
    "spider-net": {"max_n": 7},
    "short-cycle-collapsible": {"max_n": 6},
}


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_all_checks_pass_at_small_caps(name):
    res = run_check(name, **SMALL[name])
    assert isinstance(res, CheckResult)
    assert res.verdict == "pass", res.counterexamples[:3]
    assert res.counterexamples == []
    assert res.instances >= 0
    assert res.elapsed >= 0


def test_gadget_structure_is_frozen():
    g = gadget_graph()
    assert g.n == 8 and g.edge_count == 11
    assert is_triangle_free(g)
    # five-cycle 0..4, attachers 5 and 7 with two cycle neighbors each,
    # 6 hanging off 5 with one cycle neighbor
    assert sorted(v for v in range(5) if g.has_edge(5, v)) == [0, 2]
    assert sorted(v for v in range(5) if g.has_edge(7, v)) == [2, 4]
    assert sorted(v for v in range(5) if g.has_edge(6, v)) == [1]
    assert g.has_edge(5, 6)


def test_gadget_trail_status_replays():
    g = gadget_graph()
    assert (has_sct(g) is not None) == GADGET_SCT_EXPECTED
    assert (has_dct(g) is not None) == GADGET_DCT_EXPECTED
    first = check_gadget_fixture().to_json(with_elapsed=False)
    second = check_gadget_fixture().to_json(with_elapsed=False)
    assert first == second


def test_reports_are_deterministic_modulo_elapsed():
    for name in ("c5-attachment", "closure", "matching-degree-sum"):
        a = run_check(name, **SMALL[name]).to_json(with_elapsed=False)
        b = run_check(name, **SMALL[name]).to_json(with_elapsed=False)
        assert a == b


def test_instance_counts_monotone_in_cap():
    for name in ("line-hamilton-dct", "closure", "marked-edge-dct"):
        lo = run_check(name, max_n=4).instances
        hi = run_check(name, max_n=5).instances
        assert lo <= hi


def test_report_json_schema():
    res = run_check("closure", max_n=6)
    blob = res.to_json()
    assert set(blob) == {
        "name", "family", "instances", "counterexamples",
        "verdict", "params", "elapsed",
    }
    json.dumps(blob)  # serializable


def test_run_check_rejects_unknown_names_and_params():
    with pytest.raises(GraphError):
        run_check("nonsense")
    with pytest.raises(GraphError):
        run_check("gadget", max_n=5)


def test_run_all_checks_covers_registry():
    results = run_all_checks(max_n=4)
    assert [r.name for r in results] == list(CHECKS)


def test_counterexamples_would_replay():
    """Serialize instances exactly as the marked-edge sweep would and
    confirm the CLI replay path reproduces the sweep's predicate."""
    from clawham.enumeration import marked_edge_instances
    from clawham.graphio import dump_multigraph_json

    checked = 0
    for inst in marked_edge_instances(4):
        if checked >= 5:
            break
        checked += 1
        blob = json.loads(dump_multigraph_json(inst.graph))
        # what the check asserts
        req = mask_of((inst.x, inst.y))
        expect = closed_trail_exists(
            inst.graph, mode="dominating", required_vertices=req
        ) is not None
        # replay through the CLI machinery
        import tempfile, os

        with tempfile.NamedTemporaryFile(
            "w", suffix=".json", delete=False
        ) as fh:
            json.dump(blob, fh)
            path = fh.name
        try:
            code = main(
                ["dct", "--adj-json", path,
                 "--require-vertices", f"{inst.x},{inst.y}"]
            )
        finally:
            os.unlink(path)
        assert (code == 0) == expect


# ---------------------------------------------------------------------------
# CLI


def test_cli_verify_exit_codes(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", "gadget", "--json", str(out)])
    assert code == 0
    blob = json.loads(out.read_text())
    assert blob["name"] == "gadget" and blob["verdict"] == "pass"
    text = capsys.readouterr().out
    assert "gadget: pass" in text


def test_cli_single_instance_commands(capsys):
    assert main(["hamilton", "--g6", write_graph6(gadget_graph())]) == 1
    assert main(["sct", "--g6", write_graph6(gadget_graph())]) == 1
    assert main(["dct", "--g6", write_graph6(gadget_graph())]) == 0
    trail = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert set(trail) == {"vertices", "edge_ids"}
    assert main(["closure", "--g6", "DUW"]) == 0
    assert main(["root", "--g6", "D?{"]) == 1  # the claw is not a line graph
    assert main(["collapsible", "--g6", "C~"]) == 0
    assert main(["collapsible", "--g6", "Dhc"]) == 1


def test_cli_invalid_inputs_exit_2(capsys):
    assert main(["hamilton", "--g6", "not graph6"]) == 2
    assert main(["dct", "--g6", "Dhc", "--require-vertices", "zap"]) == 2
    assert main(["enumerate", "--spec", "/nonexistent.json"]) == 2


def test_cli_enumerate(tmp_path, capsys):
    spec = tmp_path / "fam.json"
    spec.write_text('{"n": 4, "connected": true}')
    assert main(["enumerate", "--spec", str(spec), "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "6"
    assert main(["enumerate", "--spec", str(spec)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6
    assert all(parse_graph6(line).n == 4 for line in lines)


def test_cli_entrypoint_runs_as_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "clawham.cli", "verify", "c5-attachment"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "c5-attachment: pass" in proc.stdout
