"""Command-line front end: dispatch, flag overrides, stdin input, exit
codes, skipped-path surfacing, negative controls, determinism of the
bundled corpus, and the per-command report shapes."""

import json
import subprocess
import sys

import pytest

from dgforge.cli import (
    GOLDIE_STAGES,
    bundled_fixture_texts,
    main,
    run_fixtures,
    run_spec,
)
from dgforge.orelocal import VERIFICATION_CHECKS
from dgforge.report import emit_report
from dgforge.specfile import SpecFile, emit_spec

ENDO_DOC = {
    "version": 1,
    "field": "Q",
    "backend": "findim",
    "algebra": {"fixture": "endo2x2-dg"},
    "analyses": ["validate", "radicals"],
    "localise_at": [{"elements": [{"e11": 1, "e22": 2}], "mode": "regular"}],
    "budgets": {"samples": 40},
}

BROKEN_DOC = {
    "version": 1,
    "field": "Q",
    "backend": "findim",
    "algebra": {
        "names": ["1", "x"],
        "degrees": [0, -1],
        "products": {"1 1": {"1": 1}, "1 x": {"x": 1}, "x 1": {"x": 1}, "x x": {"x": 1}},
        "diff": {"x": {"1": 1}},
        "unit": "1",
    },
}


def write_doc(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def entries_of(payload: bytes) -> dict:
    return {c["name"]: c for c in json.loads(payload)["checks"]}


# ----------------------------------------------------------------- dispatch


def test_validate_good_spec_exit_zero(tmp_path, capsysbinary):
    code = main(["validate", write_doc(tmp_path, ENDO_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["validate/leibniz"]["status"] == "pass"
    assert len(checks) == 6


def test_validate_broken_algebra_exit_nonzero_with_leibniz_witness(tmp_path, capsysbinary):
    code = main(["validate", write_doc(tmp_path, BROKEN_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 1
    leibniz = checks["validate/leibniz"]
    assert leibniz["status"] == "fail" and leibniz["witness"] is not None


def test_invalid_ring_blocks_other_commands(tmp_path, capsysbinary):
    code = main(["radicals", write_doc(tmp_path, BROKEN_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 1
    assert any(name.startswith("validate/") for name in checks)
    assert not any(name.startswith("radicals/") for name in checks)


def test_parse_error_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"version": 1,,}')
    code = main(["validate", str(path)])
    err = capsys.readouterr().err
    assert code == 2 and "line 1" in err


def test_missing_file_exit_two(tmp_path, capsys):
    code = main(["validate", str(tmp_path / "nope.json")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_stdin_input(tmp_path, capsysbinary, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(ENDO_DOC)))
    code = main(["validate", "-"])
    assert code == 0
    assert b"validate/unit" in capsysbinary.readouterr().out


def test_lenient_flag_warns_and_runs(tmp_path, capsysbinary):
    doc = dict(ENDO_DOC)
    doc["mystery"] = True
    path = write_doc(tmp_path, doc)
    assert main(["validate", path]) == 2
    capsysbinary.readouterr()
    code = main(["validate", "--no-strict", path])
    out = capsysbinary.readouterr()
    assert code == 0
    assert b"mystery" in out.err


def test_text_format(tmp_path, capsysbinary):
    code = main(["validate", "--format", "text", write_doc(tmp_path, ENDO_DOC)])
    out = capsysbinary.readouterr().out.decode()
    assert code == 0
    assert "6 checks: 6 pass" in out


# ----------------------------------------------------------- command shapes


def test_radicals_entries(tmp_path, capsysbinary):
    code = main(["radicals", write_doc(tmp_path, ENDO_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["radicals/dgnil-dim"]["witness"] == 0
    assert checks["radicals/dgnil-quotient-reduced"]["status"] == "pass"
    assert checks["radicals/dg-prime"]["witness"] == "yes"
    assert checks["radicals/classical-nil-dim"]["witness"] == 0


def test_localise_entries_cover_all_five_checks(tmp_path, capsysbinary):
    code = main(["localise", write_doc(tmp_path, ENDO_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    for name in VERIFICATION_CHECKS:
        assert checks[f"localise/s0/{name}"]["status"] == "pass"
    assert checks["localise/s0/construct"]["witness"] == 1
    assert checks["localise/s0/quotient-ring-axioms"]["status"] == "pass"


def test_localise_non_ore_request_fails(tmp_path, capsysbinary):
    doc = dict(ENDO_DOC)
    doc["localise_at"] = [{"elements": ["e12"], "mode": "regular"}]
    code = main(["localise", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 1
    assert checks["localise/s0/construct"]["status"] == "fail"


def test_localise_without_requests_is_skipped(tmp_path, capsysbinary):
    doc = {k: v for k, v in ENDO_DOC.items() if k != "localise_at"}
    code = main(["localise", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["localise/requested"]["status"] == "skipped"


def test_goldie_failure_marks_unreached_stages(tmp_path, capsysbinary):
    code = main(["goldie", write_doc(tmp_path, ENDO_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 1
    assert checks["goldie/gr-prime"]["status"] == "fail"
    for stage in ("gr-Goldie", "ore", "localise", "dg-simple"):
        assert checks[f"goldie/{stage}"]["status"] == "unknown"
    assert set(f"goldie/{s}" for s in GOLDIE_STAGES) <= set(checks)


def test_goldie_poly_all_stages_pass(tmp_path, capsysbinary):
    doc = {
        "version": 1,
        "field": "Q",
        "backend": "poly",
        "ring": {"fixture": "kx-dg"},
        "budgets": {"samples": 40},
    }
    code = main(["goldie", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    for stage in GOLDIE_STAGES:
        assert checks[f"goldie/{stage}"]["status"] == "pass"
    assert checks["goldie/transfer/gr-prime-implies-dg-prime"]["status"] == "pass"


def test_homcompare_skips_non_cycle_and_passes_cycle(tmp_path, capsysbinary):
    doc = {
        "version": 1,
        "field": "Q",
        "backend": "poly",
        "ring": {"fixture": "kx-dg"},
        "localise_at": [
            {"elements": ["X"], "mode": "regular"},
            {"elements": ["X^2"], "mode": "kernel"},
        ],
        "budgets": {"window": 20},
    }
    code = main(["homcompare", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["homcompare/s0/applicable"]["status"] == "skipped"
    assert checks["homcompare/s1/dimension_per_degree"]["status"] == "pass"


def test_budget_exceeded_surfaces_as_skipped(tmp_path, capsysbinary):
    doc = {
        "version": 1,
        "field": {"Fp": 2},
        "backend": "findim",
        "algebra": {"fixture": "group-algebra-c2"},
        "budgets": {"budget": 1},
    }
    code = main(["radicals", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["radicals/available"]["status"] == "skipped"
    assert "budget" in checks["radicals/available"]["witness"] or ">" in checks["radicals/available"]["witness"]


def test_field_too_small_surfaces_as_skipped(tmp_path, capsysbinary):
    doc = {
        "version": 1,
        "field": {"Fp": 2},
        "backend": "findim",
        "algebra": {"fixture": "group-algebra-c2"},
    }
    code = main(["radicals", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["radicals/classical-nil-dim"]["status"] == "skipped"
    assert "p > 2" in checks["radicals/classical-nil-dim"]["witness"]


def test_essential_respects_declared_modules(tmp_path, capsysbinary):
    doc = dict(ENDO_DOC)
    doc["modules"] = [{"kind": "regular", "side": "right", "copies": 2}]
    code = main(["essential", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["essential/right-regular-x2/udim"]["witness"] == "2..2"
    assert checks["essential/right-regular-x2/socle-dim"]["witness"] == 4


# ------------------------------------------------------------ flag overrides


def test_field_and_seed_overrides(tmp_path, capsysbinary):
    path = write_doc(tmp_path, ENDO_DOC)
    code = main(["radicals", "--field", "GF(7)", "--seed", "3", path])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    assert checks["radicals/dgnil-dim"]["witness"] == 0


def test_all_runs_only_requested_analyses(tmp_path, capsysbinary):
    code = main(["all", write_doc(tmp_path, ENDO_DOC)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 0
    prefixes = {name.split("/")[0] for name in checks}
    assert prefixes == {"validate", "radicals"}


# ---------------------------------------------------------------- fixtures


def test_bundled_corpus_passes_and_is_deterministic():
    texts = bundled_fixture_texts()
    assert len(texts) >= 8
    rep = run_fixtures(texts)
    failures = [e for e in rep.entries if e.status == "fail"]
    assert rep.exit_code() == 0, failures
    names = {e.name for e in rep.entries}
    for fixture in ("endo2x2-dg", "trunc-poly-dg", "kx-dg", "product-field"):
        assert f"{fixture}/analyses-ran" in names
    assert emit_report(rep, "json") == emit_report(run_fixtures(texts), "json")


def test_fixtures_expect_mismatch_reported(tmp_path, capsysbinary):
    doc = {
        "version": 1,
        "field": "Q",
        "backend": "findim",
        "algebra": {"fixture": "dual-numbers"},
        "analyses": ["radicals"],
        "name": "wrong-expect",
        "expect": {
            "radicals/dgnil-dim": {"status": "pass", "witness": 0},
            "radicals/list-of-bees": "pass",
        },
    }
    code = main(["fixtures", write_doc(tmp_path, doc)])
    checks = entries_of(capsysbinary.readouterr().out)
    assert code == 1
    mismatch = checks["wrong-expect/expect/radicals/dgnil-dim"]
    assert mismatch["status"] == "fail"
    assert mismatch["witness"]["computed"]["witness"] == 1
    assert checks["wrong-expect/expect/radicals/list-of-bees"]["witness"] == "no such computed check"


def test_console_entry_point_subprocess(tmp_path):
    path = write_doc(tmp_path, ENDO_DOC)
    proc = subprocess.run(
        [sys.executable, "-m", "dgforge.cli", "validate", path],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["checks"]


def test_run_spec_reports_timing_in_entries(tmp_path):
    spec_doc = json.dumps(ENDO_DOC)
    from dgforge.specfile import parse_spec

    rep = run_spec(parse_spec(spec_doc), "validate")
    assert all(e.timing is not None and e.timing >= 0 for e in rep.entries)
