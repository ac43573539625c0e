import json
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from fpp_verify import cli
from fpp_verify.registry import REGISTRY, load_configs, registry_listing, run_claims, select
from fpp_verify.report import ClaimReport, emit_report, parse_report, to_jsonable

DATA = resources.files("fpp_verify").joinpath("data")
FIXED_TIME = "2026-01-01T00:00:00+00:00"


@pytest.fixture(scope="module")
def full_results():
    return run_claims(load_configs(), "all")


@pytest.fixture
def config_dir(tmp_path):
    for name in ("Y.json", "X_caseI.json", "X_caseII.json"):
        (tmp_path / name).write_text(DATA.joinpath(name).read_text("utf-8"), encoding="utf-8")
    return tmp_path


def test_registry_frozen_listing_matches_code():
    frozen = json.loads(DATA.joinpath("claims.json").read_text("utf-8"))
    assert frozen == registry_listing()


def test_registry_ids_unique_and_sorted():
    ids = [s.claim_id for s in REGISTRY]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


def test_case_selection():
    ids_i = {s.claim_id for s in select("I")}
    ids_ii = {s.claim_id for s in select("II")}
    assert not any(".caseII." in c for c in ids_i)
    assert not any(".caseI." in c for c in ids_ii)
    assert ids_i | ids_ii == {s.claim_id for s in select("all")}
    with pytest.raises(ValueError):
        select("III")


def test_full_run(full_results):
    assert len(full_results) >= 40
    assert len(full_results) == len(REGISTRY)
    statuses = {r.status for r in full_results}
    assert statuses == {"verified", "asserted-unverified"}
    by_id = {r.claim_id: r for r in full_results}
    assert by_id["chern.c2Z"].status == "verified" and by_id["chern.c2Z"].computed == 3
    asserted = {r.claim_id for r in full_results if r.status == "asserted-unverified"}
    assert asserted == {"Y.cover.degree3", "Y.lattice.length_bound", "cover.X.degree7",
                        "lemma.general_type", "lemma.pg.h0_K", "lemma.pg.sheaf_steps",
                        "theorem.fake_plane"}


def test_parallel_matches_serial(full_results):
    par = run_claims(load_configs(), "all", jobs=4)
    assert emit_report(par, generated_at=FIXED_TIME) == emit_report(full_results, generated_at=FIXED_TIME)


def test_json_round_trip(full_results):
    doc, claims = parse_report(emit_report(full_results, "json"))
    assert claims == full_results
    assert doc["schema_version"] == "1"
    assert [c["claim_id"] for c in doc["claims"]] == sorted(c["claim_id"] for c in doc["claims"])
    assert doc["summary"]["total"] == len(full_results)


def test_emit_empty_and_unknown_format():
    doc, claims = parse_report(emit_report([]))
    assert claims == [] and doc["summary"]["total"] == 0
    assert emit_report([], "md").startswith(b"# Verification report")
    with pytest.raises(ValueError):
        emit_report([], "yaml")


def test_markdown_has_one_table_per_section(full_results):
    md = emit_report(full_results, "md").decode()
    sections = {r.section for r in full_results}
    for s in sections:
        assert f"\n## {s}\n" in md
    assert md.count("| claim | statement |") == len(sections)


def test_duplicate_ids_rejected():
    r = ClaimReport("a", "s", "t", "verified")
    with pytest.raises(ValueError):
        emit_report([r, r])


def test_claim_report_normalizes_values():
    from fractions import Fraction
    r = ClaimReport("a", "s", "t", "failed", (Fraction(1, 7), Fraction(4, 2)), {3})
    assert r.expected == ["1/7", 2] and r.computed == [3]
    with pytest.raises(ValueError):
        ClaimReport("a", "s", "t", "maybe")
    with pytest.raises(TypeError):
        to_jsonable(0.5)


def test_cli_run_all_is_deterministic(tmp_path, full_results):
    a = tmp_path / "a.json"
    assert cli.main(["run", "--case", "all", "--report", str(a)]) == 0
    da, db = json.loads(a.read_bytes()), json.loads(emit_report(full_results))
    da.pop("generated_at"), db.pop("generated_at")
    assert da == db
    assert json.dumps(da["claims"]) == json.dumps(db["claims"])


def test_cli_stdout_markdown(capsys):
    assert cli.main(["run", "--case", "II", "--format", "md"]) == 0
    out = capsys.readouterr().out
    assert "X.caseII.glue.residues" in out and "X.caseI.glue" not in out


def test_cli_edited_incidence_fails(config_dir, tmp_path):
    path = config_dir / "X_caseI.json"
    data = json.loads(path.read_text())
    for row in data["intersections"]:
        if row[:2] == ["A3", "E1"]:
            row[2] = 3
    path.write_text(json.dumps(data))
    out = tmp_path / "r.json"
    assert cli.main(["run", "--case", "I", "--config", str(config_dir), "--report", str(out)]) == 1
    _, claims = parse_report(out.read_bytes())
    failed = {c.claim_id for c in claims if c.status == "failed"}
    assert "X.caseI.feasibility.own_triple" in failed


def test_cli_empty_config_exit_2(config_dir, capsys):
    (config_dir / "X_caseI.json").write_text("")
    assert cli.main(["run", "--case", "I", "--config", str(config_dir)]) == 2
    assert "malformed configuration" in capsys.readouterr().err


def test_cli_missing_config_exit_3(config_dir):
    (config_dir / "Y.json").unlink()
    assert cli.main(["run", "--config", str(config_dir)]) == 3


def test_cli_unwritable_report_exit_3(tmp_path):
    assert cli.main(["run", "--case", "I", "--report", str(tmp_path / "no" / "r.json")]) == 3


def test_cli_case_ii_ignores_case_i_file(config_dir):
    (config_dir / "X_caseI.json").write_text("")
    assert cli.main(["run", "--case", "II", "--config", str(config_dir), "--report",
                     str(config_dir / "r.json")]) == 0


def test_log_env(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv("FPP_VERIFY_LOG", "info")
    cli.main(["run", "--case", "I", "--report", str(tmp_path / "r.json")])
    assert "claims:" in capsys.readouterr().err
    monkeypatch.setenv("FPP_VERIFY_LOG", "loud")
    cli._setup_logging(False)
    assert "ignoring FPP_VERIFY_LOG" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "fpp_verify", "run", "--case", "II",
                           "--report", str(out)], capture_output=True)
    assert proc.returncode == 0, proc.stderr
    assert parse_report(out.read_bytes())[0]["case"] == "II"


@pytest.mark.skipif(shutil.which("fpp-verify") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["fpp-verify", "run", "--case", "I", "--format", "md"], capture_output=True)
    assert proc.returncode == 0 and proc.stdout.startswith(b"# Verification report")
