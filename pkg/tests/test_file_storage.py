"""Tests for table rendering and atomic output files."""

import hashlib
import json
from pathlib import Path

from src.domain.services.generators import fibonacci
from src.pipeline.analyzers import complexity_table
from src.pipeline.file_storage import render_table, save_output, table_to_csv, to_json
from src.pipeline.suite import SuiteReport


class TestRendering:
    """CSV and JSON layouts."""

    def test_csv_layout(self):
        """Header, then one row per n with lowercase booleans."""
        lines = table_to_csv(complexity_table(fibonacci(1000), 1, 3)).splitlines()
        assert lines[0] == "n,p,pf,pal,rho_ab,converged"
        assert lines[1] == "1,2,2,2,2,true"
        assert len(lines) == 4

    def test_missing_window_count_is_empty(self):
        """pf needs two windows; otherwise the cell is blank."""
        lines = table_to_csv(complexity_table(fibonacci(10), 6, 6)).splitlines()
        assert lines[1].split(",")[2] == ""

    def test_json_table(self):
        """The JSON form is a list of row objects."""
        rows = json.loads(render_table(complexity_table(fibonacci(1000), 1, 2), "json"))
        assert [row["n"] for row in rows] == [1, 2]

    def test_report_uses_pass_alias(self):
        """Verdict JSON carries the 'pass' key."""
        report = SuiteReport(theorem_ids=[], status="PASS", verdicts=[])
        assert json.loads(to_json(report))["status"] == "PASS"


class TestSaveOutput:
    """Atomic writes."""

    def test_writes_and_hashes(self, tmp_path):
        """Content lands at the target, hash and size describe it."""
        path, digest, size = save_output(tmp_path / "out" / "table.csv", "n,p\n1,2\n")
        assert Path(path).read_text(encoding="utf-8") == "n,p\n1,2\n"
        assert digest == hashlib.sha256(b"n,p\n1,2\n").hexdigest()
        assert size == 8

    def test_overwrite_leaves_no_temp_files(self, tmp_path):
        """Replacing a file keeps only the target in the directory."""
        target = tmp_path / "v.json"
        save_output(target, "old")
        save_output(target, "new")
        assert target.read_text(encoding="utf-8") == "new"
        assert [p.name for p in tmp_path.iterdir()] == ["v.json"]
