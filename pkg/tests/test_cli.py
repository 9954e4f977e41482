import csv
import io
import json
import subprocess
import sys

import pytest

from symracks import cli
from symracks.cli import main, render


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_render_formats():
    rows = [{"a": 1, "b": [2, 3]}, {"a": 10, "b": []}]
    assert json.loads(render(rows, ["a", "b"], "json")) == rows
    parsed = list(csv.DictReader(io.StringIO(render(rows, ["a"], "csv"))))
    assert parsed == [{"a": "1"}, {"a": "10"}]
    text = render(rows, ["a", "b"], "text").splitlines()
    assert text[0].startswith("a ") and text[2].startswith("1 ")


def test_tables_conj(capsys):
    code, out, _ = run(capsys, "tables", "conj", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert len(rows) == 25
    assert rows[-1] == {"group": "D11", "order": 22, "good": 1, "bound": 1}


def test_tables_core_contains_row(capsys):
    code, out, _ = run(capsys, "tables", "core", "--max-order", "16", "--format", "csv")
    assert code == 0
    assert "(Z4xZ2):Z2,16,256,256" in out.splitlines()


def test_tables_class_sizes(capsys):
    code, out, _ = run(capsys, "tables", "class-sizes", "--compare", "--format", "json")
    rows = json.loads(out)
    assert [r["n"] for r in rows] == [5, 6, 7, 8, 9]
    assert all(r["match"] == "yes" for r in rows)


def test_tables_census_compare(capsys):
    code, out, _ = run(capsys, "tables", "census", "--max-order", "5", "--compare", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and all(r["match"] == "yes" for r in rows)
    code, out, _ = run(capsys, "census", "--table", "legendrian", "--max-order", "4",
                       "--compare", "--format", "json")
    assert all(r["match"] == "yes" for r in json.loads(out))


def test_census_order_guard(capsys):
    code, _, err = run(capsys, "tables", "census", "--max-order", "7")
    assert code == 2 and "opt-in" in err


@pytest.mark.parametrize("desc,count", [("conj:D4", 16), ("galkin:Z3:1", 0),
                                        ("dihedral:8", 4), ("tetrahedral", 0)])
def test_good_counts(capsys, desc, count):
    code, out, _ = run(capsys, "good", desc, "--format", "json")
    assert code == 0 and json.loads(out)["count"] == count


def test_good_core_dic5(capsys):
    # the reference table lists 16; the solvers and the oracle both give 4
    code, out, _ = run(capsys, "good", "core:Dic5", "--format", "json")
    data = json.loads(out)
    assert data["count"] == 4 and data["method"] == "alg2"
    code, out, _ = run(capsys, "good", "core:Dic5", "--method", "oracle", "--format", "json")
    assert json.loads(out)["count"] == 4


def test_good_text_uses_group_labels(capsys):
    code, out, _ = run(capsys, "good", "conj:S3")
    assert "count: 1" in out
    assert "->" in out
    code, out, _ = run(capsys, "good", "core:Z3")
    assert "identity" in out


def test_good_method_mismatch(capsys):
    code, _, err = run(capsys, "good", "galkin:Z2:1", "--method", "alg1")
    assert code == 2 and "does not apply" in err


def test_good_bad_descriptor(capsys):
    code, _, err = run(capsys, "good", "nonsense:3")
    assert code == 2 and err


def test_good_cache(capsys, tmp_path):
    run(capsys, "good", "conj:D4", "--cache-dir", str(tmp_path), "--format", "json")
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    code, out, _ = run(capsys, "good", "conj:D4", "--cache-dir", str(tmp_path), "--format", "json")
    assert json.loads(out)["count"] == 16


def test_class_sizes_command(capsys):
    code, out, _ = run(capsys, "class-sizes", "5", "6", "--format", "json")
    assert json.loads(out) == [{"n": 5, "sizes": [20, 30]}, {"n": 6, "sizes": [40, 90, 120]}]
    code, _, err = run(capsys, "class-sizes", "4")
    assert code == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-order", "8")
    assert code == 0 and json.loads(out)["status"] == "ok"
    code, out, _ = run(capsys, "verify", "--max-order", "3")
    assert code == 0


def test_verify_reports_witness(capsys, monkeypatch):
    real = cli.good_involutions_core

    def broken(G, *a, **kw):
        goods = real(G, *a, **kw)
        if G.name == "Z4":
            return type(goods)(goods.rack, goods.method, goods.involutions[:1], goods.back_index)
        return goods

    monkeypatch.setattr(cli, "good_involutions_core", broken)
    code, out, _ = run(capsys, "verify", "--max-order", "4")
    data = json.loads(out)
    assert code == 1 and data["status"] == "fail"
    assert "Z4" in json.dumps(data["witness"])


def test_scan_conjecture(capsys):
    code, out, _ = run(capsys, "scan-conjecture", "--max-order", "6")
    data = json.loads(out)
    assert code == 0 and data["counterexamples"] == [] and data["scanned"] > 0


def test_reports(capsys):
    code, out, _ = run(capsys, "report", "triples", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and sum(len(r["groups"]) for r in rows) == 25
    code, out, _ = run(capsys, "report", "strictness", "--format", "json")
    assert all(set(r) == {"group", "good", "bound", "strict"} for r in json.loads(out))


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["tables", "nosuch"]) == 2
    assert main(["good"]) == 2


def test_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "tables", "core", "--max-order", "12", "--format", "csv")
    _, b, _ = run(capsys, "tables", "core", "--max-order", "12", "--format", "csv", "--workers", "3")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symracks", "good", "conj:S3", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["count"] == 1
