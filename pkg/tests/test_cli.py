import csv
import json
import math

import pytest

from sqlalign.cli import dumps_report, main

TARGET_ROWS = [
    {"question": "q1", "SQL": "SELECT name FROM singer WHERE age > 30", "db_id": "concert"},
    {"question": "q2", "SQL": "SELECT COUNT(*) FROM stadium", "db_id": "concert"},
    {"question": "q3", "SQL": "SELECT region, SUM(amount) FROM investments GROUP BY region", "db_id": "fin"},
    {"question": "q4", "SQL": "SELECT a FROM t WHERE b IN (SELECT b FROM u)", "db_id": "misc"},
]
NEAR_ROWS = [  # same shapes as the target, different schema
    {"question": "t1", "SQL": "SELECT title FROM album WHERE year_n > 2000", "db_id": "music"},
    {"question": "t2", "SQL": "SELECT COUNT(*) FROM track", "db_id": "music"},
    {"question": "t3", "SQL": "SELECT genre, SUM(sales) FROM records GROUP BY genre", "db_id": "music"},
    {"question": "t4", "SQL": "SELECT x FROM v WHERE y IN (SELECT y FROM w)", "db_id": "misc"},
]
FAR_ROWS = [  # different shapes, one unparseable row
    {"SQL": "SELECT a.x, b.y FROM ta a JOIN tb b ON a.k = b.k ORDER BY a.x LIMIT 5"},
    {"SQL": "SELECT CASE WHEN p > 1 THEN 'x' ELSE 'y' END FROM q"},
    {"SQL": "SELECT broken FROM"},
]


@pytest.fixture
def corpora(tmp_path):
    paths = {}
    for name, rows in (("target", TARGET_ROWS), ("near", NEAR_ROWS), ("far", FAR_ROWS)):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(rows))
        paths[name] = str(path)
    return paths


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# -- templates ----------------------------------------------------------------

def test_templates_writes_one_template_per_line(corpora, tmp_path):
    out = tmp_path / "templates.txt"
    report = tmp_path / "report.json"
    code = main(["templates", corpora["target"], "--sql-field", "SQL",
                 "-o", str(out), "--report", str(report)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "SELECT FROM WHERE >"
    assert lines[1] == "SELECT COUNT ( * ) FROM"
    assert len(lines) == 4
    rep = read_json(report)
    assert rep["parsed"] == 4 and rep["failed"] == 0
    assert rep["config"]["l_max"] == 15


def test_templates_tolerates_partial_failures(corpora, tmp_path):
    report = tmp_path / "report.json"
    code = main(["templates", corpora["far"], "--sql-field", "SQL",
                 "-o", str(tmp_path / "t.txt"), "--report", str(report)])
    assert code == 0
    rep = read_json(report)
    assert rep["parsed"] == 2 and rep["failed"] == 1
    assert rep["failures"][0]["index"] == 2


def test_templates_missing_file_is_data_error(tmp_path):
    assert main(["templates", str(tmp_path / "none.json")]) == 2


def test_templates_distribution_export(corpora, tmp_path):
    dist_path = tmp_path / "dist.json"
    main(["templates", corpora["target"], "--sql-field", "SQL",
          "-o", str(tmp_path / "t.txt"), "--distribution", str(dist_path)])
    payload = read_json(dist_path)
    assert payload["total"] == sum(payload["counts"].values())
    assert list(payload["counts"]) == sorted(payload["counts"])


# -- align ---------------------------------------------------------------------

def test_align_self_is_perfect(corpora, tmp_path):
    out = tmp_path / "align.json"
    code = main(["align", "--target", corpora["target"],
                 "--source", corpora["target"],
                 "--sql-field", "SQL", "--c", "1.0", "-o", str(out)])
    assert code == 0
    row = read_json(out)["rows"][0]
    assert row["a_kl"] == 1.0
    assert row["ovlp"] == 1.0
    assert row["d_kl"] == 0.0


def test_align_max_in_batch_pins_farthest_source(corpora, tmp_path):
    out = tmp_path / "align.json"
    code = main(["align", "--target", corpora["target"],
                 "--source", corpora["target"],
                 "--source", corpora["near"],
                 "--source", corpora["far"],
                 "--sql-field", "SQL", "-o", str(out)])
    assert code == 0
    rows = read_json(out)["rows"]
    assert len(rows) == 3
    pinned = [r for r in rows if abs(r["a_kl"] - 1 / math.e) < 1e-6]
    assert len(pinned) == 1
    assert pinned[0]["source"].endswith("far.json")
    assert len({r["c"] for r in rows}) == 1
    assert rows[2]["parse_failures"]["source"] == 1


def test_align_error_row_and_exit_code_for_bad_source(corpora, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"SQL": "SELECT broken FROM"}]))
    out = tmp_path / "align.json"
    code = main(["align", "--target", corpora["target"], "--source", str(bad),
                 "--source", corpora["near"], "--sql-field", "SQL",
                 "-o", str(out)])
    assert code == 2
    rows = read_json(out)["rows"]
    assert "EmptyDistribution" in rows[0]["error"]
    assert "error" not in rows[1]


def test_align_csv_output(corpora, tmp_path):
    out = tmp_path / "align.csv"
    main(["align", "--target", corpora["target"], "--source", corpora["near"],
          "--sql-field", "SQL", "--c", "2.0", "--format", "csv", "-o", str(out)])
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    assert rows[0]["c"] == "2.000000"
    assert float(rows[0]["a_kl"]) > 0
    assert rows[0]["parse_failures_source"] == "0"


def test_align_reports_are_byte_identical_across_runs(corpora, tmp_path):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    argv = ["align", "--target", corpora["target"], "--source", corpora["near"],
            "--source", corpora["far"], "--sql-field", "SQL"]
    assert main(argv + ["-o", str(out_a)]) == 0
    assert main(argv + ["-o", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_align_usage_error_exit_code(corpora):
    with pytest.raises(SystemExit) as exc:
        main(["align", "--target", corpora["target"]])
    assert exc.value.code == 1


def test_c_mode_fixed_requires_c(corpora):
    with pytest.raises(SystemExit) as exc:
        main(["align", "--target", corpora["target"], "--source", corpora["near"],
              "--c-mode", "fixed"])
    assert exc.value.code == 1


# -- ar -------------------------------------------------------------------------

def test_ar_equal_train_and_pred(corpora, tmp_path):
    out = tmp_path / "ar.json"
    code = main(["ar", "--target", corpora["target"], "--train", corpora["near"],
                 "--pred", corpora["near"], "--sql-field", "SQL", "--c", "1.0",
                 "-o", str(out)])
    assert code == 0
    rep = read_json(out)
    assert rep["ar"] == 1.0
    assert rep["sft_recommended"] is False
    assert "heuristic" in rep["note"]


def test_ar_prefers_structurally_closer_train(corpora, tmp_path):
    out = tmp_path / "ar.json"
    main(["ar", "--target", corpora["target"], "--train", corpora["near"],
          "--pred", corpora["far"], "--sql-field", "SQL", "--c", "1.0",
          "-o", str(out)])
    rep = read_json(out)
    assert rep["ar"] > 1.0
    assert rep["sft_recommended"] is True
    # swapping train and pred flips the prediction
    main(["ar", "--target", corpora["target"], "--train", corpora["far"],
          "--pred", corpora["near"], "--sql-field", "SQL", "--c", "1.0",
          "-o", str(out)])
    swapped = read_json(out)
    assert swapped["ar"] < 1.0
    assert swapped["sft_recommended"] is False
    # reports carry 6-decimal floats, compare at that precision
    assert swapped["ar"] == pytest.approx(1.0 / rep["ar"], abs=1e-5)


def test_ar_requires_c(corpora):
    with pytest.raises(SystemExit) as exc:
        main(["ar", "--target", corpora["target"], "--train", corpora["near"],
              "--pred", corpora["near"], "--sql-field", "SQL"])
    assert exc.value.code == 1


# -- sample ----------------------------------------------------------------------

def test_sample_fraction_roundtrips_through_loader(corpora, tmp_path):
    out = tmp_path / "sample.jsonl"
    code = main(["sample", corpora["target"], "--sql-field", "SQL",
                 "--group-field", "db_id", "--fraction", "0.5", "--seed", "3",
                 "-o", str(out)])
    assert code == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(lines) == 2
    assert all(entry["sql"] for entry in lines)
    # output is standard jsonl ingestible by the default field mapping
    code = main(["templates", str(out), "-o", str(tmp_path / "t.txt")])
    assert code == 0


def test_sample_per_group_determinism(corpora, tmp_path):
    out_a = tmp_path / "a.jsonl"
    out_b = tmp_path / "b.jsonl"
    argv = ["sample", corpora["target"], "--sql-field", "SQL",
            "--group-field", "db_id", "--per-group", "1", "--seed", "11"]
    main(argv + ["-o", str(out_a)])
    main(argv + ["-o", str(out_b)])
    assert out_a.read_bytes() == out_b.read_bytes()
    assert len(out_a.read_text().splitlines()) == 3  # one per group


def test_sample_rejects_bad_fraction(corpora):
    with pytest.raises(SystemExit) as exc:
        main(["sample", corpora["target"], "--fraction", "1.5"])
    assert exc.value.code == 1


# -- patterns ---------------------------------------------------------------------

def test_patterns_csv_table(corpora, tmp_path):
    out = tmp_path / "patterns.csv"
    code = main(["patterns", "--before", corpora["far"], "--after",
                 corpora["target"], "--sql-field", "SQL", "--format", "csv",
                 "-o", str(out)])
    assert code == 0
    with open(out, newline="") as fh:
        rows = {r["pattern_id"]: r for r in csv.DictReader(fh)}
    assert set(rows) == {"attr_comma_sum", "bare_sum", "count_star", "count_attr",
                         "case_when", "iif", "union_op", "subquery"}
    assert rows["case_when"]["direction"] == "down"
    assert rows["count_star"]["delta"] == "1"


def test_patterns_json_reports_parse_failures(corpora, tmp_path):
    out = tmp_path / "patterns.json"
    main(["patterns", "--before", corpora["far"], "--after", corpora["near"],
          "--sql-field", "SQL", "-o", str(out)])
    rep = read_json(out)
    assert rep["parse_failures"] == {"before": 1, "after": 0}
    assert rep["patterns"]["case_when"]["before"] == 1


# -- report serialization ----------------------------------------------------------

def test_dumps_report_is_deterministic_and_fixed_precision():
    report = {"b": 0.5, "a": {"y": 1 / 3, "x": True}, "list": [1, 2.0, None, "s"]}
    text = dumps_report(report)
    assert text == ('{"a": {"x": true, "y": 0.333333}, "b": 0.500000, '
                    '"list": [1, 2.000000, null, "s"]}\n')
