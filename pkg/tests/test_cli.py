import csv
import io
import json
import subprocess
import sys

import pytest

from khdetect.cli import CSV_COLUMNS, main
from khdetect.corpus import CorpusError, embedded, format_corpus, parse_corpus
from khdetect.khovanov import RankTable
from khdetect.pd import parse_pd


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kh_unknot(capsys):
    code, out, _ = run(capsys, "kh", "U")
    assert code == 0
    assert out.strip().endswith("total 1")


def test_kh_10_124_json(capsys):
    code, out, _ = run(capsys, "kh", "10_124", "--json")
    assert code == 0
    assert RankTable.from_json(out).total_rank == 7


def test_kh_naive_equals_fast(capsys):
    _, fast, _ = run(capsys, "--json", "kh", "--fast", "trefoil")
    _, naive, _ = run(capsys, "--json", "kh", "--naive", "trefoil")
    assert fast == naive
    _, unred, _ = run(capsys, "kh", "--unreduced", "--json", "trefoil")
    assert json.loads(unred)["total"] == 6


def test_kh_accepts_literal_pd(capsys):
    code, out, _ = run(capsys, "kh", "--json", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")
    assert code == 0 and json.loads(out)["total"] == 3


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["detect", "U", "--assert-tu1"], ("Unknot", 0)),
        (["detect", "10_124"], ("Knotted", 1)),
        (["detect", "10_124", "--assert-tu1"], ("Knotted", 1)),
        (["detect", "U"], ("Inconclusive", 2)),
        (["detect", "unknot_rii", "--assert-tu1"], ("Unknot", 0)),
    ],
)
def test_detect_exit_codes(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert (json.loads(out)["verdict"], code) == expected


def test_jones_and_det(capsys):
    _, out, _ = run(capsys, "jones", "trefoil")
    assert out.strip() == "-1*q^-8 + 1*q^-6 + 1*q^-2"
    _, out, _ = run(capsys, "det", "10_124", "--json")
    assert json.loads(out) == {"determinant": 1, "total_rank": 7, "slack": 6, "holds": True}


def test_satellite_commands(capsys):
    _, out, _ = run(capsys, "satellite", "U", "--n", "0", "--emit", "kh", "--json")
    assert json.loads(out)["table"]["total"] == 1
    _, out, _ = run(capsys, "satellite", "trefoil", "--n", "2", "--emit", "pd")
    assert len(parse_pd(out.strip())) == 20
    _, out, _ = run(capsys, "satellite", "trefoil", "--n", "1", "--emit", "kh", "--json")
    obj = json.loads(out)
    assert obj["table"]["total"] >= 5 and obj["bound"]["slack"] >= 0


@pytest.mark.parametrize(
    "argv",
    [
        ["kh", "PD[X(1,2,3"],
        ["kh", "PD[]"],
        ["kh", "no_such_knot"],
        ["detect", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,5)]"],
        ["sweep", "/nonexistent/corpus.tsv"],
    ],
)
def test_bad_input_exits_nonzero_with_message(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3
    assert out == "" and err.startswith("khdetect:")


def test_usage_errors_do_not_look_like_verdicts(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["detect"])
    assert exc.value.code == 3


def _sweep(capsys, *argv):
    code, out, err = run(capsys, "sweep", *argv)
    return code, list(csv.DictReader(io.StringIO(out))), out, err


def test_sweep_empty_corpus(tmp_path, capsys):
    f = tmp_path / "empty.tsv"
    f.write_text("")
    code, rows, out, _ = _sweep(capsys, str(f))
    assert code == 0 and rows == []
    assert out == ",".join(CSV_COLUMNS) + "\n"


def test_sweep_reports_mismatches(tmp_path, capsys):
    f = tmp_path / "pinned.tsv"
    f.write_text("t\tPD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]\t4\t3\nu\tU\t1\t1\n")
    code, rows, _, err = _sweep(capsys, str(f))
    assert code == 1
    assert "mismatch t" in err and "mismatch u" not in err
    assert [r["name"] for r in rows] == ["t", "u"]


def test_sweep_small_corpus_is_deterministic_across_threads(tmp_path, capsys):
    small = [e for e in embedded() if len(e.diagram()) <= 7]
    f = tmp_path / "small.tsv"
    f.write_text(format_corpus(small))
    results = []
    for threads in ("1", "2"):
        code, rows, _, _ = _sweep(capsys, str(f), "--threads", threads)
        assert code == 0
        results.append([{k: v for k, v in r.items() if k != "ms"} for r in rows])
    assert results[0] == results[1]
    assert [r["name"] for r in results[0]] == [e.name for e in small]
    for r in results[0]:
        assert int(r["det"]) <= int(r["rank"])
        assert int(r["slack"]) == int(r["rank"]) - int(r["det"])


def test_corpus_format():
    entries = parse_corpus(["# comment", "", "a\tU", "b\tU\t1\t1"])
    assert [e.expected for e in entries] == [None, (1, 1)]
    assert parse_corpus(format_corpus(entries).splitlines()) == entries
    with pytest.raises(CorpusError, match="duplicate"):
        parse_corpus(["a\tU", "a\tU"])
    with pytest.raises(CorpusError):
        parse_corpus(["a\tPD[]"])
    with pytest.raises(CorpusError):
        parse_corpus(["just-a-name"])


def test_embedded_corpus_contents():
    names = {e.name for e in embedded()}
    for required in ("U", "unknot_ri", "unknot_rii", "3_1", "4_1", "10_124"):
        assert required in names
    assert all(e.expected is not None for e in embedded())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "khdetect", "detect", "10_124"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["total_rank"] == 7
