import json
import subprocess
import sys

import pytest

from realrooted.builder import sample_real_rooted
from realrooted.cli import main
from realrooted.poly import format_poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def machine(capsys, *argv):
    """Last JSON line of machine output (the summary for multi-record verbs)."""
    code, out = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out.strip().splitlines()[-1])


def records(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "machine")
    return code, [json.loads(line) for line in out.strip().splitlines()]


def test_certify_double_root(capsys):
    code, out = run(capsys, "certify", "2 -3 0 1")
    assert code == 2
    assert "{1: 2, -2: 1}" in out


def test_certify_separate_tokens(capsys):
    assert run(capsys, "certify", "2", "-3", "0", "1")[0] == 2
    assert run(capsys, "certify", "1 0 0 1")[0] == 1
    assert run(capsys, "certify", "1 -3 0 1")[0] == 0


def test_certify_triple_and_double(capsys):
    code, out = run(capsys, "certify", "-72", "60", "10", "-15", "0", "1")
    assert code == 2
    assert "TripleAndDouble" in out
    assert "{2: 3, -3: 2}" in out


def test_certify_machine(capsys):
    code, doc = machine(capsys, "certify", "2 -3 0 1")
    assert code == 2
    assert doc["verdict"] == "Degenerate"
    assert doc["degeneracy"]["kind"] == "OneDouble"
    assert doc["poly"] == ["2/1", "-3/1", "0/1", "1/1"]


def test_bad_input_exits_64(capsys):
    assert main(["certify", "1 x 2"]) == 64
    with pytest.raises(SystemExit) as info:
        main(["no-such-verb"])
    assert info.value.code == 64


def test_count_and_interval(capsys):
    code, doc = machine(capsys, "count", "-1 0 1", "--lo", "0", "--hi", "5")
    assert doc["count"] == 1
    code, doc = machine(capsys, "interval", "-2 0 1")
    assert len(doc["roots"]) == 2


def test_quintic_golden(capsys):
    code, out = run(capsys, "quintic", "degenerate", "triple", "-9/2")
    assert code == 0
    assert "-18/5" in out and "18/5" in out
    code, docs = records(capsys, "quintic", "degenerate", "triple", "-9/2")
    assert [(m["q"], m["s"]) for m in docs] == [("1/1", "-18/5"), ("-1/1", "18/5")]
    assert all(m["profile"] == [3, 2] and m["r"] == "3/1" for m in docs)
    assert run(capsys, "quintic", "check", "-9/2", "1", "3", "-18/5")[0] == 2
    assert run(capsys, "quintic", "s-interval", "-9/2", "1", "3")[0] == 2


def test_compare_corpus(tmp_path, capsys):
    path = tmp_path / "corpus.txt"
    lines = [format_poly(sample_real_rooted(5, s)) for s in range(10)] + ["1 0 1"]
    path.write_text("\n".join(lines) + "\n")
    code, doc = machine(capsys, "compare", str(path))
    assert code == 0
    assert doc["agree"] == 11 and doc["disagree"] == 0
    path.write_text("\n".join(lines + ["1 q"]) + "\n")
    assert run(capsys, "compare", str(path))[0] == 64


def test_conjecture_save(tmp_path, capsys):
    out = tmp_path / "cx.txt"
    code, doc = machine(capsys, "conjecture", "--random", "20", "--degree", "5", "--seed", "3", "--save", str(out))
    assert code == 0
    assert doc["disagreements"] == 0


def test_build_deterministic(capsys):
    a = run(capsys, "build", "5", "--seed", "9", "--count", "3")
    b = run(capsys, "build", "5", "--seed", "9", "--count", "3")
    assert a == b and a[0] == 0


def test_machine_output_byte_stable():
    argv = [sys.executable, "-m", "realrooted", "certify", "-72 60 10 -15 0 1", "--format", "machine"]
    first = subprocess.run(argv, capture_output=True)
    second = subprocess.run(argv, capture_output=True)
    assert first.returncode == 2
    assert first.stdout == second.stdout
