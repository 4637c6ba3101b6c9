import json
import shutil
import subprocess

import pytest

from trustinfer.cli import main
from trustinfer.errors import ParseError
from trustinfer.harness import ErrorRateReport
from trustinfer.io import parse_events, parse_hypothesis_set, parse_profile, profile_to_json
from trustinfer.testing import TestReport

from conftest import ABCD, FIXTURES

P0 = str(FIXTURES / "table_p0.json")
P1 = str(FIXTURES / "table_p1.json")
PAIR = str(FIXTURES / "table_pair.json")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- file formats -------------------------------------------------------------

def test_profile_round_trip(p0):
    assert parse_profile(profile_to_json(p0)) == p0


def test_events_lines_and_counts():
    events, obs = parse_events("a\n\nd\na\n", ABCD)
    assert events == ["a", "d", "a"] and obs.counts == (2, 0, 0, 1)
    events, obs = parse_events('{"a": 3, "c": 1}', ABCD)
    assert events is None and obs.counts == (3, 0, 1, 0)
    _, inferred = parse_events("x\ny\nx\n")
    assert list(inferred.alphabet) == ["x", "y"]


@pytest.mark.parametrize("text", ["a\ne\n", '{"e": 1}', '{"a": 1.5}'])
def test_events_reject_unknown_or_bad(text):
    with pytest.raises(ParseError):
        parse_events(text, ABCD)


@pytest.mark.parametrize("text", ["not json", '{"probs": {}}', '{"alphabet": ["a"], "probs": 3}'])
def test_profile_parse_errors(text):
    with pytest.raises(ParseError):
        parse_profile(text)


def test_hypothesis_set_file():
    hset = parse_hypothesis_set((FIXTURES / "table_pair.json").read_text())
    assert [h.id for h in hset] == ["trustworthy", "untrustworthy"]
    assert hset.priors == (0.5, 0.5)


# -- test ---------------------------------------------------------------------

def test_np_rejects_d(capsys):
    code, out, _ = run(capsys, "test", "np", "--alpha", "0.01", P0, P1, "--event", "d")
    assert code == 1 and "REJECT" in out


def test_fisher_retains_a(capsys):
    code, out, _ = run(capsys, "test", "fisher", "--alpha", "0.01", P0, "--event", "a")
    assert code == 0 and "RETAIN" in out


def test_point_rejects_b_json(capsys):
    code, out, _ = run(capsys, "test", "point", P0, "--event", "b", "--output", "json")
    assert code == 1
    report = TestReport.from_json(out)
    assert report.statistic_value == 0.005 and report.power is None


def test_np_from_stream_file(capsys, tmp_path):
    stream = tmp_path / "one.txt"
    stream.write_text("b\n")
    code, out, _ = run(capsys, "test", "np", P0, P1, "--stream", stream, "--output", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "retain"
    stream.write_text("b\nb\n")
    code, _, err = run(capsys, "test", "np", P0, P1, "--stream", stream)
    assert code == 2 and "exactly one event" in err


def test_malformed_profile(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"alphabet": ["a", "b"], "probs": {"a": 0.7, "b": 0.7}}')
    code, out, err = run(capsys, "test", "fisher", bad, "--event", "a")
    assert code == 2 and out == "" and "NonUnitSum" in err


def test_alphabet_mismatch(capsys, tmp_path):
    other = tmp_path / "coin.json"
    other.write_text('{"alphabet": ["h", "t"], "probs": {"h": 0.5, "t": 0.5}}')
    code, _, err = run(capsys, "test", "np", P0, other, "--event", "a")
    assert code == 2 and "AlphabetMismatch" in err


def test_randomized_boundary_needs_seed(capsys):
    code, _, err = run(capsys, "test", "np", P0, P1, "--alpha", "0.015",
                       "--variant", "randomized", "--event", "b")
    assert code == 2 and "MissingSeed" in err
    code, _, _ = run(capsys, "test", "np", P0, P1, "--alpha", "0.015",
                     "--variant", "randomized", "--event", "b", "--seed", "4")
    assert code in (0, 1)


# -- bayes --------------------------------------------------------------------

def test_bayes_single_d(capsys, tmp_path):
    stream = tmp_path / "s.txt"
    stream.write_text("d\n")
    code, out, _ = run(capsys, "bayes", PAIR, stream, "--output", "json")
    doc = json.loads(out)
    assert code == 0 and doc["map"] == "untrustworthy"
    assert doc["weights"]["untrustworthy"] == pytest.approx(0.989011, abs=1e-6)
    code, out, _ = run(capsys, "bayes", PAIR, stream)
    assert "MAP hypothesis: untrustworthy" in out


def test_bayes_empty_stream_echoes_prior(capsys, tmp_path):
    stream = tmp_path / "empty.txt"
    stream.write_text("")
    code, out, _ = run(capsys, "bayes", PAIR, stream, "--output", "json")
    assert code == 0 and json.loads(out)["weights"] == {"trustworthy": 0.5, "untrustworthy": 0.5}


def test_bayes_counts_object(capsys, tmp_path):
    stream = tmp_path / "counts.json"
    stream.write_text('{"a": 100}')
    code, out, _ = run(capsys, "bayes", PAIR, stream, "--output", "json")
    assert json.loads(out)["map"] == "trustworthy"


def test_bayes_unknown_symbol(capsys, tmp_path):
    stream = tmp_path / "s.txt"
    stream.write_text("a\nz\n")
    code, _, _ = run(capsys, "bayes", PAIR, stream)
    assert code == 2


# -- simulate / mdl / calibrate -----------------------------------------------

def test_simulate_then_mdl(capsys, tmp_path, p0):
    out_file = tmp_path / "baseline.txt"
    assert run(capsys, "simulate", P0, "--n", 10**4, "--seed", 5, "-o", out_file)[0] == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 10**4
    code, out, _ = run(capsys, "mdl", out_file, "--k", 8, "--alphabet", "a,b,c,d",
                       "--compressor", "lz78", "--output", "json")
    doc = json.loads(out)
    assert code == 0 and doc["family_size"] == 2862209
    assert all(abs(doc["selected"][s] - p0[s]) <= 2 * 2**-8 for s in "abcd")
    assert doc["compressor_bits"] > 0


def test_simulate_reproducible(capsys):
    _, first, _ = run(capsys, "simulate", P0, "--n", 50, "--seed", 9)
    _, second, _ = run(capsys, "simulate", P0, "--n", 50, "--seed", 9)
    assert first == second and len(first.splitlines()) == 50


def test_simulate_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", P0, "--n", "5"])
    assert exc.value.code == 2


def test_mdl_all_a_corner(capsys, tmp_path):
    stream = tmp_path / "a.txt"
    stream.write_text("a\n" * 100)
    code, out, _ = run(capsys, "mdl", stream, "--alphabet", "a,b,c,d", "--output", "json")
    assert json.loads(out)["selected"] == {"a": 1.0, "b": 0.0, "c": 0.0, "d": 0.0}


def test_mdl_family_too_large(capsys, tmp_path):
    stream = tmp_path / "a.txt"
    stream.write_text("a\nb\n")
    code, _, err = run(capsys, "mdl", stream, "--alphabet", "a,b,c,d", "--k", 12)
    assert code == 2 and "FamilyTooLarge" in err


def test_calibrate_json(capsys):
    code, out, _ = run(capsys, "calibrate", P0, P1, "--alpha", "0.01", "--trials", 2000,
                       "--seed", 1, "--output", "json")
    report = ErrorRateReport.from_dict(json.loads(out))
    assert code == 0 and report.trials == 2000 and report.alpha_requested == 0.01


@pytest.mark.skipif(shutil.which("trustinfer") is None, reason="console script not installed")
def test_console_script_exit_codes():
    reject = subprocess.run(["trustinfer", "test", "np", P0, P1, "--event", "d"], capture_output=True)
    retain = subprocess.run(["trustinfer", "test", "np", P0, P1, "--event", "a"], capture_output=True)
    assert (reject.returncode, retain.returncode) == (1, 0)
