import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onesided.cli import main
from onesided.discrepancy import WeightedPointSet
from onesided.exceptions import DimensionMismatch, InvalidSpec
from onesided.geometry import PointSequence
from onesided.io import (decode_scalar, dumps_pointset, encode_scalar, loads_pointset,
                         read_pointset, write_pointset)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


rationals = st.fractions(max_denominator=10 ** 12).filter(lambda x: abs(x) < 10 ** 15)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda d: st.lists(st.lists(rationals, min_size=d, max_size=d), min_size=1, max_size=8)))
def test_pointset_text_round_trip(rows):
    P = PointSequence.from_coords(rows)
    text = dumps_pointset(P)
    assert loads_pointset(text) == P
    assert dumps_pointset(loads_pointset(text)) == text


def test_scalars_are_integers_or_fraction_strings():
    assert encode_scalar(Fraction(4)) == 4
    assert encode_scalar(Fraction(-6, 4)) == "-3/2"
    assert decode_scalar("6/4") == Fraction(3, 2)
    for bad in (0.5, True, "1/0", "abc"):
        with pytest.raises(InvalidSpec):
            decode_scalar(bad)


def test_weighted_round_trip(tmp_path):
    A = WeightedPointSet.from_points([(0, 0), ("1/3", 2)], [3, 1])
    write_pointset(tmp_path / "a.json", A)
    assert read_pointset(tmp_path / "a.json") == A


def test_malformed_files_are_rejected():
    with pytest.raises(InvalidSpec):
        loads_pointset("{not json")
    with pytest.raises(InvalidSpec):
        loads_pointset('{"points": [[1, 2]]}')
    with pytest.raises(DimensionMismatch):
        loads_pointset('{"dim": 2, "points": [[1, 2, 3]]}')
    with pytest.raises(InvalidSpec):
        loads_pointset('{"dim": 1, "points": [[1]], "multiplicities": [0]}')


def test_generate_then_approximate(tmp_path, capsys):
    pts = tmp_path / "p.json"
    assert run(capsys, "generate", "--kind", "moment", "--n", 9, "--d", 2, "-o", pts)[0] == 0
    out, trace = tmp_path / "a.json", tmp_path / "trace.json"
    code, _, _ = run(capsys, "approximate", "--input", pts, "--epsilon", "1/2", "--mode", "empirical",
                     "--t", 8, "--u", 1, "-o", out, "--trace", trace)
    assert code == 0
    A = read_pointset(out)
    assert A.total_weight > 0
    data = json.loads(trace.read_text())
    assert data["symbols"]["t"] == 8 and data["symbols"]["n"] == 9


def test_approximate_is_byte_reproducible(tmp_path, capsys):
    pts = tmp_path / "p.json"
    run(capsys, "generate", "--kind", "moment", "--n", 64, "-o", pts)
    outs = []
    for k in range(2):
        out = tmp_path / f"a{k}.json"
        run(capsys, "approximate", "--input", pts, "--epsilon", "1/2", "--t", 4, "--u", 2,
            "--threshold", 0, "--parts", 16, "--seed", 3, "-o", out)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert read_pointset(tmp_path / "a0.json").total_weight == 2


def test_discrepancy_of_identical_sets(tmp_path, capsys):
    pts = tmp_path / "p.json"
    run(capsys, "generate", "--kind", "circle", "--n", 6, "-o", pts)
    code, out, _ = run(capsys, "discrepancy", "--p", pts, "--a", pts, "--mode", "one", "--exact")
    rep = json.loads(out)
    assert code == 0 and rep["value"] == "0/1" and rep["exact"] is True
    code, out, _ = run(capsys, "discrepancy", "--p", pts, "--a", pts, "--mode", "two")
    assert json.loads(out)["value"] == "0/1"


def test_net_mode_reports_the_violating_set(tmp_path, capsys):
    pts, far = tmp_path / "p.json", tmp_path / "far.json"
    run(capsys, "generate", "--kind", "circle", "--n", 10, "-o", pts)
    far.write_text('{"dim": 2, "points": [[10, 10]]}')
    code, out, _ = run(capsys, "discrepancy", "--p", pts, "--a", far, "--mode", "net", "--epsilon", "3/10")
    rep = json.loads(out)
    assert rep["witness"] == [0, 1, 2, 3] and rep["pass"] is False and rep["value"] == "2/5"


def test_sampled_discrepancy_is_marked_inexact(tmp_path, capsys):
    pts = tmp_path / "p.json"
    run(capsys, "generate", "--kind", "moment", "--n", 30, "-o", pts)
    a = tmp_path / "a.json"
    a.write_text('{"dim": 2, "points": [[0, 0]]}')
    code, out, _ = run(capsys, "discrepancy", "--p", pts, "--a", a, "--samples", 20)
    rep = json.loads(out)
    assert code == 0 and rep["exact"] is False and Fraction(rep["value"]) == 1


def test_decimal_epsilon_is_refused(tmp_path, capsys):
    pts = tmp_path / "p.json"
    run(capsys, "generate", "--kind", "moment", "--n", 5, "-o", pts)
    code, _, err = run(capsys, "approximate", "--input", pts, "--epsilon", "0.5", "--t", 4, "--u", 1)
    assert code == 1 and "exact fraction" in err


def test_missing_file_is_invalid_input(tmp_path, capsys):
    code, _, _ = run(capsys, "discrepancy", "--p", tmp_path / "nope.json", "--a", tmp_path / "nope.json")
    assert code == 1


def test_cap_exceeded_exit_code(tmp_path, capsys):
    fam = tmp_path / "f.txt"
    assert run(capsys, "chains", "build", "--D", 3, "--epsilon", "1/2", "--t", 30, "-o", fam)[0] == 0
    assert run(capsys, "chains", "verify", "--family", fam, "--mode", "exhaustive")[0] == 2


def test_chains_build_and_verify(tmp_path, capsys):
    fam = tmp_path / "f.txt"
    run(capsys, "chains", "build", "--D", 3, "--epsilon", "9/10", "--m", 2, "-o", fam)
    assert fam.read_text().splitlines()[0] == "3 16 9/10 3 2"
    code, out, _ = run(capsys, "chains", "verify", "--family", fam, "--mode", "exhaustive")
    rep = json.loads(out)
    assert code == 0 and rep["verified"] is True


def test_guarantee_infeasible_exit_code(tmp_path, capsys):
    pts = tmp_path / "p.json"
    run(capsys, "generate", "--kind", "moment", "--n", 10000, "-o", pts)
    code, out, _ = run(capsys, "approximate", "--input", pts, "--epsilon", "1/2",
                       "--mode", "guarantee", "--c", "1/1000000")
    rep = json.loads(out)
    assert code == 3 and rep["error"] == "InfeasibleParams"
    assert rep["report"]["t"] == 314928 and rep["report"]["N"] == "tw_2(2519424)"


def test_guarantee_fallback_for_small_input(tmp_path, capsys):
    pts = tmp_path / "p.json"
    run(capsys, "generate", "--kind", "random", "--n", 20, "--radius", 1000, "-o", pts)
    code, out, _ = run(capsys, "approximate", "--input", pts, "--epsilon", "1/2", "--mode", "guarantee")
    assert code == 0
    assert json.loads(out)["points"] == json.loads(pts.read_text())["points"]


def test_partition_check(tmp_path, capsys):
    pts, parts = tmp_path / "p.json", tmp_path / "parts.txt"
    pts.write_text('{"dim": 2, "points": [[0, 0], [1, 0], [0, 1], [1, 1]]}')
    parts.write_text("0: 0\n1: 1\n2: 2 3\n")
    code, out, _ = run(capsys, "partition", "check", "--input", pts, "--parts", parts, "--gamma", "1/2")
    rep = json.loads(out)
    assert code == 0 and rep["accepted"] and rep["signs"] == {"0 1 2": 1}


def test_prop12_witness(tmp_path, capsys):
    pts, a = tmp_path / "p.json", tmp_path / "a.json"
    run(capsys, "generate", "--kind", "circle", "--n", 12, "-o", pts)
    a.write_text('{"dim": 2, "points": [[0, 0]]}')
    code, out, _ = run(capsys, "prop12", "--input", pts, "--a", a, "--epsilon", "1/4")
    rep = json.loads(out)
    assert code == 0 and rep["gap"] == "5/12" and rep["exceeds_epsilon"] is True


def test_bench_csv_header_and_rows(capsys):
    code, out, _ = run(capsys, "bench", "--suite", "lemma32", "--count", 2, "--no-timing")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "suite,instance,n,d,epsilon,value,verified,millis"
    assert lines[1] == "lemma32,rh0,9,2,,1/1,true,"
    assert len(lines) == 3


def test_bench_is_reproducible_without_timing(capsys):
    a = run(capsys, "bench", "--suite", "pipeline", "--count", 3, "--no-timing")[1]
    b = run(capsys, "bench", "--suite", "pipeline", "--count", 3, "--no-timing")[1]
    assert a == b
