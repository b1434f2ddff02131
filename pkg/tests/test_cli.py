import json

from fractions import Fraction

import pytest

from fricke_orbits.cli import (
    RunConfig,
    cmd_graph,
    cmd_search,
    cmd_verify,
    cossum_from_str,
    cossum_to_str,
    golden_to_json,
    load_golden,
    main,
    render_search,
    value_obj,
    verify_records,
)
from fricke_orbits.golden import GOLDEN_ROWS
from fricke_orbits.trig_field import cos_value, from_rational


# ---------------------------------------------------------------------------
# ring string codec


CODEC_SAMPLES = [
    cos_value(1, 5) - from_rational(1),
    from_rational(Fraction(-7, 3)),
    cos_value(1, 5) + cos_value(2, 7) * Fraction(3, 2) - from_rational(Fraction(1, 2)),
    from_rational(0),
    cos_value(1, 12) * -1,
    cos_value(2, 3) + cos_value(1, 3),
    cos_value(3, 8) * Fraction(-5, 4) + from_rational(2),
]


@pytest.mark.parametrize("v", CODEC_SAMPLES, ids=range(len(CODEC_SAMPLES)))
def test_codec_round_trip(v):
    s = cossum_to_str(v)
    assert (cossum_from_str(s) - v).is_zero()


def test_codec_documented_form():
    assert cossum_to_str(cos_value(1, 5) - from_rational(1)) == "2cos(pi*1/5)-1"


def test_codec_folds_angles_into_half_range():
    # 2cos(pi*2/3) = -1, 2cos(pi*1/1) = -2, 2cos(pi*1/2) = 0
    assert cossum_to_str(cos_value(2, 3) * -1) == "1"
    assert cossum_to_str(cos_value(1, 1)) == "-2"
    assert cossum_to_str(cos_value(1, 2) + from_rational(3)) == "3"
    assert cossum_to_str(cos_value(2, 3) + cos_value(1, 3)) == "0"
    assert cossum_to_str(cos_value(1, 3) + cos_value(1, 7)) == "2cos(pi*1/7)+1"


def test_codec_parses_spaces_and_signs():
    v = cossum_from_str(" -2cos(pi*1/5) + 3/2 ")
    assert (v - (cos_value(1, 5) * -1 + from_rational(Fraction(3, 2)))).is_zero()
    with pytest.raises(ValueError):
        cossum_from_str("")
    with pytest.raises(ValueError):
        cossum_from_str("2cos(pi*x/5)")


def test_value_obj_fields():
    obj = value_obj(cos_value(1, 5))
    assert set(obj) == {"ring", "float"}
    assert obj["ring"] == "2cos(pi*1/5)"
    assert obj["float"] == pytest.approx(1.6180339887, abs=1e-9)


# ---------------------------------------------------------------------------
# configuration


def test_runconfig_rejects_wide_eps():
    with pytest.raises(ValueError):
        RunConfig(eps=0.5).validate()
    with pytest.raises(ValueError):
        RunConfig(eps=0.0).validate()
    with pytest.raises(ValueError):
        RunConfig(threads=0).validate()
    RunConfig(eps=1e-8, threads=2).validate()


def test_main_maps_config_error_to_exit_2(capsys):
    assert main(["search", "--eps", "0.5"]) == 2
    assert "eps" in capsys.readouterr().err


def test_main_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_main_maps_input_errors_to_exit_2(tmp_path, capsys):
    assert main(["graph", "99"]) == 2
    assert "1..45" in capsys.readouterr().err
    assert main(["verify", "--golden", str(tmp_path / "nope.json")]) == 2
    assert "nope.json" in capsys.readouterr().err
    assert main(["graph", "1", "--out", str(tmp_path / "no" / "dir" / "g.dot")]) == 2


# ---------------------------------------------------------------------------
# cheap subcommands end to end


def test_cosine_divisor_semantics(capsys):
    assert main(["cosine", "--n", "4", "--dens", "60"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 3
    assert {"phis", "family", "irreducible"} <= set(rows[0])
    assert ["0", "1/5", "1/3", "2/5"] in [r["phis"] for r in rows]


def test_cosine_bound_semantics(capsys):
    assert main(["cosine", "--n", "4", "--max-den", "60"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4


def test_cosine_requires_exactly_one_den_spec(capsys):
    assert main(["cosine", "--n", "4"]) == 2
    assert main(["cosine", "--n", "4", "--dens", "60", "--max-den", "60"]) == 2


def test_cayley_subcommand(capsys):
    assert main(["cayley", "--ry", "1/3", "--rz", "1/3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["size"] == 4
    rings = {tuple(c["ring"] for c in p) for p in data["points"]}
    assert ("1", "1", "1") in rings
    assert ("-2", "1", "1") in rings


def test_bt_subcommand(capsys):
    assert main(["bt", "--name", "r_x", "--theta", "1/2,1/3,1/5,1/7"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["result"] == ["-6/7", "1/5", "1/3", "3/2"]
    assert data["metadata"]["w"] == "t/w"
    assert len(data["omega"]) == 4 and len(data["omegaAfter"]) == 4


def test_bt_rejects_malformed_theta(capsys):
    assert main(["bt", "--name", "r_x", "--theta", "1/2,1/3"]) == 2


def test_theta_subcommand(capsys):
    assert main(["theta", "--orbit", "31", "--max-den", "12"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert ["1/3", "1/3", "1/3", "1/3"] in data["candidates"]
    assert data["solutionId"] == 31
    assert data["publishedTheta"] == ["1/3", "1/3", "1/3", "1/3"]


def test_graph_subcommand_dot(capsys):
    assert main(["graph", "1"]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph orbit {")
    assert dot.rstrip().endswith("}")
    # the worked 5-point orbit: 5 two-ended edge lines and 5 loop lines
    edges = [l for l in dot.splitlines() if " -- " in l]
    loops = [l for l in edges if l.split(" -- ")[0].strip() == l.split(" -- ")[1].split()[0]]
    assert len(edges) == 10 and len(loops) == 5
    assert '0 [label="(2/3, 1/3, 1/3)"]' in dot


def test_graph_subcommand_stats(capsys):
    assert main(["graph", "1", "--format", "json"]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats == {
        "badPoints": 1,
        "cycles": 1,
        "lambdaOrbits": 1,
        "selfLoops": {"x": 3, "y": 1, "z": 1},
    }


def test_graph_out_flag(tmp_path, capsys):
    target = tmp_path / "g.dot"
    assert main(["graph", "8", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text().startswith("graph orbit {")


# ---------------------------------------------------------------------------
# golden table plumbing


def test_golden_json_round_trip(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text(golden_to_json())
    rows = load_golden(str(path))
    assert len(rows) == len(GOLDEN_ROWS) == 45
    for parsed, ref in zip(rows, GOLDEN_ROWS):
        assert parsed.idx == ref.idx and parsed.size == ref.size
        assert all((a - b).is_zero() for a, b in zip(parsed.omega, ref.omega))
        assert (parsed.four_minus_omega4 - ref.four_minus_omega4).is_zero()
        assert parsed.rep_angles == ref.rep_angles
        assert parsed.theta == ref.theta


def test_load_golden_theta_optional(tmp_path):
    data = json.loads(golden_to_json())
    for row in data["rows"]:
        del row["theta"]
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(data))
    rows = load_golden(str(path))
    assert all(r.theta is None for r in rows)


def test_dump_golden(capsys):
    assert main(["verify", "--dump-golden"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["rows"]) == 45
    assert data["rows"][0]["omega"] == ["0", "1", "1"]


# ---------------------------------------------------------------------------
# search/verify rendering on the shared full run


def test_render_search_text(search_result):
    text = render_search(search_result, "text")
    lines = text.splitlines()
    assert lines[0] == "# exceptional finite orbits: 45"
    assert "verified=yes" in lines[1]
    assert "class1=48618911" in lines[2] and "class4=8197910" in lines[2]
    assert len(lines) == 3 + 45
    assert "elapsed" not in text and "threads" not in text


def test_render_search_unverified_flag(search_result):
    text = render_search(search_result, "text", verified=False)
    assert "verified=no" in text


def test_render_search_json(search_result):
    data = json.loads(render_search(search_result, "json"))
    assert data["meta"]["orbits"] == 45 and data["meta"]["verified"] is True
    counters = data["counters"]
    assert counters["class1"] == 48618911
    assert counters["class2"] == 6213878
    assert counters["class3"] == 54671104
    assert counters["class4"] == 8197910
    assert counters["junk"] == 0 and counters["capHits"] == 0
    sizes = sorted(o["size"] for o in data["orbits"])
    assert sizes[0] == 5 and sizes[-1] == 72
    first = data["orbits"][0]
    assert {"index", "size", "omega", "fourMinusOmega4", "rep"} <= set(first)
    assert set(first["omega"][0]) == {"ring", "float"}


def test_render_search_csv(search_result):
    lines = render_search(search_result, "csv").splitlines()
    assert lines[0] == "index,size,wX,wY,wZ,fourMinusW4,repX,repY,repZ"
    body = [l for l in lines if not l.startswith("#")]
    assert len(body) == 46
    assert any(l.startswith("#class1,48618911") for l in lines)
    assert "#verified,yes" in lines


def test_render_search_deterministic(search_result):
    a = render_search(search_result, "json")
    b = render_search(search_result, "json")
    assert a == b


def test_cmd_search_with_result(search_result, capsys):
    assert cmd_search(RunConfig(fmt="text"), result=search_result) == 0
    out = capsys.readouterr().out
    assert out == render_search(search_result, "text")


def test_cmd_verify_embedded(search_result, capsys):
    assert cmd_verify(RunConfig(), result=search_result) == 0
    assert "verified: 45 orbits" in capsys.readouterr().out


def test_cmd_verify_size_tamper(search_result, tmp_path, capsys):
    data = json.loads(golden_to_json())
    data["rows"][0]["size"] = 6
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    rc = cmd_verify(RunConfig(), golden_path=str(path), result=search_result)
    out = capsys.readouterr().out
    assert rc == 2
    assert out.splitlines() == ["row 1: no computed orbit matches"]


def test_cmd_verify_sign_flip_equivalent(search_result, tmp_path, capsys):
    # negating two parameters and the matching point coordinates is one
    # of the 24 equivalences; the flipped row must still verify
    data = json.loads(golden_to_json())
    assert data["rows"][0]["omega"] == ["0", "1", "1"]
    assert data["rows"][0]["repAngles"] == ["2/3", "1/3", "1/3"]
    data["rows"][0]["omega"] = ["0", "-1", "-1"]
    data["rows"][0]["repAngles"] = ["2/3", "2/3", "2/3"]
    path = tmp_path / "flipped.json"
    path.write_text(json.dumps(data))
    rc = cmd_verify(RunConfig(), golden_path=str(path), result=search_result)
    capsys.readouterr()
    assert rc == 0


def test_verify_records_reports_excess_orbit(search_result):
    _, diffs = verify_records(search_result.records, list(GOLDEN_ROWS)[:-1])
    assert len(diffs) == 1
    assert diffs[0].startswith("computed orbit") and "matches no row" in diffs[0]


# ---------------------------------------------------------------------------
# kernel benchmark


def test_bench_subcommand(capsys):
    assert main(["bench", "--span", "2048", "--backend", "numpy"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("numpy: total=")
    assert "class4=" in out
