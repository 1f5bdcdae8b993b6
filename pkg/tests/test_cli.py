"""
CLI tests: envelopes, formats and exit codes.

Each test calls `main(argv)` directly and reads stdout through capsys.
"""

import json
import re

import jsonschema
import pytest

from ballotope.cli.interface import main


def run(capsys, *argv):
    code = main(["--deterministic" if a == "-D" else a for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestEnvelope:
    def test_count(self, capsys):
        code, env = run_json(capsys, "count", "--n", "7", "-D")
        assert code == 0
        assert set(env) == {"schema_version", "command", "params", "result", "timing_ms"}
        assert env["schema_version"] == "1.0"
        assert env["command"] == "count"
        assert env["timing_ms"] == 0
        assert env["result"]["count"] == 5
        assert env["params"]["n"] == 7

    def test_deterministic_output_is_identical(self, capsys):
        first = run(capsys, "member", "--vector", "3/4,1/3,1/2,2/3,1", "-D")
        second = run(capsys, "member", "--vector", "3/4,1/3,1/2,2/3,1", "-D")
        assert first == second

    def test_rationals_are_strings(self, capsys):
        _, env = run_json(capsys, "member", "--vector", "3/4,1/3,1/2,2/3,1", "-D")
        result = env["result"]
        assert result["in_cone"] and result["in_polytope"]
        assert result["min_ballot_dot"] == "1/4"
        assert result["vector"] == ["3/4", "1/3", "1/2", "2/3", "1/1"]
        assert result["gerrymander"] is True


class TestSequenceCommands:
    def test_count_both(self, capsys):
        code, env = run_json(capsys, "count", "--n", "14", "--method", "both", "-D")
        assert code == 0
        assert env["result"]["dp"] == env["result"]["brute"]
        assert env["result"]["agree"] is True

    def test_brute_cap(self, capsys):
        code, out, err = run(capsys, "count", "--n", "30", "--method", "brute")
        assert code == 1
        assert out == ""
        assert "brute cap 22" in err

    def test_bad_bits(self, capsys):
        code, out, err = run(capsys, "check", "--bits", "10a")
        assert code == 2
        assert "position 3" in err

    def test_check(self, capsys):
        code, env = run_json(capsys, "check", "--bits", "11011001111", "-D")
        assert code == 0
        assert env["result"]["is_bbs"] is True
        assert env["result"]["heights"][-1] == 5

    def test_check_negative_still_exits_zero(self, capsys):
        code, env = run_json(capsys, "check", "--bits", "1101", "-D")
        assert code == 0
        assert env["result"]["is_bbs"] is False

    def test_sumset(self, capsys):
        _, env = run_json(capsys, "sumset", "--bits", "11011", "-D")
        assert env["result"]["sumset"] == list(range(2, 11))

    def test_ratio(self, capsys):
        _, env = run_json(capsys, "ratio", "--n", "7", "-D")
        assert env["result"]["ratios"] == [{"n": 7, "ratio": "35/128"}]

    def test_ratio_tsv(self, capsys):
        code, out, _ = run(capsys, "ratio", "--n", "5", "--to", "6", "--format", "tsv")
        assert code == 0
        assert out.splitlines() == ["n\tratio", "5\t5/16", "6\t9/32"]

    def test_bounds(self, capsys):
        code, env = run_json(capsys, "bounds", "--max-l", "29", "-D")
        assert code == 0
        assert env["result"]["all_pass"] is True
        assert [r["l"] for r in env["result"]["rows"]][:2] == [5, 7]


class TestGeometryCommands:
    def test_member_outside(self, capsys):
        code, env = run_json(capsys, "member", "--vector", "0,1,0", "-D")
        assert code == 0
        assert env["result"]["in_cone"] is False
        assert env["result"]["violated"] == [[1, -1, 0], [0, -1, 1]]

    def test_member_negative_entries(self, capsys):
        _, env = run_json(capsys, "member", "--vector", "1,-1,1", "-D")
        assert env["result"]["intervals"] is None
        assert env["result"]["gerrymander"] is None

    def test_cut(self, capsys):
        code, env = run_json(capsys, "cut", "--necklace", "1.78,1.55,0.76,2.06,3.21", "-D")
        assert code == 0
        result = env["result"]
        assert result["rotated"] == ["321/100", "89/50", "31/20", "19/25", "103/50"]
        assert result["canonical"] == 4
        assert result["unique"] is True

    def test_cut_negative(self, capsys):
        code, _, err = run(capsys, "cut", "--necklace", "1,-1,1")
        assert code == 1
        assert "ERROR" in err

    def test_classify(self, capsys):
        _, env = run_json(capsys, "classify", "--vector", "1,0,1", "-D")
        assert env["result"]["regions"] == [0]
        assert env["result"]["generic"] is True

    def test_even_vector(self, capsys):
        code, _, err = run(capsys, "member", "--vector", "1,0")
        assert code == 1
        assert "odd length >= 1, got 2" in err

    def test_volume(self, capsys):
        code, env = run_json(
            capsys, "volume", "--n", "1", "--samples", "1000", "--seed", "3", "-D"
        )
        assert code == 0
        assert env["result"]["estimate"] == 1.0
        assert env["result"]["expected"] == "1/1"
        assert env["result"]["within_4_stderr"] is True


class TestVertexCommands:
    def test_vertices_with_bbs(self, capsys):
        _, env = run_json(capsys, "vertices", "--n", "2", "--bbs", "-D")
        rows = env["result"]["vertices"]
        assert env["result"]["count"] == 5
        assert env["result"]["interior_count"] == 1
        assert [r["bbs"] for r in rows] == [
            "1101011",
            "1101111",
            "1111011",
            "1111111",
            "1110111",
        ]

    def test_vertices_tsv(self, capsys):
        code, out, _ = run(capsys, "vertices", "--n", "2", "--bbs", "--format", "tsv")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "vertex\tinterior\tbbs\tinterior_bbs"
        assert len(lines) == 6
        assert "1/1,0/1,1/1\ttrue\t1111111\t111" in lines

    def test_interior_only(self, capsys):
        _, env = run_json(capsys, "vertices", "--n", "3", "--interior", "-D")
        assert len(env["result"]["vertices"]) == 2

    def test_vertex_cap(self, capsys):
        code, _, err = run(capsys, "vertices", "--n", "4", "--cap", "3")
        assert code == 1
        assert "vertex cap 3" in err

    def test_bfs(self, capsys):
        code, env = run_json(capsys, "bfs", "--n", "2", "-D")
        assert code == 0
        assert env["result"]["count"] == 5
        assert env["result"]["matches_vertices"] is True

    def test_unimodular(self, capsys):
        code, env = run_json(capsys, "unimodular", "--n", "2", "-D")
        assert code == 0
        assert env["result"]["submatrices_tested"] == 56


class TestVerifyAndPlot:
    def test_verify_suite(self, capsys):
        code, env = run_json(capsys, "verify", "--suite", "seq-ratio", "-D")
        assert code == 0
        assert env["result"]["passed"] is True

    def test_verify_bad_fixture(self, capsys, fixtures_data, write_fixtures):
        fixtures_data["necklace"]["unique"] = False
        path = write_fixtures(fixtures_data)
        code, env = run_json(
            capsys, "verify", "--fixtures", path, "--suite", "geom-necklace", "-D"
        )
        assert code == 1
        assert env["result"]["failed"] == ["geom-necklace"]

    def test_verify_report(self, capsys, tmp_path):
        report = tmp_path / "reports" / "quick.json"
        code, out, _ = run(
            capsys, "verify", "--suite", "seq-ratio", "--report", str(report), "-D"
        )
        assert code == 0
        assert json.loads(report.read_text(encoding="utf-8")) == json.loads(out)

    def test_verify_tsv(self, capsys):
        _, out, _ = run(capsys, "verify", "--suite", "seq-ratio", "--format", "tsv", "-D")
        lines = out.splitlines()
        assert lines[0] == "suite\tpassed\tduration_ms\tinvariant\terror"
        assert lines[1] == "seq-ratio\ttrue\t0\t\t"

    def test_plot(self, capsys, tmp_path):
        out = tmp_path / "path.svg"
        code, env = run_json(capsys, "plot", "--bbs", "11011", "--out", str(out), "-D")
        assert code == 0
        assert env["result"]["points"] == 6
        assert out.read_text(encoding="utf-8").count("<svg") == 1


class TestUsage:
    def test_missing_argument(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["count"])
        assert info.value.code == 2

    def test_unknown_format(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["count", "--n", "3", "--format", "xml"])
        assert info.value.code == 2

    def test_plot_needs_a_source(self, capsys):
        with pytest.raises(SystemExit):
            main(["plot", "--out", "x.svg"])

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "count", "--n", "5", "--format", "table")
        assert code == 0
        assert "+" in out and "count" in out

    def test_threads_flag_reaches_params(self, capsys):
        _, env = run_json(capsys, "count", "--n", "9", "--threads", "3", "-D")
        assert env["params"]["threads"] == 3
        assert env["result"]["count"] == 15

    def test_junk_threads_setting(self, capsys, monkeypatch):
        from ballotope.infra.settings import settings

        monkeypatch.setenv("BALLOTOPE_THREADS", "lots")
        settings.reload()
        code, out, err = run(capsys, "count", "--n", "5")
        assert code == 1
        assert out == ""
        assert err.startswith("ERROR: setting 'threads' must be an integer")

    def test_threads_flag_overrides_junk_setting(self, capsys, monkeypatch):
        from ballotope.infra.settings import settings

        monkeypatch.setenv("BALLOTOPE_THREADS", "lots")
        settings.reload()
        code, env = run_json(capsys, "count", "--n", "5", "--threads", "1", "-D")
        assert code == 0
        assert env["result"]["count"] == 2


EVERY_COMMAND = [
    ["count", "--n", "7"],
    ["check", "--bits", "11011"],
    ["sumset", "--bits", "11011"],
    ["ratio", "--n", "5", "--to", "8"],
    ["bounds", "--max-l", "11"],
    ["member", "--vector", "3/4,1/3,1/2,2/3,1"],
    ["member", "--vector", "1,-1,1"],
    ["cut", "--necklace", "1.78,1.55,0.76,2.06,3.21"],
    ["classify", "--vector", "1,0,1"],
    ["volume", "--n", "2", "--samples", "1000", "--seed", "3"],
    ["vertices", "--n", "2", "--bbs"],
    ["bfs", "--n", "2"],
    ["unimodular", "--n", "2"],
    ["verify", "--suite", "seq-ratio"],
    ["plot", "--vector", "0,0,1,0,0", "--padded", "--out", "{tmp}/padded.svg"],
]


class TestSchema:
    @pytest.mark.parametrize("argv", EVERY_COMMAND, ids=lambda a: "-".join(a[:2]))
    def test_envelope_validates(self, capsys, tmp_path, envelope_schema, argv):
        argv = [a.format(tmp=tmp_path) for a in argv]
        code, env = run_json(capsys, *argv)
        assert code == 0
        jsonschema.validate(instance=env, schema=envelope_schema)
        assert env["command"] == argv[0]

    def test_every_command_is_covered(self, envelope_schema):
        listed = envelope_schema["properties"]["command"]["enum"]
        assert sorted(listed) == sorted({argv[0] for argv in EVERY_COMMAND})

    def test_rational_fields(self, capsys, envelope_schema):
        pattern = envelope_schema["$defs"]["rational"]["pattern"]
        _, member = run_json(capsys, "member", "--vector", "3/4,1/3,1/2,2/3,1", "-D")
        _, cut = run_json(capsys, "cut", "--necklace", "1.78,1.55,0.76,2.06,3.21", "-D")
        _, ratios = run_json(capsys, "ratio", "--n", "5", "--to", "8", "-D")
        values = [
            member["result"]["min_ballot_dot"],
            *member["result"]["vector"],
            *[x for pair in member["result"]["intervals"] for x in pair],
            *cut["result"]["rotated"],
            *[row["ratio"] for row in ratios["result"]["ratios"]],
        ]
        assert values
        assert all(re.fullmatch(pattern, v) for v in values)

    @pytest.mark.parametrize(
        ("command", "result"),
        [
            ("ratio", {"ratios": [{"n": 5, "ratio": "0.3125"}]}),
            ("member", {"vector": ["1"], "min_ballot_dot": None, "intervals": None}),
            ("cut", {"necklace": ["1/1"], "rotated": ["1/0"]}),
            ("volume", {"expected": 0.333}),
        ],
    )
    def test_non_rational_strings_are_rejected(self, envelope_schema, command, result):
        env = {
            "schema_version": "1.0",
            "command": command,
            "params": {},
            "result": result,
            "timing_ms": 0,
        }
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(instance=env, schema=envelope_schema)

    def test_unknown_keys_are_rejected(self, capsys, envelope_schema):
        _, env = run_json(capsys, "count", "--n", "5", "-D")
        env["extra"] = 1
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(instance=env, schema=envelope_schema)
