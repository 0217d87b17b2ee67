import json

import pytest

from qpencil.cli import (
    BUILTINS,
    ScenarioParseError,
    format_scenario,
    load_builtin,
    main,
    parse_scenario,
)
from qpencil.pauli import PauliString


class TestScenarioParser:
    def test_pencil_group(self):
        s = parse_scenario(b"sites 2\nmode pencil\ngroup\nZX\nXZ\nYY\n")
        assert s.site_count == 2
        assert s.mode == "pencil"
        assert len(s.groups) == 1
        assert [len(obs) for obs in s.groups[0]] == [1, 1, 1]

    def test_parity_products(self):
        s = parse_scenario(b"sites 2\nmode parity\ngroup\nZX*XZ\nXX*ZZ\n")
        assert len(s.groups[0]) == 2
        assert [len(obs) for obs in s.groups[0]] == [2, 2]
        assert s.groups[0][0] == (
            PauliString(("Z", "X")),
            PauliString(("X", "Z")),
        )

    def test_wrong_length_error_carries_line_number(self):
        with pytest.raises(ScenarioParseError, match="line 3"):
            parse_scenario(b"sites 2\ngroup\nZXX\n")

    def test_unknown_letter(self):
        with pytest.raises(ScenarioParseError, match="unknown letter"):
            parse_scenario(b"sites 2\ngroup\nZQ\n")

    def test_malformed_phase(self):
        with pytest.raises(ScenarioParseError, match="phase"):
            parse_scenario(b"sites 2\ngroup\n+2 ZX\n")

    def test_phase_prefix_parses(self):
        s = parse_scenario(b"sites 3\ngroup\n-1 XYY\n")
        assert s.groups[0][0][0].phase_power == 2

    def test_empty_group(self):
        with pytest.raises(ScenarioParseError, match="empty group"):
            parse_scenario(b"sites 2\ngroup\ngroup\nZX\n")
        with pytest.raises(ScenarioParseError, match="empty group"):
            parse_scenario(b"sites 2\ngroup\n")

    def test_observable_outside_group(self):
        with pytest.raises(ScenarioParseError, match="outside"):
            parse_scenario(b"sites 2\nZX\n")

    def test_missing_sites(self):
        with pytest.raises(ScenarioParseError, match="sites"):
            parse_scenario(b"group\nZX\n")

    def test_duplicate_declarations(self):
        with pytest.raises(ScenarioParseError, match="duplicate"):
            parse_scenario(b"sites 2\nsites 2\n")
        with pytest.raises(ScenarioParseError, match="duplicate"):
            parse_scenario(b"sites 2\nmode parity\nmode parity\n")

    def test_bad_mode(self):
        with pytest.raises(ScenarioParseError, match="mode"):
            parse_scenario(b"sites 2\nmode banana\n")

    def test_comments_and_blanks_ignored(self):
        s = parse_scenario(
            b"# header\nsites 2\n\nmode parity  # trailing\ngroup\n  ZX*XZ # x\n"
        )
        assert s.mode == "parity"
        assert len(s.groups[0]) == 1

    def test_default_mode_is_pencil(self):
        s = parse_scenario(b"sites 2\ngroup\nZX\n")
        assert s.mode == "pencil"

    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_roundtrip_builtin_files(self, name):
        s = load_builtin(name)
        assert parse_scenario(format_scenario(s)) == s

    def test_roundtrip_with_phases_and_products(self):
        text = "sites 2\nmode parity\ngroup\n-1 ZX*XZ\n+i XX\ngroup\nYY\n"
        s = parse_scenario(text)
        assert parse_scenario(format_scenario(s)) == s


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCommands:
    def test_pm_square_json(self, capsys):
        code, out, err = run_cli(capsys, "pm-square", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert len(data["hypergraph"]["vertices"]) == 24
        assert len(data["hypergraph"]["edges"]) == 24
        assert data["two_valued_states"] == 0
        assert data["classification"]["separable_vertices"] == 16
        assert data["classification"]["entangled_vertices"] == 8
        assert len(data["separable_edges"]) == 12
        assert len(data["entangled_edges"]) == 4
        assert len(data["primary_edges"]) == 6

    def test_ghzm_text_reports_contradiction(self, capsys):
        code, out, err = run_cli(capsys, "ghzm")
        assert code == 0
        assert "quantum product -1" in out
        assert "classical forced product +1" in out
        assert "CONTRADICTION" in out
        assert "two-valued states: 8 (separating)" in out

    def test_bipartite_text(self, capsys):
        code, out, err = run_cli(capsys, "bipartite")
        assert code == 0
        assert "degenerate pencil spectrum: -1 (x2), 1 (x2)" in out
        assert "CONTRADICTION" in out

    def test_intro_pair(self, capsys):
        code, out, err = run_cli(capsys, "intro-pair")
        assert code == 0
        assert "(1, 1, -1, 1)" in out

    def test_determinism(self, capsys):
        first = run_cli(capsys, "pm-square", "--format", "json")
        second = run_cli(capsys, "pm-square", "--format", "json")
        assert first == second

    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_analyze_file_matches_builtin(self, capsys, name):
        import qpencil

        path = (
            __import__("importlib.resources", fromlist=["files"])
            .files("qpencil")
            .joinpath("scenarios", BUILTINS[name])
        )
        builtin = run_cli(capsys, name)
        via_file = run_cli(capsys, "analyze", "--file", str(path))
        assert builtin == via_file

    def test_coeffs_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "intro-pair", "--coeffs", "3,5", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["groups"][0]["result"]["pencil_eigenvalues"] == [-8, -2, 2, 8]

    def test_max_snap_norm_flag(self, capsys):
        # the shipped scenarios only need multiplier 1, so tightening the
        # search must not change the output
        tight = run_cli(capsys, "intro-pair", "--max-snap-norm", "1")
        default = run_cli(capsys, "intro-pair")
        assert tight == default

    def test_out_flag(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, "ghzm", "--format", "json", "--out", str(target)
        )
        assert code == 0
        assert out == ""
        data = json.loads(target.read_text())
        assert data["mode"] == "parity"

    def test_export_json(self, capsys):
        code, out, _ = run_cli(capsys, "export", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["dim"] == 4
        assert len(data["vertices"]) == 24

    def test_export_dot(self, capsys, tmp_path):
        scn = tmp_path / "ghzm_copy.scn"
        scn.write_text(format_scenario(load_builtin("ghzm")))
        code, out, _ = run_cli(capsys, "export", "--format", "dot", "--file", str(scn))
        assert code == 0
        assert out.startswith('graph "contexts"')
        assert out.count(" -- ") == 7  # one 8-vertex chain

    def test_dot_format_on_builtin(self, capsys):
        code, out, _ = run_cli(capsys, "pm-square", "--format", "dot")
        assert code == 0
        assert out.count(" -- ") == 3 * 24

    def test_subsets_on_single_context_scenario(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys,
            "subsets",
            "--file",
            str(_write(tmp_path, "sites 3\nmode parity\ngroup\nXXX\nXYY\nYXY\nYYX\n")),
        )
        assert code == 0
        assert "no-state sub-collections: 0" in out


def _write(tmp_path, text):
    p = tmp_path / "scenario.scn"
    p.write_text(text)
    return p


class TestExitCodes:
    def test_usage_error_is_1(self, capsys):
        code, _, err = run_cli(capsys, "analyze")
        assert code == 1
        assert "error" in err

    def test_unknown_command_is_1(self, capsys):
        code, _, err = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_parse_error_is_1(self, capsys, tmp_path):
        path = _write(tmp_path, "sites 2\ngroup\nZXX\n")
        code, _, err = run_cli(capsys, "analyze", "--file", str(path))
        assert code == 1
        assert "line 3" in err

    def test_missing_file_is_1(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--file", "/nonexistent.scn")
        assert code == 1

    def test_bad_coeffs_is_1(self, capsys):
        code, _, err = run_cli(capsys, "intro-pair", "--coeffs", "a,b")
        assert code == 1

    def test_coeffs_arity_mismatch_is_1(self, capsys):
        code, _, err = run_cli(capsys, "intro-pair", "--coeffs", "1,2,3")
        assert code == 1

    def test_degenerate_group_in_hypergraph_mode_is_2(self, capsys, tmp_path):
        path = _write(tmp_path, "sites 2\nmode hypergraph\ngroup\nZI\n")
        code, _, err = run_cli(capsys, "analyze", "--file", str(path))
        assert code == 2
        assert "verification failure" in err

    def test_noncommuting_group_is_2(self, capsys, tmp_path):
        path = _write(tmp_path, "sites 2\nmode pencil\ngroup\nZI\nXI\n")
        code, _, err = run_cli(capsys, "analyze", "--file", str(path))
        assert code == 2
