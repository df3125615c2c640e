"""Session command grammar, execution, logging, and the command line."""

from pathlib import Path

import pytest
from click.testing import CliRunner

from ontocompo import (
    PreconditionError,
    ScriptError,
    SessionCommand,
    UnknownIdError,
    execute,
    execute_script,
    format_command,
    load_application,
    new_workspace,
    parse_line,
    parse_script,
    replay_session,
    save_session,
)
from ontocompo.cli import main
from conftest import fixture_text

CASE_STUDY_LOG = [
    "select component=InsuranceCBirthDFC",
    "extendTask",
    "extract target=new name=AccountScreen",
    "export",
]


@pytest.fixture
def insurance_ws(insurancec):
    ws = new_workspace()
    load_application(ws, insurancec)
    return ws


# ---------------------------------------------------------------------------
# grammar


def test_parse_line_skips_blanks_and_comments():
    assert parse_line("") is None
    assert parse_line("   ") is None
    assert parse_line("# a note") is None


def test_parse_line_strips_trailing_comment():
    command = parse_line("select component=X  # why")
    assert command == SessionCommand("select", {"component": "X"})


def test_parse_line_reads_quoted_values():
    command = parse_line('extract target=new name="Account Screen"')
    assert command.args == {"target": "new", "name": "Account Screen"}


def test_parse_line_rejections():
    with pytest.raises(ScriptError, match="unknown command"):
        parse_line("fly component=X")
    with pytest.raises(ScriptError, match="expected arg=value"):
        parse_line("select X")
    with pytest.raises(ScriptError, match="unknown argument"):
        parse_line("select component=X screen=Y")
    with pytest.raises(ScriptError, match="duplicate argument"):
        parse_line("select component=X component=Y")
    with pytest.raises(ScriptError, match="missing argument"):
        parse_line("select")
    with pytest.raises(ScriptError, match="unreadable line"):
        parse_line('select component="unterminated')


def test_format_command_orders_and_quotes():
    command = parse_line('extract name="Account Screen" target=new')
    assert format_command(command) == 'extract target=new name="Account Screen"'
    assert format_command(SessionCommand("extract", {"target": "new", "name": ""})) == (
        'extract target=new name=""'
    )


def test_format_parse_round_trip():
    awkward = SessionCommand("extract", {"target": "new", "name": 'He said "hi" #1'})
    assert parse_line(format_command(awkward)) == awkward


def test_parse_script_numbers_lines():
    text = "# intro\n\nselect component=A\nbadverb\n"
    with pytest.raises(ScriptError) as err:
        parse_script(text)
    assert err.value.line_number == 4
    assert parse_script("# intro\n\nselect component=A\n")[0][0] == 3


# ---------------------------------------------------------------------------
# execution and the session log


def test_execute_appends_canonical_line(insurance_ws):
    execute(insurance_ws, parse_line("select  component=InsuranceCBirthDFC"))
    assert insurance_ws.session_log == ["select component=InsuranceCBirthDFC"]


def test_failed_command_logs_nothing(insurance_ws):
    with pytest.raises(UnknownIdError):
        execute(insurance_ws, parse_line("select component=Ghost"))
    assert insurance_ws.session_log == []
    assert insurance_ws.selection.items == ()


def test_extend_layout_is_canonicalized(insurance_ws):
    execute(insurance_ws, parse_line("select component=InsuranceCBirthLFC"))
    execute(insurance_ws, parse_line("extendLayout directions=below,right"))
    assert insurance_ws.session_log[-1] == (
        "extendLayout directions=onTheRightOf,below scope=last"
    )


def test_place_relation_alias_is_canonicalized(insurance_ws):
    execute(insurance_ws, parse_line("select component=InsuranceCNameLFC"))
    execute(insurance_ws, parse_line("select component=InsuranceCRefreshBFC"))
    execute(insurance_ws, parse_line("extract target=new name=Sheet"))
    execute(
        insurance_ws,
        parse_line(
            "place screen=Sheet subject=InsuranceC.InsuranceCRefreshBFC"
            " relation=right anchor=InsuranceC.InsuranceCNameLFC"
        ),
    )
    assert insurance_ws.session_log[-1] == (
        "place screen=Sheet subject=InsuranceC.InsuranceCRefreshBFC"
        " relation=onTheRightOf anchor=InsuranceC.InsuranceCNameLFC"
    )


def test_extract_argument_checks(insurance_ws):
    execute(insurance_ws, parse_line("select component=InsuranceCBirthDFC"))
    with pytest.raises(PreconditionError):
        execute(insurance_ws, parse_line("extract target=new"))
    with pytest.raises(PreconditionError):
        execute(insurance_ws, parse_line("extract target=Sheet name=Sheet"))


def test_load_requires_a_resolver(insurance_ws):
    with pytest.raises(UnknownIdError):
        execute(insurance_ws, parse_line("load app=BusinessDir"))


def test_execute_script_runs_the_case_study(insurance_ws, casestudy_script, manifest):
    exports: list[str] = []
    count = execute_script(insurance_ws, casestudy_script, on_export=exports.append)
    assert count == 4
    assert insurance_ws.session_log == CASE_STUDY_LOG
    assert len(exports) == 1
    assert insurance_ws.composed.screens[0].name == manifest["composedScreenName"]


def test_execute_script_stops_at_first_failure(insurance_ws):
    text = "select component=InsuranceCBirthDFC\nselect component=Ghost\nextendTask\n"
    with pytest.raises(ScriptError) as err:
        execute_script(insurance_ws, text)
    assert err.value.line_number == 2
    assert insurance_ws.selection.items == ("InsuranceCBirthDFC",)
    assert insurance_ws.session_log == ["select component=InsuranceCBirthDFC"]


def test_save_session_requires_history(insurance_ws, tmp_path):
    with pytest.raises(PreconditionError):
        save_session(insurance_ws, tmp_path / "empty.log")


def test_save_and_replay_reproduce_the_export(insurancec, casestudy_script, tmp_path):
    sources = {"InsuranceC": insurancec}
    ws = new_workspace()
    execute(ws, SessionCommand("load", {"app": "InsuranceC"}), sources.__getitem__)
    exports: list[str] = []
    execute_script(ws, casestudy_script, on_export=exports.append)

    log_path = tmp_path / "session.log"
    save_session(ws, log_path)
    assert log_path.read_text("utf-8").splitlines()[0] == "load app=InsuranceC"

    replayed_exports: list[str] = []
    replayed = replay_session(
        log_path.read_text("utf-8"), sources, on_export=replayed_exports.append
    )
    assert replayed_exports == exports
    assert replayed.composed == ws.composed


def test_replay_without_the_source_fails(casestudy_script):
    text = "load app=InsuranceC\n" + casestudy_script
    with pytest.raises(ScriptError) as err:
        replay_session(text, {})
    assert err.value.line_number == 1


# ---------------------------------------------------------------------------
# command line


@pytest.fixture
def cli_files(tmp_path):
    app_path = tmp_path / "insurancec.json"
    app_path.write_text(fixture_text("insurancec.json"), "utf-8")
    script_path = tmp_path / "casestudy.script"
    script_path.write_text(fixture_text("casestudy.script"), "utf-8")
    return tmp_path


def test_cli_run_prints_export(cli_files):
    runner = CliRunner()
    result = runner.invoke(
        main,
        [
            "run",
            "--app",
            str(cli_files / "insurancec.json"),
            "--script",
            str(cli_files / "casestudy.script"),
        ],
    )
    assert result.exit_code == 0
    assert result.stdout.startswith("{")
    assert '"id": "Composed"' in result.stdout


def test_cli_run_replay_round_trip(cli_files):
    runner = CliRunner()
    result = runner.invoke(
        main,
        [
            "run",
            "--app",
            str(cli_files / "insurancec.json"),
            "--script",
            str(cli_files / "casestudy.script"),
            "--out",
            str(cli_files / "first.json"),
            "--log",
            str(cli_files / "session.log"),
        ],
    )
    assert result.exit_code == 0

    result = runner.invoke(
        main,
        [
            "replay",
            "--session",
            str(cli_files / "session.log"),
            "--app",
            str(cli_files / "insurancec.json"),
            "--out",
            str(cli_files / "second.json"),
        ],
    )
    assert result.exit_code == 0
    first = (cli_files / "first.json").read_bytes()
    assert first == (cli_files / "second.json").read_bytes()


def test_cli_reports_failing_line(cli_files):
    script = cli_files / "bad.script"
    script.write_text("select component=InsuranceCBirthDFC\nselect component=Ghost\n", "utf-8")
    runner = CliRunner()
    result = runner.invoke(
        main,
        [
            "run",
            "--app",
            str(cli_files / "insurancec.json"),
            "--script",
            str(script),
        ],
    )
    assert result.exit_code == 1
    assert "error: line 2:" in result.stderr
    assert "Ghost" in result.stderr


def test_cli_empty_script_succeeds_quietly(cli_files):
    script = cli_files / "empty.script"
    script.write_text("# nothing to do\n", "utf-8")
    runner = CliRunner()
    result = runner.invoke(main, ["run", "--script", str(script)])
    assert result.exit_code == 0
    assert result.stdout == ""


def test_cli_rejects_duplicate_sources(cli_files):
    runner = CliRunner()
    result = runner.invoke(
        main,
        [
            "run",
            "--app",
            str(cli_files / "insurancec.json"),
            "--app",
            str(cli_files / "insurancec.json"),
            "--script",
            str(cli_files / "casestudy.script"),
        ],
    )
    assert result.exit_code == 1
    assert "duplicate application id" in result.stderr


def test_cli_echoes_suggestion_questions(cli_files):
    script = cli_files / "ask.script"
    script.write_text("select component=InsuranceCBirthDFC\nsuggest mode=tasks\n", "utf-8")
    runner = CliRunner()
    result = runner.invoke(
        main,
        [
            "run",
            "--app",
            str(cli_files / "insurancec.json"),
            "--script",
            str(script),
        ],
    )
    assert result.exit_code == 0
    assert result.stdout == (
        "Also select the 6 element(s) linked to task 'Display Account Info'?\n"
    )
