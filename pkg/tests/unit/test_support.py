"""Unit tests for YAML input, exceptions and logging helpers."""

import logging
from typing import List

import pytest
from pydantic import BaseModel

from src.exceptions import InvalidInputError, MaurerCartanError, ParseError, WindowInsufficientError
from src.cli.console import setup_console
from src.logging_config import ContextFormatter, get_logger, log_timing, log_with_context
from src.yamlio import LINE_KEY, dump_yaml, load_yaml, parse_yaml, validate


class Entry(BaseModel):
    name: str
    degree: int


class Listing(BaseModel):
    entries: List[Entry]


@pytest.mark.unit
class TestYaml:
    """Test line-tracking YAML input."""

    def test_mappings_remember_lines(self):
        data = parse_yaml("a: 1\nb:\n  c: 2\n")
        assert data[LINE_KEY] == 1
        assert data["b"][LINE_KEY] == 3

    def test_syntax_error_has_location(self):
        with pytest.raises(ParseError) as excinfo:
            parse_yaml("a: [1, 2\nb: 3\n", "broken.yaml")
        assert "broken.yaml:" in str(excinfo.value)

    def test_validation_error_names_field_and_line(self):
        data = parse_yaml("entries:\n  - {name: a, degree: 0}\n  - {name: b, degree: x}\n", "e.yaml")
        with pytest.raises(ParseError) as excinfo:
            validate(Listing, data, "e.yaml")
        assert "entries.1.degree" in str(excinfo.value)
        assert excinfo.value.context["line"] == 3

    def test_top_level_must_be_mapping(self):
        with pytest.raises(ParseError):
            validate(Listing, [1, 2], "list.yaml")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_yaml(tmp_path / "absent.yaml")

    def test_dump_drops_line_keys(self, tmp_path):
        target = tmp_path / "out.yaml"
        text = dump_yaml(parse_yaml("a: 1\nb: {c: 2}\n"), target)
        assert LINE_KEY not in text
        assert target.read_text(encoding="utf-8") == text


@pytest.mark.unit
class TestExceptions:
    """Test error codes and exit codes."""

    def test_exit_codes(self):
        assert InvalidInputError("x").exit_code == 2
        assert ParseError("x").exit_code == 2
        assert WindowInsufficientError("x").exit_code == 3

    def test_parse_error_location(self):
        error = ParseError("bad key", "p.yaml", 7, key="mu")
        assert error.message == "p.yaml:7: bad key"
        assert error.to_dict() == {"code": "parse-error", "message": "p.yaml:7: bad key", "path": "p.yaml", "line": 7, "key": "mu"}

    def test_maurer_cartan_error_keeps_order(self):
        error = MaurerCartanError("fails", order=3)
        assert error.order == 3
        assert error.context == {"order": 3}


@pytest.mark.unit
class TestLogging:
    """Test context logging."""

    def test_context_is_attached(self, caplog):
        engine = logging.getLogger("dioperad_engine")
        engine.addHandler(caplog.handler)
        try:
            log_with_context(get_logger("tests.support"), "warning", "slot done", slot="1,3", window=4)
        finally:
            engine.removeHandler(caplog.handler)
        record = caplog.records[-1]
        assert record.context == {"slot": "1,3", "window": 4}

    def test_formatter_prefixes_slot(self):
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "computed", None, None)
        record.context = {"slot": "2,2"}
        assert ContextFormatter("%(message)s").format(record) == "[slot 2,2] computed"

    def test_timing_logs_duration(self, mocker):
        logged = mocker.patch("src.logging_config.log_with_context")

        @log_timing
        def succeeds():
            return 7

        assert succeeds() == 7
        _, level, message = logged.call_args.args
        assert level == "debug"
        assert message == "succeeds completed"
        assert "duration_seconds" in logged.call_args.kwargs

    def test_timing_reraises(self):
        @log_timing
        def fails():
            raise InvalidInputError("nope")

        with pytest.raises(InvalidInputError):
            fails()


@pytest.mark.unit
class TestConsole:
    """Test console setup for the command line."""

    def test_prepares_windows_console_and_levels(self, mocker):
        fix = mocker.patch("src.cli.console.colorama.just_fix_windows_console")
        setup_console("debug")
        fix.assert_called_once_with()
        assert get_logger("any").getEffectiveLevel() == logging.DEBUG
        setup_console("INFO")
