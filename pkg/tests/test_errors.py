"""Error types and error-handling decorators."""

from unittest.mock import MagicMock, patch

import pytest

from src.utils.errors import (
    BackendError,
    DatasetError,
    FortcoverError,
    GraphParseError,
    handle_errors,
    retry_on_error,
)


def test_parse_error_carries_line_number():
    err = GraphParseError("expected two vertex labels", 7)
    assert err.line_number == 7
    assert str(err) == "line 7: expected two vertex labels"
    assert GraphParseError("no line").line_number is None


def test_handle_errors_swallows_and_returns_default():
    @handle_errors(default_return=-1, log_error=False)
    def broken():
        raise BackendError("boom")

    assert broken() == -1


def test_handle_errors_reraises():
    @handle_errors(reraise=True)
    def broken():
        raise DatasetError("missing")

    with pytest.raises(DatasetError):
        broken()


@patch("src.utils.errors.time.sleep")
def test_retry_backs_off(mock_sleep):
    flaky = MagicMock(side_effect=[OSError("a"), OSError("b"), "ok"])
    flaky.__name__ = "flaky"
    wrapped = retry_on_error(max_retries=3, delay=0.5, backoff=3.0, exceptions=(OSError,))(flaky)
    assert wrapped() == "ok"
    assert [c.args[0] for c in mock_sleep.call_args_list] == [0.5, 1.5]


@patch("src.utils.errors.time.sleep")
def test_retry_ignores_other_exceptions(mock_sleep):
    calls = []

    @retry_on_error(exceptions=(OSError,))
    def wrong_kind():
        calls.append(1)
        raise FortcoverError("not retried")

    with pytest.raises(FortcoverError):
        wrong_kind()
    assert calls == [1]
    mock_sleep.assert_not_called()
