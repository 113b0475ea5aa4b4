import logging
import logging.handlers

import pytest

from equimon.utils.logging import resolve_level, setup_logger


@pytest.mark.parametrize("name,expected", [
    ("debug", logging.DEBUG), ("ERROR", logging.ERROR), ("LOUD", logging.WARNING), (None, logging.WARNING),
])
def test_resolve_level(name, expected):
    assert resolve_level(name) == expected


def test_logs_go_to_stderr_and_rotating_file(tmp_path, capsys):
    log_file = tmp_path / "logs" / "equimon.log"
    logger = setup_logger("equimon.test", str(log_file), "INFO")
    logger.info("轨道分解完成")
    out, err = capsys.readouterr()
    assert out == ""
    assert "轨道分解完成" in err
    assert any(isinstance(h, logging.handlers.RotatingFileHandler) for h in logger.handlers)
    for handler in logger.handlers:
        handler.flush()
    assert "轨道分解完成" in log_file.read_text(encoding="utf-8")


def test_repeated_setup_replaces_handlers(tmp_path):
    setup_logger("equimon.test.repeat", str(tmp_path / "a.log"))
    logger = setup_logger("equimon.test.repeat")
    assert len(logger.handlers) == 1
    assert logger.level == logging.WARNING
