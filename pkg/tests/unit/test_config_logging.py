"""
Unit tests for configuration and logging setup.
"""
import logging

from eigencone.config import get_config, get_env_file_template
from eigencone.utils import logging as eigencone_logging
from eigencone.utils.logging import EigenconeLogger, log_numerics


class TestConfig:
    """Test suite for the configuration dictionary."""

    def test_sections(self):
        """Test the configuration sections and their default ranges."""
        config = get_config()
        assert set(config) == {"system", "numerics", "bench", "output", "paths"}
        numerics = config["numerics"]
        assert numerics["rk4_substeps"] >= 1
        assert 0.0 < numerics["crossing_eps_rel"] < 1.0
        assert config["bench"]["repeats"] >= 3

    def test_env_template_lists_every_setting(self):
        """The .env template names every environment setting."""
        template = get_env_file_template()
        for key in ("LOG_LEVEL", "CROSSING_EPS_REL", "RK4_SUBSTEPS", "FD_STEP_REL",
                    "STOKES_POINTS", "KERNEL_TOL", "BENCH_REPEATS", "BENCH_MIN_RADIUS"):
            assert f"{key}=" in template


class TestLogging:
    """Test suite for the logger registry."""

    def test_loggers_are_cached(self):
        """Test that a logger is created once and does not propagate."""
        first = EigenconeLogger.get_logger("eigencone.test")
        assert EigenconeLogger.get_logger("eigencone.test") is first
        assert not first.propagate

    def test_set_level(self):
        """Test changing the level of every registered logger."""
        logger = EigenconeLogger.get_logger("eigencone.test_level")
        original = logger.level
        try:
            EigenconeLogger.set_level("DEBUG")
            assert logger.level == logging.DEBUG
            EigenconeLogger.set_level("error")
            assert logger.level == logging.ERROR
        finally:
            EigenconeLogger.set_level(logging.getLevelName(original))

    def test_prefix_is_added(self):
        """Short module names resolve inside the eigencone namespace."""
        short = EigenconeLogger.get_logger("test_prefix")
        assert short.name == "eigencone.test_prefix"
        assert EigenconeLogger.get_logger("eigencone.test_prefix") is short

    def test_numerical_settings_logged_at_debug(self):
        """The settings line appears at DEBUG and is skipped above it."""
        logger = EigenconeLogger.get_logger("test_numerics")
        records = []
        collector = logging.Handler()
        collector.emit = records.append
        logger.addHandler(collector)
        original = logger.level
        try:
            logger.setLevel(logging.INFO)
            log_numerics(logger)
            assert records == []
            logger.setLevel(logging.DEBUG)
            log_numerics(logger)
            assert len(records) == 1
            message = records[0].getMessage()
            assert "crossing_eps_rel=" in message
            assert "rk4_substeps=" in message
        finally:
            logger.removeHandler(collector)
            logger.setLevel(original)

    def test_file_loggers_share_one_file(self, tmp_path, monkeypatch):
        """With file logging every module writes to the same daily file."""
        monkeypatch.setattr(eigencone_logging, "log_dir", tmp_path)
        monkeypatch.setattr(EigenconeLogger, "_file_handler", None)
        first = EigenconeLogger.get_logger("test_file_a", file_logging=True)
        second = EigenconeLogger.get_logger("test_file_b", file_logging=True)
        shared = EigenconeLogger._file_handler
        try:
            assert shared in first.handlers
            assert shared in second.handlers
            first.warning("written once")
            shared.flush()
            (log_file,) = tmp_path.glob("eigencone_*.log")
            assert "written once" in log_file.read_text()
        finally:
            for logger in (first, second):
                logger.removeHandler(shared)
            shared.close()
