"""Tests for configuration loading."""

from pathlib import Path
from unittest import mock

import pytest

from rbolab.config import DEFAULT_SEED, ConfigError, Settings, load_settings
from rbolab.kernel import Tolerance


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every RBOLAB_* variable and point the config file somewhere empty."""
    for name in (
        "RBOLAB_TOL_ABS",
        "RBOLAB_TOL_REL",
        "RBOLAB_CHECK_TOL",
        "RBOLAB_SEED",
        "RBOLAB_SAMPLES",
        "RBOLAB_RADIUS",
        "RBOLAB_FD_STEP",
        "RBOLAB_FORMAT",
        "RBOLAB_KMAX",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("RBOLAB_CONFIG", "/nonexistent/rbolab/config.env")
    return monkeypatch


class TestSettings:
    """Test Settings dataclass."""

    def test_settings_can_be_created_with_defaults(self):
        """Settings can be instantiated with default parameters."""
        settings = Settings()
        assert settings.tol_abs == 1e-12
        assert settings.tol_rel == 1e-9
        assert settings.seed == DEFAULT_SEED
        assert settings.output_format == "text"
        assert isinstance(settings.debug, bool)

    def test_tolerance_pairs_absolute_and_relative(self):
        """tolerance() should carry both pivot thresholds."""
        settings = Settings(tol_abs=1e-10, tol_rel=1e-6)
        assert settings.tolerance() == Tolerance(abs=1e-10, rel=1e-6)

    def test_defaults_validate(self):
        """The defaults should pass validation."""
        Settings().validate()

    @pytest.mark.parametrize(
        "overrides",
        [
            {"tol_abs": -1.0},
            {"tol_abs": 0.0, "tol_rel": 0.0},
            {"check_tol": 0.0},
            {"samples": 0},
            {"radius": -0.1},
            {"fd_step": 0.0},
            {"output_format": "yaml"},
            {"kmax": 0},
        ],
    )
    def test_validate_rejects_bad_values(self, overrides):
        """validate() should reject values no command can run with."""
        with pytest.raises(ConfigError):
            Settings(**overrides).validate()

    def test_settings_are_mutable(self):
        """CLI overrides assign attributes after creation."""
        settings = Settings()
        settings.samples = 7
        assert settings.samples == 7


class TestLoadSettings:
    """Test load_settings() function."""

    def test_load_settings_returns_settings_instance(self, clean_env):
        """load_settings should return Settings instance."""
        settings = load_settings()
        assert isinstance(settings, Settings)
        assert settings.seed == DEFAULT_SEED

    def test_load_settings_calls_dotenv_if_available(self, clean_env):
        """load_settings should call load_dotenv if available."""
        mock_load_dotenv = mock.Mock()
        with mock.patch("rbolab.config.load_dotenv", mock_load_dotenv), \
             mock.patch("os.path.exists", return_value=True):
            settings = load_settings()
            mock_load_dotenv.assert_called_once()
            assert isinstance(settings, Settings)

    def test_load_settings_prefers_rbolab_config_env_var(self, clean_env):
        """load_settings should respect RBOLAB_CONFIG override."""
        config_path = "/tmp/custom/config.env"
        mock_load_dotenv = mock.Mock()
        clean_env.setenv("RBOLAB_CONFIG", config_path)
        with mock.patch("rbolab.config.load_dotenv", mock_load_dotenv), \
             mock.patch("os.path.exists", return_value=True):
            load_settings()
        mock_load_dotenv.assert_called_once_with(config_path)

    def test_load_settings_falls_back_to_xdg_config_home(self, clean_env):
        """load_settings should default to ${XDG_CONFIG_HOME}/rbolab/config.env."""
        clean_env.delenv("RBOLAB_CONFIG", raising=False)
        config_home = "/tmp/test-config"
        clean_env.setenv("XDG_CONFIG_HOME", config_home)
        mock_load_dotenv = mock.Mock()
        expected_path = str(Path(config_home) / "rbolab" / "config.env")
        with mock.patch("rbolab.config.load_dotenv", mock_load_dotenv), \
             mock.patch("os.path.exists", return_value=True):
            load_settings()
        mock_load_dotenv.assert_called_once_with(expected_path)

    def test_load_settings_works_without_dotenv(self, clean_env):
        """load_settings should work without python-dotenv installed."""
        with mock.patch("rbolab.config.load_dotenv", None):
            settings = load_settings()
            assert isinstance(settings, Settings)

    def test_load_settings_reads_environment(self, clean_env):
        """RBOLAB_* variables should override the defaults."""
        clean_env.setenv("RBOLAB_CHECK_TOL", "1e-6")
        clean_env.setenv("RBOLAB_SEED", "0x10")
        clean_env.setenv("RBOLAB_FORMAT", "JSON")
        clean_env.setenv("RBOLAB_KMAX", "4")
        settings = load_settings()
        assert settings.check_tol == 1e-6
        assert settings.seed == 16
        assert settings.output_format == "json"
        assert settings.kmax == 4

    def test_config_file_values_are_loaded(self, clean_env, tmp_path):
        """Values in the dotenv file should reach Settings."""
        config = tmp_path / "config.env"
        config.write_text("RBOLAB_SAMPLES=12\nRBOLAB_RADIUS=0.2\n")
        clean_env.setenv("RBOLAB_CONFIG", str(config))
        settings = load_settings()
        assert settings.samples == 12
        assert settings.radius == 0.2
        clean_env.delenv("RBOLAB_SAMPLES", raising=False)
        clean_env.delenv("RBOLAB_RADIUS", raising=False)

    @pytest.mark.parametrize("name, value", [("RBOLAB_CHECK_TOL", "tiny"), ("RBOLAB_SAMPLES", "many")])
    def test_unparseable_values_raise(self, clean_env, name, value):
        """A value that is not a number should raise ConfigError naming the variable."""
        clean_env.setenv(name, value)
        with pytest.raises(ConfigError, match=name):
            load_settings()
