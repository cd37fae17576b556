"""Run configuration, its validator and curve fixtures."""

from pairnet.config.config_validator import COMMANDS, OUTPUT_FORMATS, ConfigError, RunConfigValidator
from pairnet.config.fixtures import DEFAULT_FIXTURE_PATH, FixtureStore
from pairnet.config.run_config import COMMAND_OPTIONS, OutputFormat, RunCommand, RunConfig, RunConfigManager

__all__ = [
    "COMMANDS",
    "COMMAND_OPTIONS",
    "DEFAULT_FIXTURE_PATH",
    "OUTPUT_FORMATS",
    "ConfigError",
    "FixtureStore",
    "OutputFormat",
    "RunCommand",
    "RunConfig",
    "RunConfigManager",
    "RunConfigValidator",
]
