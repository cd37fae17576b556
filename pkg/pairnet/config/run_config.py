"""
Run Configuration

Implements:
1. RunConfig: one command invocation (family, seed, processors, output)
2. Validation through RunConfigValidator
3. Named run profiles saved to and loaded from JSON
4. Conversion of a profile into per-command CLI defaults
"""

import json
import logging
from dataclasses import asdict, dataclass, fields
from enum import Enum
from typing import Any, Dict, List, Optional

from pairnet.config.config_validator import ConfigError, RunConfigValidator

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class RunCommand(Enum):
    PAIR = "pair"
    COST_REPORT = "cost-report"
    VERIFY = "verify"
    SCHEDULE = "schedule"


class OutputFormat(Enum):
    TABLE = "table"
    RECORDS = "records"


# Options each command accepts, as RunConfig field names
COMMAND_OPTIONS = {
    RunCommand.PAIR: ("family", "seed", "desk_scale", "processors", "fixture_path", "force_compute",
                      "count_only", "verify_bilinearity", "scalars", "rng_seed", "timeout"),
    RunCommand.COST_REPORT: ("processors", "output_format", "cost_table_path"),
    RunCommand.VERIFY: ("family", "fixture_path", "only", "rng_seed", "timeout"),
    RunCommand.SCHEDULE: ("family", "processors"),
}


@dataclass
class RunConfig:
    """Complete configuration of one command."""
    command: RunCommand
    family: Optional[str] = None
    seed: Optional[str] = None
    desk_scale: bool = True
    processors: int = 4
    output_format: OutputFormat = OutputFormat.TABLE
    fixture_path: Optional[str] = None
    cost_table_path: Optional[str] = None
    force_compute: bool = False
    count_only: bool = False
    verify_bilinearity: bool = False
    scalars: int = 20
    rng_seed: int = 2024
    timeout: float = 30.0
    only: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["command"] = self.command.value
        data["output_format"] = self.output_format.value
        return {key: value for key, value in data.items() if value is not None}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """
        Raises:
            ValueError: On an unknown command or output format
        """
        known = {f.name for f in fields(cls)}
        values = {key: value for key, value in data.items() if key in known}
        values["command"] = RunCommand(values["command"])
        if "output_format" in values:
            values["output_format"] = OutputFormat(values["output_format"])
        if values.get("seed") and "desk_scale" not in values:
            values["desk_scale"] = False
        return cls(**values)

    def issues(self) -> List[ConfigError]:
        _, issues = RunConfigValidator().validate(self.to_dict())
        return issues

    def validate(self) -> bool:
        """
        Validate configuration.

        Returns:
            True if valid
        """
        is_valid, issues = RunConfigValidator().validate(self.to_dict())
        for issue in issues:
            if issue.severity == "error":
                logger.error(f"{issue.parameter}: {issue.reason}")
            else:
                logger.warning(f"{issue.parameter}: {issue.reason}")
        return is_valid

    def cli_defaults(self) -> Dict[str, Any]:
        """Option defaults for this config's command."""
        data = self.to_dict()
        return {name: data[name] for name in COMMAND_OPTIONS[self.command] if name in data}


class RunConfigManager:
    """Named run profiles."""

    def __init__(self):
        self.profiles: Dict[str, RunConfig] = {}

    def add_profile(self, name: str, config: RunConfig) -> None:
        """
        Add a run profile.

        Raises:
            ValueError: If the configuration is invalid
        """
        if not config.validate():
            raise ValueError(f"Invalid run configuration for profile '{name}'")
        self.profiles[name] = config
        logger.info(f"Added run profile: {name} ({config.command.value})")

    def get_profile(self, name: str) -> Optional[RunConfig]:
        return self.profiles.get(name)

    def default_map(self, name: str) -> Dict[str, Dict[str, Any]]:
        """
        Click default_map for a profile: {command: {option: value}}.

        Raises:
            KeyError: If the profile does not exist
        """
        config = self.profiles[name]
        return {config.command.value: config.cli_defaults()}

    def save_to_file(self, filepath: str) -> None:
        """
        Save all profiles to file.

        Args:
            filepath: Path to save file
        """
        document = {name: config.to_dict() for name, config in self.profiles.items()}
        with open(filepath, 'w') as f:
            json.dump(document, f, indent=2)
        logger.info(f"Saved {len(self.profiles)} run profiles to {filepath}")

    def load_from_file(self, filepath: str) -> None:
        """
        Load profiles from file.

        Args:
            filepath: Path to profile file

        Raises:
            ValueError: On an invalid profile
        """
        with open(filepath, 'r') as f:
            document = json.load(f)
        for name, data in document.items():
            self.add_profile(name, RunConfig.from_dict(data))
        logger.info(f"Loaded {len(document)} run profiles from {filepath}")

    def get_summary(self) -> Dict[str, Any]:
        return {
            'total_profiles': len(self.profiles),
            'profiles': [
                {'name': name, 'command': config.command.value, 'family': config.family}
                for name, config in self.profiles.items()
            ],
        }
