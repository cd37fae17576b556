"""
Run Configuration Validation

Validates a plain run-configuration dictionary:
1. Command and curve family
2. Seed expressions (decimal or signed 2-power sums)
3. Processor count (4 or 8) and output format
4. Paths to fixture and cost-table documents
5. Option combinations that conflict or have no effect

All parameters are checked against ranges, types and dependencies.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from pairnet.curves.families import CurveFamily
from pairnet.curves.scalar import parse_seed

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

COMMANDS = ["pair", "cost-report", "verify", "schedule"]
OUTPUT_FORMATS = ["table", "records"]


@dataclass
class ConfigError:
    """Configuration error."""
    parameter: str
    value: Any
    reason: str
    severity: str = "error"  # "error", "warning"

    def __str__(self) -> str:
        return f"{self.parameter}: {self.reason}"


class RunConfigValidator:
    """
    Validator for pairnet run configurations.
    """

    VALID_RANGES = {
        'command': {'type': str, 'values': COMMANDS},
        'family': {'type': str, 'values': [f.value for f in CurveFamily]},
        'seed': {'type': str, 'min_len': 1, 'max_len': 256},
        'desk_scale': {'type': bool},
        'processors': {'type': int, 'values': [4, 8]},
        'output_format': {'type': str, 'values': OUTPUT_FORMATS},
        'fixture_path': {'type': str, 'min_len': 1, 'max_len': 1024},
        'cost_table_path': {'type': str, 'min_len': 1, 'max_len': 1024},
        'force_compute': {'type': bool},
        'count_only': {'type': bool},
        'verify_bilinearity': {'type': bool},
        'scalars': {'type': int, 'min': 1, 'max': 100},
        'rng_seed': {'type': int, 'min': 0},
        'timeout': {'type': (int, float), 'min': 0.1, 'max': 600.0},
        'only': {'type': str, 'min_len': 1, 'max_len': 64},
    }

    REQUIRED_PARAMETERS = [
        'command',
    ]

    # Parameters whose validity depends on others
    DEPENDENCIES = {
        'seed': ['desk_scale', 'family'],
        'force_compute': ['seed', 'desk_scale'],
        'verify_bilinearity': ['count_only'],
    }

    def __init__(self):
        """Initialize validator."""
        self.errors: List[ConfigError] = []
        self.warnings: List[ConfigError] = []

    def validate(self, config: Dict[str, Any]) -> Tuple[bool, List[ConfigError]]:
        """
        Validate complete configuration.

        Args:
            config: Configuration dictionary

        Returns:
            Tuple of (is_valid, issue_list)
        """
        self.errors.clear()
        self.warnings.clear()

        self._validate_required(config)

        for param, value in config.items():
            self._validate_parameter(param, value)

        self._validate_dependencies(config)
        self._check_unknown_parameters(config)

        is_valid = len(self.errors) == 0
        all_issues = self.errors + self.warnings

        if is_valid:
            logger.info("Run configuration validation passed")
        else:
            logger.error(f"Run configuration validation failed: {len(self.errors)} errors, "
                         f"{len(self.warnings)} warnings")

        return is_valid, all_issues

    def _error(self, param: str, value: Any, reason: str) -> None:
        self.errors.append(ConfigError(parameter=param, value=value, reason=reason, severity="error"))

    def _warn(self, param: str, value: Any, reason: str) -> None:
        self.warnings.append(ConfigError(parameter=param, value=value, reason=reason, severity="warning"))

    def _validate_required(self, config: Dict[str, Any]) -> None:
        for param in self.REQUIRED_PARAMETERS:
            if param not in config:
                self._error(param, None, f"Required parameter missing: {param}")

    def _validate_parameter(self, param: str, value: Any) -> None:
        """Validate single parameter."""
        if param not in self.VALID_RANGES or value is None:
            return

        rules = self.VALID_RANGES[param]
        expected_type = rules['type']
        # bool is an int subclass; only accept it where a flag is expected
        if not isinstance(value, expected_type) or (isinstance(value, bool) and expected_type is not bool):
            names = expected_type.__name__ if isinstance(expected_type, type) else "number"
            self._error(param, value, f"Invalid type: expected {names}, got {type(value).__name__}")
            return

        if 'values' in rules and value not in rules['values']:
            self._error(param, value, f"Invalid value: must be one of {rules['values']}")

        if isinstance(value, str):
            if 'min_len' in rules and len(value) < rules['min_len']:
                self._error(param, value, f"String too short: minimum {rules['min_len']} characters")
            if 'max_len' in rules and len(value) > rules['max_len']:
                self._error(param, value, f"String too long: maximum {rules['max_len']} characters")

        if isinstance(value, (int, float)) and not isinstance(value, bool):
            if 'min' in rules and value < rules['min']:
                self._error(param, value, f"Value too small: minimum {rules['min']}")
            if 'max' in rules and value > rules['max']:
                self._error(param, value, f"Value too large: maximum {rules['max']}")

    def _validate_dependencies(self, config: Dict[str, Any]) -> None:
        """Validate parameter combinations."""
        seed = config.get('seed')
        if isinstance(seed, str) and seed:
            try:
                parse_seed(seed)
            except ValueError as e:
                self._error('seed', seed, f"Unparseable seed: {e}")
            if config.get('desk_scale'):
                self._error('seed', seed, "seed and desk_scale are mutually exclusive")

        if config.get('command') == 'pair' and not config.get('family'):
            self._error('family', None, "pair requires a curve family")

        # Full computation is the default for desk-scale instances
        if config.get('force_compute') and (config.get('desk_scale') or not seed):
            self._warn('force_compute', True, "force_compute only applies to explicit large seeds")

        if config.get('verify_bilinearity') and config.get('count_only'):
            self._error('verify_bilinearity', True, "verify_bilinearity needs pairing values, not count_only")

    def _check_unknown_parameters(self, config: Dict[str, Any]) -> None:
        unknown = set(config.keys()) - set(self.VALID_RANGES.keys())
        for param in sorted(unknown):
            self._warn(param, config[param], f"Unknown parameter: {param}")

    def get_default_config(self) -> Dict[str, Any]:
        """
        Get default run configuration.

        Returns:
            Default configuration dictionary
        """
        return {
            'command': 'cost-report',
            'family': 'bls12',
            'desk_scale': True,
            'processors': 4,
            'output_format': 'table',
            'force_compute': False,
            'count_only': False,
            'verify_bilinearity': False,
            'scalars': 20,
            'rng_seed': 2024,
            'timeout': 30.0,
        }

    def validate_with_defaults(self, config: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], List[ConfigError]]:
        """
        Validate configuration and merge with defaults.

        Args:
            config: Configuration dictionary (may be partial)

        Returns:
            Tuple of (is_valid, merged_config, issue_list)
        """
        merged = self.get_default_config()
        merged.update(config)
        if config.get('seed'):
            merged['desk_scale'] = config.get('desk_scale', False)

        is_valid, issues = self.validate(merged)
        return is_valid, merged, issues
