"""
Curve Fixtures

Implements:
1. Loading the shipped desk-scale seeds
2. Building (and caching) CurveInstance objects from seed entries or from
   full exported instance documents
3. Exporting instances, with towers, curves and generators, to JSON

Imported documents are re-validated: p, r and t are recomputed from the
family polynomials and every generator is checked to lie on its curve.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pairnet.curves.families import get_family
from pairnet.curves.instance import DEFAULT_RNG_SEED, CurveInstance, InstanceError, instance_from_dict, instantiate

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DEFAULT_FIXTURE_PATH = Path(__file__).parent / "data" / "fixtures.json"


class FixtureStore:
    """Named curve instances backed by a fixture document."""

    def __init__(self, entries: Optional[Dict[str, Dict[str, Any]]] = None):
        self.entries: Dict[str, Dict[str, Any]] = dict(entries or {})
        self._instances: Dict[str, CurveInstance] = {}

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "FixtureStore":
        """
        Load a fixture document (the shipped one by default).

        Raises:
            FileNotFoundError: If the document does not exist
            ValueError: If it has no instances
        """
        path = Path(path) if path else DEFAULT_FIXTURE_PATH
        with open(path, "r") as f:
            document = json.load(f)
        entries = document.get("instances")
        if not isinstance(entries, dict) or not entries:
            raise ValueError(f"Fixture document {path} lists no instances")
        logger.info(f"Loaded {len(entries)} curve fixtures from {path}")
        return cls(entries)

    def names(self) -> List[str]:
        return sorted(self.entries)

    def get(self, name: str) -> CurveInstance:
        """
        Instance for a fixture name.

        Raises:
            KeyError: If the name is unknown
            InstanceError: If the entry does not describe a valid instance
        """
        if name not in self._instances:
            if name not in self.entries:
                raise KeyError(f"No fixture named '{name}' (available: {', '.join(self.names())})")
            self._instances[name] = self._build(self.entries[name])
        return self._instances[name]

    def _build(self, entry: Dict[str, Any]) -> CurveInstance:
        params = get_family(entry["family"])
        if "tower" in entry:
            return instance_from_dict(params, entry)
        x = int(entry["x"])
        instance = instantiate(params, x, r=int(entry["r"]) if "r" in entry else None,
                               rng_seed=int(entry.get("rng_seed", DEFAULT_RNG_SEED)))
        if "p" in entry and int(entry["p"]) != instance.p:
            raise InstanceError(f"Fixture p={entry['p']} does not match p(x)={instance.p} for x={x}")
        return instance

    def add(self, name: str, instance: CurveInstance) -> None:
        """Register an instance and its full export."""
        self._instances[name] = instance
        self.entries[name] = self.export(instance)

    @staticmethod
    def export(instance: CurveInstance) -> Dict[str, Any]:
        return instance.to_dict()

    def save_to_file(self, filepath: Union[str, Path], expand: bool = True) -> None:
        """
        Write the store.

        Args:
            filepath: Destination
            expand: Write full instance documents instead of seed entries
        """
        instances = {
            name: self.export(self.get(name)) if expand else entry
            for name, entry in sorted(self.entries.items())
        }
        with open(filepath, "w") as f:
            json.dump({"instances": instances}, f, indent=2)
        logger.info(f"Saved {len(instances)} curve fixtures to {filepath}")
