"""Prime fields, extension towers and counted field arithmetic."""

from pairnet.fieldtower.counter import OpCounter, OpKind, counting, current_counter, paused
from pairnet.fieldtower.element import FieldElement
from pairnet.fieldtower.prime_field import FieldMismatchError, PrimeField, ZeroInversionError
from pairnet.fieldtower.tower import ExtensionStep, TowerSpec, build_tower

# Elements of the base field are FieldElements of degree 1
Fp = FieldElement
ExtElement = FieldElement

__all__ = [
    "ExtElement",
    "ExtensionStep",
    "FieldElement",
    "FieldMismatchError",
    "Fp",
    "OpCounter",
    "OpKind",
    "PrimeField",
    "TowerSpec",
    "ZeroInversionError",
    "build_tower",
    "counting",
    "current_counter",
    "paused",
]
