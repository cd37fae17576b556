"""Pairing-friendly curve families, instances, points and twists."""

from pairnet.curves.families import FAMILIES, CurveFamily, FamilyParams, PublishedSeed, get_family
from pairnet.curves.instance import (
    CurveInstance,
    InstanceError,
    embedding_degree,
    instance_from_dict,
    instantiate,
    twist_order_candidates,
)
from pairnet.curves.point import Point, PointNotOnCurveError, WeierstrassCurve, point_add, point_mul
from pairnet.curves.scalar import SignedExpansion, binary_step_counts, parse_seed
from pairnet.curves.search import DeskSeed, search_desk_seed, subgroup_prime

__all__ = [
    "FAMILIES",
    "CurveFamily",
    "CurveInstance",
    "DeskSeed",
    "FamilyParams",
    "InstanceError",
    "Point",
    "PointNotOnCurveError",
    "PublishedSeed",
    "SignedExpansion",
    "WeierstrassCurve",
    "binary_step_counts",
    "embedding_degree",
    "get_family",
    "instance_from_dict",
    "instantiate",
    "parse_seed",
    "point_add",
    "point_mul",
    "search_desk_seed",
    "subgroup_prime",
    "twist_order_candidates",
]
