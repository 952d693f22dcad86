"""Finite group arithmetic on indexed Cayley tables."""

from .automorphisms import (
    DEFAULT_AUT_CAP,
    Automorphism,
    automorphism_group,
    automorphism_images,
    greedy_generating_sequence,
    inner_automorphism_images,
)
from .elements import format_cycles, parse_cycles
from .families import GroupSpec, build_named_group, parse_group_spec, split_generators
from .table import (
    GroupTable,
    Homomorphism,
    center,
    centralizer,
    conjugacy_classes,
    element_order,
    element_orders,
    exponent,
    is_normal,
    is_simple,
    quotient,
    subgroup_closure,
    table_cap,
)

__all__ = [
    "DEFAULT_AUT_CAP",
    "Automorphism",
    "GroupSpec",
    "GroupTable",
    "Homomorphism",
    "automorphism_group",
    "automorphism_images",
    "build_named_group",
    "center",
    "centralizer",
    "conjugacy_classes",
    "element_order",
    "element_orders",
    "exponent",
    "format_cycles",
    "greedy_generating_sequence",
    "inner_automorphism_images",
    "is_normal",
    "is_simple",
    "parse_cycles",
    "parse_group_spec",
    "quotient",
    "split_generators",
    "subgroup_closure",
    "table_cap",
]
