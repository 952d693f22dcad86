"""Triangle complexes, their surface components and census tables."""

from .census import (
    CSV_COLUMNS,
    CensusRow,
    GoldenFormatError,
    census,
    diff_census,
    golden_name,
    load_golden,
    render_text,
    rows_from_csv,
    rows_to_csv,
)
from .complex import (
    SIDES,
    AbelianGroupWarning,
    ComponentInvariants,
    SurfaceComplex,
    SurfaceComponent,
    TriangleSet,
    adjacent,
    enumerate_triangles,
    format_symbol,
)
from .export import export_complex, export_schema, recompute_invariants, walk_cycles
from .unionfind import UnionFind, components_by_union_find

__all__ = [
    "CSV_COLUMNS",
    "SIDES",
    "AbelianGroupWarning",
    "CensusRow",
    "ComponentInvariants",
    "GoldenFormatError",
    "SurfaceComplex",
    "SurfaceComponent",
    "TriangleSet",
    "UnionFind",
    "adjacent",
    "census",
    "components_by_union_find",
    "diff_census",
    "enumerate_triangles",
    "export_complex",
    "export_schema",
    "format_symbol",
    "golden_name",
    "load_golden",
    "recompute_invariants",
    "render_text",
    "rows_from_csv",
    "rows_to_csv",
    "walk_cycles",
]
