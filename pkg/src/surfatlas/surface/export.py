"""Self-contained JSON documents for single components.

Adjacency lists index into the document's own ``triangles`` list, so a
document can be re-verified without the group it came from.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .complex import ComponentInvariants, SurfaceComplex

__all__ = ["export_complex", "recompute_invariants", "export_schema", "walk_cycles"]


def walk_cycles(perm) -> list[list[int]]:
    """Cycles of a permutation given as a list, each starting at its least element."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        cycles.append(cyc)
    return cycles


def export_complex(cx: SurfaceComplex, c: int) -> dict:
    """JSON-ready document for component ``c``.

    ``faces`` lists triangle indices in rotation order about each face
    centre; ``vertices`` lists, for each type-1 vertex, the triangles having
    it as first corner in rotation order.
    """
    G = cx.group
    tris = cx.component_triangles(c)
    local = np.full(cx.size, -1, dtype=np.int64)
    local[tris] = np.arange(tris.size)
    rim = local[cx.rim[tris]].tolist()
    sy = local[cx.spoke_y[tris]].tolist()
    sx = local[cx.spoke_x[tris]].tolist()
    sigma = [sy[r] for r in rim]
    inv = cx.invariants(c)
    triangles = []
    for p in tris.tolist():
        x, y = cx.pair(p)
        triangles.append({"x": x, "y": y, "x_name": G.names[x], "y_name": G.names[y]})
    return {
        "group": G.label,
        "component_id": int(c),
        "triangles": triangles,
        "rim": rim,
        "spoke_x": sx,
        "spoke_y": sy,
        "faces": walk_cycles(sy),
        "vertices": walk_cycles(sigma),
        "invariants": inv.as_dict(),
    }


def recompute_invariants(doc: dict) -> ComponentInvariants:
    """Rebuild invariants from a document's adjacency lists alone.

    Checks that the gluings are involutive and consistent before counting.
    """
    rim, sy, sx = doc["rim"], doc["spoke_y"], doc["spoke_x"]
    T = len(doc["triangles"])
    if not (len(rim) == len(sy) == len(sx) == T):
        raise ValueError("adjacency lists do not match the triangle count")
    for i in range(T):
        if rim[rim[i]] != i or rim[i] == i:
            raise ValueError(f"rim is not an involution at triangle {i}")
        if sx[sy[i]] != i:
            raise ValueError(f"spoke_x does not undo spoke_y at triangle {i}")
    faces = walk_cycles(sy)
    verts = walk_cycles([sy[r] for r in rim])
    sizes = {len(f) for f in faces}
    vals = sorted({len(v) for v in verts})
    if len(sizes) != 1 or len(vals) > 2:
        raise ValueError("document violates face-size or valency constraints")
    E = T // 2
    chi = len(verts) - E + len(faces)
    lam = (vals[0], vals[-1])
    return ComponentInvariants(genus=(2 - chi) // 2, n=sizes.pop(), valencies=lam, F=len(faces),
                               V=len(verts), E=E)


def export_schema() -> dict:
    return json.loads(resources.files("surfatlas.schema").joinpath("component.schema.json").read_text())
