"""Symmetry data of surface components under conjugation or automorphisms.

An action is given by a stack of element maps, one row per acting element:
for conjugation row ``g`` is ``a -> g a g^-1`` (so rows repeat when the
centre is nontrivial and counts are in group elements), for the
automorphism action the rows are the distinct automorphisms.  A row acts on
triangles by ``T(a, b) -> T(phi a, phi b)``.  Every stabilizer below is
counted in rows and divided by the pointwise kernel on the reference edge.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import AtlasError, TheoremViolation
from .group import GroupTable, automorphism_images, is_simple, subgroup_closure
from .surface import SurfaceComplex, format_symbol

__all__ = [
    "ShortcutNotApplicable",
    "ActionReport",
    "ElementAction",
    "conjugation_action",
    "automorphism_action",
    "conjugation_report",
    "automorphism_report",
    "component_report",
    "riemann_hurwitz",
    "simple_group_shortcut",
    "summarize_reports",
    "render_summary",
]


class ShortcutNotApplicable(AtlasError, ValueError):
    exit_code = 2


def riemann_hurwitz(order: int, genus: int, branch) -> Fraction:
    """Genus of ``S/Q`` for a ``|Q|``-fold cover of a genus ``g`` surface.

    ``branch`` lists the ramification index of each branch point.  Solves
    ``2 - 2g = |Q|(2 - 2h) - sum |Q|(1 - 1/e)`` for ``h`` exactly and
    refuses a non-integral answer.

    Examples
    --------
    >>> riemann_hurwitz(168, 3, (2, 3, 7))
    Fraction(0, 1)
    """
    if order < 1:
        raise ValueError("group order must be positive")
    Q = Fraction(order)
    defect = sum((Q - Q / e for e in branch), Fraction(0))
    h = 1 - (Fraction(2 - 2 * genus) + defect) / (2 * Q)
    if h.denominator != 1:
        raise TheoremViolation("Riemann-Hurwitz gives a non-integral quotient genus", order=order,
                               genus=genus, branch=tuple(branch), quotient_genus=str(h))
    return h


class ElementAction:
    """Rows of element images together with a row composition law."""

    def __init__(self, G: GroupTable, kind: str, rows: np.ndarray | None = None):
        self.G = G
        self.kind = kind
        self._rows = rows
        self._inner = None

    @property
    def size(self) -> int:
        return self.G.order if self._rows is None else len(self._rows)

    def images(self, a: int) -> np.ndarray:
        """Image of ``a`` under every row."""
        if self._rows is not None:
            return self._rows[:, a]
        t = self.G.table
        return t[t[:, a], np.asarray(self.G.inv)].astype(np.int64)

    def row(self, r: int) -> np.ndarray:
        if self._rows is not None:
            return self._rows[r]
        return self.row_of_conjugation(r)

    def inner_row(self, g: int) -> int:
        """Row acting as conjugation by ``g``."""
        if self._rows is None:
            return int(g)
        if self._inner is None:
            self._inner = {row.tobytes(): i for i, row in enumerate(self._rows)}
        return self._inner[self.row_of_conjugation(g).tobytes()]

    def row_of_conjugation(self, g: int) -> np.ndarray:
        t = self._table
        return t[t[g], int(self.G.inv[g])]

    @cached_property
    def _table(self):
        return self.G.table.astype(np.int64)

    def closure_size(self, gens) -> int:
        """Order of the group generated by the given rows.

        Conjugation rows are group elements, so the closure is taken in the
        group; automorphism rows are closed as maps.
        """
        if self._rows is None:
            return int(subgroup_closure(self.G, gens).size)
        maps = [self._rows[int(g)] for g in set(gens)]
        seen = {np.arange(self.G.order, dtype=np.int64).tobytes()}
        frontier = [np.arange(self.G.order, dtype=np.int64)]
        while frontier:
            nxt = []
            for f in frontier:
                for m in maps:
                    h = m[f]
                    key = h.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(h)
            frontier = nxt
        return len(seen)


def conjugation_action(G: GroupTable) -> ElementAction:
    return ElementAction(G, "conjugation")


def automorphism_action(G: GroupTable, cap: int | None = None) -> ElementAction:
    rows = automorphism_images(G) if cap is None else automorphism_images(G, cap)
    return ElementAction(G, "automorphism", rows)


@dataclass
class ActionReport:
    component: int
    kind: str
    genus: int
    symbol: str
    F: int
    E: int
    lambda_x: int
    lambda_y: int
    stabilizer_order: int
    kernel_order: int
    Q: int
    vertex_orbits: int
    edge_flip: bool
    Q_x: int
    Q_y: int
    Q_e: int
    Q_F: int
    branch: tuple
    quotient_genus: int
    hurwitz_bound: int | None
    hurwitz_ok: bool
    hurwitz_equality: bool
    generators: str
    orbit_size: int | None = None
    realized_order: int | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["branch"] = list(self.branch)
        return d


def _exact(num, den, what, **ctx):
    q, r = divmod(int(num), int(den))
    if r:
        raise TheoremViolation(f"{what} is not a multiple of the kernel order", **ctx)
    return q


def _cx_order(G: GroupTable, x: int, y: int) -> int:
    """Least k with x^k commuting with y: the order of conjugation by x on the edge."""
    t = G.table
    p, k = x, 1
    while not G.commute(p, y):
        p = int(t[p, x])
        k += 1
    return k


def component_report(cx: SurfaceComplex, c: int, action: ElementAction, realize_limit: int = 2_000_000,
                     orbits: bool = False) -> ActionReport:
    """Stabilizers, subquotient order and quotient data of component ``c``.

    Every guaranteed relation is asserted; a failure raises
    :class:`TheoremViolation` carrying the component and the offending values.
    """
    G = cx.group
    ref = int(cx.comp_reference[c])
    x, y = cx.pair(ref)
    rim_ref = int(cx.rim[ref])
    ctx = {"group": G.label, "component": c, "action": action.kind}
    ax = action.images(x)
    ay = action.images(y)
    img = cx.positions(ax, ay)
    if (img < 0).any():
        raise TheoremViolation("action maps a triangle to a commuting pair", **ctx)
    in_S = cx.comp[img] == c
    kernel = int(((ax == x) & (ay == y)).sum())
    GS = int(in_S.sum())
    Q = _exact(GS, kernel, "component stabilizer", **ctx)
    vx, vy = int(cx.vertex[ref]), int(cx.vertex[rim_ref])
    lam_x, lam_y = int(cx.valency[vx]), int(cx.valency[vy])
    Qx = _exact((cx.vertex[img] == vx).sum(), kernel, "vertex stabilizer", **ctx)
    Qy = _exact((cx.vertex[cx.rim[img]] == vy).sum(), kernel, "vertex stabilizer", **ctx)
    Qe = _exact(((img == ref) | (img == rim_ref)).sum(), kernel, "edge stabilizer", **ctx)
    QF = _exact((cx.face[img] == cx.face[ref]).sum(), kernel, "face stabilizer", **ctx)
    flip = bool((img == rim_ref).any())
    transitive = bool((cx.vertex[img] == vy).any())
    rotates = bool((img == cx.spoke_y[ref]).any())
    inv = cx.invariants(c, orbits=False)
    n, E, g = inv.n, inv.E, inv.genus
    ctx.update(symbol=inv.symbol, genus=g)

    if Qe > 2 or (Qe == 2) != flip:
        raise TheoremViolation("edge stabilizer is not generated by a flip", Q_e=Qe, **ctx)
    if transitive != flip:
        raise TheoremViolation("vertex transitivity and edge flips disagree", **ctx)
    if (Qx, Qy) != (lam_x, lam_y):
        raise TheoremViolation("vertex stabilizers differ from the valencies", Q_x=Qx, Q_y=Qy,
                               valencies=(lam_x, lam_y), **ctx)
    cyc = _cx_order(G, x, y), _cx_order(G, y, x)
    if cyc != (Qx, Qy):
        raise TheoremViolation("vertex stabilizers are not generated by the conjugations", orders=cyc, **ctx)
    if QF != (n if rotates else n // 2) or QF * 2 < n:
        raise TheoremViolation("face stabilizer order is neither n nor n/2", Q_F=QF, n=n, **ctx)
    vertex_orbits = 1 if transitive else 2
    if transitive:
        if not rotates:
            raise TheoremViolation("vertex-transitive component without a face rotation", **ctx)
        branch = (Qx, Qe, QF)
        expected_Q = 2 * E
    else:
        branch = (Qx, Qy, QF)
        expected_Q = E
    if Q != expected_Q:
        raise TheoremViolation("subquotient order is not E or 2E as the orbit count requires", Q=Q,
                               E=E, vertex_orbits=vertex_orbits, **ctx)
    h = riemann_hurwitz(Q, g, branch)
    if h != 0:
        raise TheoremViolation("quotient surface is not a sphere", quotient_genus=int(h), **ctx)

    # two generators: conjugation by x with conjugation by y or with an edge flip
    rows_S = np.flatnonzero(in_S)
    kern_rows = np.flatnonzero((ax == x) & (ay == y)).tolist()
    a = action.inner_row(x)
    if cx.vertex[img[a]] != vx:
        raise TheoremViolation("conjugation by x does not fix the x-vertex", **ctx)
    if transitive:
        b = int(rows_S[img[rows_S] == rim_ref][0])
        gen_label = "x-rotation, edge flip"
    else:
        b = action.inner_row(y)
        gen_label = "x-rotation, y-rotation"
    generated = action.closure_size([a, b] + kern_rows)
    if generated != GS:
        raise TheoremViolation("two generators do not produce the subquotient", generated=generated,
                               stabilizer=GS, **ctx)

    realized = None
    tris = cx.component_triangles(c)
    if rows_S.size * tris.size <= realize_limit:
        realized = _realized_order(cx, c, tris, action, rows_S)
        if realized != Q:
            raise TheoremViolation("induced permutation group order differs from |Q|", realized=realized, Q=Q,
                                   **ctx)

    bound = 84 * (g - 1) if g >= 2 else None
    ok = bound is None or Q <= bound
    if not ok:
        raise TheoremViolation("Hurwitz bound exceeded", Q=Q, bound=bound, **ctx)

    orbit_size = None
    if orbits:
        comps = np.unique(cx.comp[img])
        orbit_size = int(comps.size)
        if orbit_size * GS != action.size:
            raise TheoremViolation("orbit size does not match the stabilizer index", orbit=orbit_size, **ctx)
        keys = {cx.invariants(int(k), orbits=False).key for k in comps}
        if len(keys) != 1:
            raise TheoremViolation("components in one orbit have different invariants", **ctx)

    return ActionReport(
        component=c, kind=action.kind, genus=g, symbol=format_symbol(n, *inv.valencies), F=inv.F, E=E,
        lambda_x=lam_x, lambda_y=lam_y, stabilizer_order=GS, kernel_order=kernel, Q=Q,
        vertex_orbits=vertex_orbits, edge_flip=flip, Q_x=Qx, Q_y=Qy, Q_e=Qe, Q_F=QF, branch=branch,
        quotient_genus=int(h), hurwitz_bound=bound, hurwitz_ok=ok, hurwitz_equality=bound == Q,
        generators=gen_label, orbit_size=orbit_size, realized_order=realized,
    )


def _realized_order(cx, c, tris, action, rows_S) -> int:
    """Distinct permutations induced on the component's triangles."""
    local = np.full(cx.size, -1, dtype=np.int64)
    local[tris] = np.arange(tris.size)
    tx = cx.x[tris]
    ty = cx.y[tris]
    perms = np.empty((rows_S.size, tris.size), dtype=np.int64)
    for i, r in enumerate(rows_S):
        row = action.row(int(r))
        perms[i] = local[cx.positions(row[tx], row[ty])]
    if (perms < 0).any():
        raise TheoremViolation("stabilizing element moves triangles off the component", component=c)
    return int(np.unique(perms, axis=0).shape[0])


def conjugation_report(G_or_cx, c: int, **kw) -> ActionReport:
    cx = G_or_cx if isinstance(G_or_cx, SurfaceComplex) else SurfaceComplex(G_or_cx)
    return component_report(cx, c, conjugation_action(cx.group), **kw)


def automorphism_report(G_or_cx, c: int, action: ElementAction | None = None, **kw) -> ActionReport:
    cx = G_or_cx if isinstance(G_or_cx, SurfaceComplex) else SurfaceComplex(G_or_cx)
    action = action or automorphism_action(cx.group)
    kw.setdefault("orbits", True)
    return component_report(cx, c, action, **kw)


def simple_group_shortcut(cx: SurfaceComplex, c: int) -> int:
    """Subquotient order forced by simplicity when few components share a type.

    With ``k`` components of the same genus and cell structure and
    ``k! < |G|`` the stabilizer cannot be proper, so ``|Q| = |G|``.
    """
    G = cx.group
    if not is_simple(G):
        raise ShortcutNotApplicable(f"{G.label} is not simple")
    key = cx.invariants(c, orbits=False).key
    k = sum(1 for d in range(cx.n_components) if cx.invariants(d, orbits=False).key == key)
    if math.factorial(k) >= G.order:
        raise ShortcutNotApplicable(f"{k} components share this type and {k}! >= {G.order}")
    return G.order


def summarize_reports(reports) -> list[dict]:
    """Collapse reports of identical component type into counted rows."""
    rows: dict[tuple, dict] = {}
    for r in reports:
        key = (r.genus, r.F, r.symbol, r.Q, r.vertex_orbits, tuple(sorted(r.branch)), r.orbit_size)
        if key not in rows:
            margin = None if r.hurwitz_bound is None else r.hurwitz_bound - r.Q
            rows[key] = {"genus": r.genus, "F": r.F, "symbol": r.symbol, "E": r.E, "Q": r.Q,
                         "vertex_orbits": r.vertex_orbits, "branch": sorted(r.branch),
                         "quotient_genus": r.quotient_genus, "hurwitz_margin": margin,
                         "orbit_size": r.orbit_size, "count": 0, "components": []}
        rows[key]["count"] += 1
        rows[key]["components"].append(r.component)
    return sorted(rows.values(), key=lambda d: (d["genus"], d["F"], d["symbol"], d["Q"], d["vertex_orbits"]))


def render_summary(rows, title: str = "") -> str:
    header = ("Genus", "# Faces", "Symbol", "|Q|", "Orbits", "Branch", "Quot. genus", "Hurwitz margin", "Count")
    body = []
    for r in rows:
        margin = "-" if r["hurwitz_margin"] is None else str(r["hurwitz_margin"])
        if r["hurwitz_margin"] == 0:
            margin += " (equal)"
        body.append((str(r["genus"]), str(r["F"]), r["symbol"], str(r["Q"]), str(r["vertex_orbits"]),
                     "(" + ",".join(map(str, r["branch"])) + ")", str(r["quotient_genus"]), margin,
                     str(r["count"])))
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = [title] if title else []
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(b, widths)) for b in body]
    return "\n".join(lines) + "\n"
