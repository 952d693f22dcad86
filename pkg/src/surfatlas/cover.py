"""Branched covers between complexes induced by a group extension.

For ``1 -> N -> Gamma -> G -> 1`` every base component ``S`` of the complex
of ``G`` with reference edge ``(x, y)`` has ``|N|^2`` lifted edges
``(x^ n1, y^ n2)`` in the complex of ``Gamma``.  The lift components they
land in, with their multiplicities and ramification indices, are computed
here and every relation the covering structure forces is asserted.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import AtlasError, TheoremViolation
from .group import GroupTable, center, element_order, exponent, quotient, subgroup_closure
from .surface import SurfaceComplex, format_symbol

__all__ = [
    "NotCentralError",
    "LiftRecord",
    "BaseCover",
    "CoverReport",
    "analyze_cover",
    "analyze_central_cover",
    "monodromy",
    "render_diagram",
]


class NotCentralError(AtlasError, ValueError):
    exit_code = 2


@dataclass
class LiftRecord:
    component: int
    genus: int
    n: int
    valencies: tuple
    F: int
    V: int
    E: int
    m: int
    l: int
    lx: int
    ly: int
    monodromy: str | None = None
    monodromy_order: int | None = None

    @property
    def t(self) -> int:
        return self.m // self.l

    @property
    def triple(self) -> tuple:
        return (self.l, self.lx, self.ly)

    @property
    def symbol(self) -> str:
        return format_symbol(self.n, *self.valencies)

    @property
    def signature(self) -> tuple:
        """Everything that identifies a lift up to isomorphism over the base."""
        return (self.genus, self.n, self.valencies, self.F, self.V, self.E, self.m, self.triple)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["valencies"] = list(self.valencies)
        d["symbol"] = self.symbol
        d["t"] = self.t
        return d


@dataclass
class BaseCover:
    component: int
    reference: tuple
    genus: int
    n: int
    valencies: tuple
    F: int
    V: int
    E: int
    vertex_orbits: int
    lifts: list
    groupings: list | None = None

    @property
    def symbol(self) -> str:
        return format_symbol(self.n, *self.valencies)

    def as_dict(self) -> dict:
        return {
            "component": self.component,
            "reference": list(self.reference),
            "symbol": self.symbol,
            "genus": self.genus,
            "F": self.F,
            "V": self.V,
            "E": self.E,
            "vertex_orbits": self.vertex_orbits,
            "lifts": [r.as_dict() for r in self.lifts],
            "sum_m": sum(r.m for r in self.lifts),
            "groupings": self.groupings,
        }


@dataclass
class CoverReport:
    gamma: str
    base: str
    kernel_order: int
    central: bool
    kernel_exponent: int | None
    bases: list
    uncovered: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "base": self.base,
            "kernel_order": self.kernel_order,
            "central": self.central,
            "kernel_exponent": self.kernel_exponent,
            "bases": [b.as_dict() for b in self.bases],
            "uncovered_components": len(self.uncovered),
        }

    def lift_multiset(self, base: int) -> Counter:
        """``(m, l, lx, ly)`` multiset over one base component."""
        return Counter((r.m, *r.triple) for r in self.bases[base].lifts)


def _lift_pairs(Gam: GroupTable, N: np.ndarray, xh: int, yh: int):
    t = Gam.table.astype(np.int64)
    a = t[xh, N]
    b = t[yh, N]
    return np.repeat(a, N.size), np.tile(b, N.size)


def _vertex_map(cxT: SurfaceComplex, cxS: SurfaceComplex, T: int, proj: np.ndarray, ctx):
    """Map from vertex ids of lift ``T`` to vertex ids of its base; checked well defined."""
    tris = cxT.component_triangles(T)
    img = cxS.positions(proj[cxT.x[tris]], proj[cxT.y[tris]])
    if (img < 0).any():
        raise TheoremViolation("lift triangle projects to a commuting pair", **ctx)
    wT = cxT.vertex[tris]
    vS = cxS.vertex[img]
    order = np.argsort(wT, kind="stable")
    w_sorted, v_sorted = wT[order], vS[order]
    first = np.flatnonzero(np.r_[True, w_sorted[1:] != w_sorted[:-1]])
    counts = np.diff(np.r_[first, w_sorted.size])
    if not np.array_equal(np.repeat(v_sorted[first], counts), v_sorted):
        raise TheoremViolation("vertex map of the cover is not well defined", **ctx)
    return w_sorted[first], v_sorted[first], img


def analyze_cover(Gam: GroupTable, N, cxGam: SurfaceComplex | None = None, central: bool = False,
                  lift_choice=None) -> CoverReport:
    """Lift every component of the quotient complex to the complex of ``Gam``.

    Parameters
    ----------
    Gam : GroupTable
        The extension group.
    N : index set
        A normal subgroup of ``Gam``.
    cxGam : SurfaceComplex, optional
        Reuse an already built complex of ``Gam``.
    central : bool
        Also run the central-extension checks and monodromy walks; ``N``
        must then lie in the centre.
    lift_choice : callable, optional
        ``lift_choice(coset_members) -> index`` picks the lift of each base
        element; defaults to the least index.
    """
    N = subgroup_closure(Gam, N)
    if central:
        Z = set(center(Gam).tolist())
        if not set(N.tolist()) <= Z:
            raise NotCentralError(f"subgroup of order {N.size} is not central in {Gam.label}")
    G, pi = quotient(Gam, N, label=f"{Gam.label}/N")
    if G.is_abelian():
        raise ValueError(f"quotient {G.label} is abelian, so there are no base components")
    proj = np.asarray(pi.image, dtype=np.int64)
    cxS = SurfaceComplex(G)
    cxT = cxGam if cxGam is not None else SurfaceComplex(Gam)
    nN = int(N.size)
    expC = exponent(Gam, N) if central else None
    reps = np.asarray(G.representatives, dtype=np.int64)
    owner = np.full(cxT.n_components, -1, dtype=np.int64)
    bases = []
    for c in range(cxS.n_components):
        invS = cxS.invariants(c)
        ref = _oriented_reference(cxS, c, invS.vertex_orbit_count)
        x, y = cxS.pair(ref)
        if lift_choice is None:
            xh, yh = int(reps[x]), int(reps[y])
        else:
            xh = int(lift_choice(np.flatnonzero(proj == x)))
            yh = int(lift_choice(np.flatnonzero(proj == y)))
        ctx = {"gamma": Gam.label, "base": c}
        a, b = _lift_pairs(Gam, N, xh, yh)
        pos = cxT.positions(a, b)
        if (pos < 0).any():
            raise TheoremViolation("a lift of a noncommuting pair commutes", **ctx)
        comps = cxT.comp[pos]
        vx, vy = int(cxS.vertex[ref]), int(cxS.vertex[cxS.rim[ref]])
        lam_x, lam_y = int(cxS.valency[vx]), int(cxS.valency[vy])
        x_class = _x_class_vertices(cxS, c, ref) if invS.vertex_orbit_count == 2 else None
        lifts = []
        for T in np.unique(comps):
            T = int(T)
            sel = comps == T
            m = int(sel.sum())
            if owner[T] not in (-1, c):
                raise TheoremViolation("lift component lies over two base components", lift=T,
                                       other=int(owner[T]), **ctx)
            owner[T] = c
            lctx = dict(ctx, lift=T)
            invT = cxT.invariants(T, orbits=False)
            l, r = divmod(invT.n, invS.n)
            lx_all = cxT.valency[cxT.vertex[pos[sel]]]
            ly_all = cxT.valency[cxT.vertex[cxT.rim[pos[sel]]]]
            if r or (lx_all % lam_x).any() or (ly_all % lam_y).any():
                raise TheoremViolation("lift symbol is not a multiple of the base symbol", **lctx)
            seen = set(zip((lx_all // lam_x).tolist(), (ly_all // lam_y).tolist()))
            lx, ly = min(seen)
            # over a vertex-transitive base the flip lifts, so both orders occur
            allowed = {(lx, ly)} if x_class is not None else {(lx, ly), (ly, lx)}
            if not seen <= allowed:
                raise TheoremViolation("lifted reference vertices disagree on ramification",
                                       pairs=sorted(seen), **lctx)
            sel_ref = pos[sel][(lx_all // lam_x == lx) & (ly_all // lam_y == ly)][0]
            rec = LiftRecord(T, invT.genus, invT.n, invT.valencies, invT.F, invT.V, invT.E, m, l, lx, ly)
            _check_lift(cxT, cxS, c, T, rec, invS, x_class, proj, lctx)
            if central:
                cvec, order = monodromy(cxT, Gam, int(sel_ref), invS.n, set(N.tolist()))
                if order != l:
                    raise TheoremViolation("monodromy order differs from face ramification", order=order,
                                           l=l, **lctx)
                rec.monodromy, rec.monodromy_order = Gam.names[cvec], order
                for e in (l, lx, ly):
                    if expC % e:
                        raise TheoremViolation("ramification index does not divide exp(C)", index=e,
                                               exponent=expC, **lctx)
            lifts.append(rec)
        if sum(r.m for r in lifts) != nN * nN:
            raise TheoremViolation("lift multiplicities do not sum to |N|^2", **ctx)
        base = BaseCover(c, (G.names[x], G.names[y]), invS.genus, invS.n, invS.valencies, invS.F, invS.V,
                         invS.E, invS.vertex_orbit_count, lifts)
        if central:
            base.groupings = _central_groupings(base, comps, Gam, N, ctx)
        bases.append(base)

    uncovered = []
    for T in np.flatnonzero(owner < 0).tolist():
        rx, ry = cxT.pair(int(cxT.comp_reference[T]))
        if not G.commute(int(proj[rx]), int(proj[ry])):
            raise TheoremViolation("component over a noncommuting pair is missing from every lift list",
                                   gamma=Gam.label, lift=T)
        uncovered.append(T)
    return CoverReport(Gam.label, G.label, nN, central, expC, bases, uncovered)


def analyze_central_cover(Gam: GroupTable, C, cxGam: SurfaceComplex | None = None, **kw) -> CoverReport:
    return analyze_cover(Gam, C, cxGam=cxGam, central=True, **kw)


def _oriented_reference(cxS: SurfaceComplex, c: int, orbits: int) -> int:
    """Reference triangle of a base component, put first at the larger valency.

    With two vertex orbits the labels x and y name different vertex classes;
    the reference edge is oriented so that x sits at the larger valency.
    Otherwise the least triangle is kept.
    """
    ref = int(cxS.comp_reference[c])
    rim = int(cxS.rim[ref])
    if orbits == 2 and cxS.valency[cxS.vertex[ref]] < cxS.valency[cxS.vertex[rim]]:
        return rim
    return ref


def _x_class_vertices(cxS: SurfaceComplex, c: int, ref: int) -> np.ndarray:
    """Vertex ids in the conjugation orbit of the reference first corner."""
    G = cxS.group
    x, y = cxS.pair(ref)
    t = G.table
    inv = np.asarray(G.inv)
    g = np.arange(G.order)
    img = cxS.positions(t[t[g, x], inv], t[t[g, y], inv])
    img = img[cxS.comp[img] == c]
    return np.unique(cxS.vertex[img])


def _check_lift(cxT, cxS, c, T, rec: LiftRecord, invS, x_class, proj, ctx):
    m, l, lx, ly = rec.m, rec.l, rec.lx, rec.ly
    for name, e in (("l", l), ("lx", lx), ("ly", ly)):
        if m % e:
            raise TheoremViolation(f"ramification index {name} does not divide m", m=m, index=e, **ctx)
    if rec.E != m * invS.E:
        raise TheoremViolation("edge count is not m times the base", **ctx)
    if rec.F * l != m * invS.F:
        raise TheoremViolation("face count is not (m/l) times the base", **ctx)
    if rec.n != invS.n * l:
        raise TheoremViolation("face size is not l times the base", **ctx)
    wT, vS, img = _vertex_map(cxT, cxS, T, proj, ctx)
    if (cxS.comp[img] != c).any():
        raise TheoremViolation("lift does not project onto its base component", **ctx)
    ram, rem = np.divmod(cxT.valency[wT], cxS.valency[vS])
    if rem.any():
        raise TheoremViolation("lift valency is not a multiple of the base valency", **ctx)
    # local degree summed over the preimages of each base vertex is m
    deg = np.bincount(vS, weights=ram, minlength=int(cxS.vertex.max()) + 1)
    base_vertices = np.flatnonzero(cxS.vertex_component == c)
    if not np.all(deg[base_vertices] == m):
        raise TheoremViolation("cover degree differs between base vertices", **ctx)
    if not set(np.unique(ram).tolist()) <= {lx, ly}:
        raise TheoremViolation("vertex ramification outside {lx, ly}", **ctx)
    lams = sorted({int(cxT.valency[w]) for w in wT})
    if len(lams) > 2:
        raise TheoremViolation("lift has more than two valencies", **ctx)
    if x_class is not None:
        over_x = np.isin(vS, x_class)
        V1, V2 = x_class.size, invS.V - x_class.size
        if not (ram[over_x] == lx).all() or not (ram[~over_x] == ly).all():
            raise TheoremViolation("ramification differs within a vertex orbit", **ctx)
        if over_x.sum() * lx != m * V1 or (~over_x).sum() * ly != m * V2:
            raise TheoremViolation("vertex counts violate V1' = (m/lx) V1, V2' = (m/ly) V2", **ctx)
    elif lx == ly and wT.size * lx != m * invS.V:
        raise TheoremViolation("vertex count violates V' = (m/lx) V", **ctx)


def monodromy(cxT: SurfaceComplex, Gam: GroupTable, start: int, n: int, C: set | None = None):
    """Central element reached after ``n`` face-rotation steps from ``start``.

    The landing triangle is ``T(a c, b c^-1)`` for the starting ``T(a, b)``;
    returns ``c`` and its order.
    """
    p = start
    for _ in range(n):
        p = int(cxT.spoke_y[p])
    a, b = cxT.pair(start)
    a2, b2 = cxT.pair(p)
    c = Gam.mul(int(Gam.inv[a]), a2)
    if C is not None and c not in C:
        raise TheoremViolation("monodromy element is not central", gamma=Gam.label, element=Gam.names[c])
    if Gam.mul(b, int(Gam.inv[c])) != b2:
        raise TheoremViolation("landing triangle is not of the form T(ac, bc^-1)", gamma=Gam.label)
    return c, element_order(Gam, c)


def _central_groupings(base: BaseCover, comps: np.ndarray, Gam: GroupTable, N: np.ndarray, ctx) -> list:
    """Central-twist checks for one base component.

    Two vertex orbits: all lifts agree and ``m k = |C|^2``.  One orbit: the
    lift pairs ``(x^ c1, y^ c2)`` with a fixed difference ``c1^-1 c2`` are
    permuted by the diagonal twists, so each difference class is one
    grouping, and each grouping satisfies ``m_i k_i = |C|``.
    """
    nC = int(N.size)
    lifts = {r.component: r for r in base.lifts}
    if base.vertex_orbits == 2:
        if len({r.signature for r in base.lifts}) != 1:
            raise TheoremViolation("lifts over a two-orbit base differ", **ctx)
        m, k = base.lifts[0].m, len(base.lifts)
        if m * k != nC * nC:
            raise TheoremViolation("m k != |C|^2", m=m, k=k, **ctx)
        return [{"difference": None, "components": sorted(lifts), "m": m, "k": k}]
    t = Gam.table.astype(np.int64)
    inv = np.asarray(Gam.inv, dtype=np.int64)
    diff = t[inv[N][:, None], N[None, :]].ravel()
    out = []
    seen: set = set()
    for d in np.unique(diff):
        members = Counter(comps[diff == d].tolist())
        if len({lifts[T].signature for T in members}) != 1:
            raise TheoremViolation("grouping contains lifts of different type", **ctx)
        ms = set(members.values())
        m = lifts[next(iter(members))].m
        if ms != {m}:
            raise TheoremViolation("grouping does not carry whole lifts", **ctx)
        k = len(members)
        if m * k != nC:
            raise TheoremViolation("m_i k_i != |C| in a grouping", m=m, k=k, **ctx)
        if seen & set(members):
            raise TheoremViolation("groupings share a component", **ctx)
        seen |= set(members)
        out.append({"difference": Gam.names[int(d)], "components": sorted(members), "m": m, "k": k})
    if len(out) != nC:
        raise TheoremViolation("number of groupings differs from |C|", groupings=len(out), **ctx)
    return out


def render_diagram(report: CoverReport) -> str:
    """Arrow diagram per base component, identical lifts collapsed."""
    lines = [f"{report.gamma} -> {report.base}  (|N| = {report.kernel_order}"
             + (f", central, exp = {report.kernel_exponent})" if report.central else ")")]
    for b in report.bases:
        lines.append("")
        head = f"{b.symbol}^{b.F}"
        lines.append(f"base {b.component}: {head}  genus {b.genus}, reference ({b.reference[0]}, {b.reference[1]}), "
                     f"{b.vertex_orbits} vertex orbit{'s' if b.vertex_orbits == 2 else ''}")
        groups = Counter()
        for r in b.lifts:
            groups[(r.genus, r.symbol, r.F, r.triple, r.m, r.monodromy_order)] += 1
        rows = []
        for (g, sym, F, tr, m, mo), k in sorted(groups.items(), key=lambda kv: (-kv[0][4], kv[0][1], kv[0][2])):
            left = f"{sym}^{F}" + (f" x{k}" if k > 1 else "")
            arrow = f"--({tr[0]},{tr[1]},{tr[2]}) m={m}-->"
            rows.append((left, arrow, f"genus {g}" + (f", monodromy order {mo}" if mo else "")))
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        for left, arrow, tail in rows:
            lines.append(f"  {left.ljust(w0)}  {arrow.ljust(w1)}  {head}   [{tail}]")
        lines.append(f"  sum m = {sum(r.m for r in b.lifts)} = |N|^2")
        if b.groupings and b.vertex_orbits == 1:
            lines.append(f"  groupings: {len(b.groupings)} (m_i k_i = {report.kernel_order})")
    lines.append("")
    lines.append(f"components over commuting pairs: {len(report.uncovered)}")
    return "\n".join(lines) + "\n"
