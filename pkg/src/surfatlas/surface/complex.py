"""The triangle complex of a finite group and its surface components.

A triangle is an ordered noncommuting pair ``(x, y)`` with corners
``(x,1)``, ``(y,1)`` and ``(xy,2)``.  Its three sides are glued as follows::

    rim      [(x,1),(y,1)]   ->  T(y, x)
    spoke_y  [(y,1),(xy,2)]  ->  T(y, y^-1 x y)
    spoke_x  [(x,1),(xy,2)]  ->  T(x y x^-1, x)

``spoke_x`` and ``spoke_y`` are mutually inverse and ``rim`` is an
involution.  Faces are the cycles of ``spoke_y`` (rotation about the
type-2 corner, whose label ``xy`` is constant along the walk); type-1
vertices are the cycles of ``spoke_y o rim`` (rotation about the first
corner).  Treating vertices as these cycles, rather than as group elements,
is what separates pinched sheets into a genuine surface.

Triangles are stored in increasing order of the dense key ``x*|G| + y``;
array positions into that order are called triangle positions below.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import TheoremViolation
from ..group import GroupTable

__all__ = [
    "SIDES",
    "AbelianGroupWarning",
    "TriangleSet",
    "ComponentInvariants",
    "SurfaceComponent",
    "SurfaceComplex",
    "enumerate_triangles",
    "adjacent",
    "format_symbol",
]

SIDES = ("rim", "spoke_y", "spoke_x")


class AbelianGroupWarning(UserWarning):
    """The group is abelian, so the complex has no triangles."""


@dataclass(frozen=True)
class TriangleSet:
    ids: np.ndarray
    x: np.ndarray
    y: np.ndarray
    empty_warning: bool

    def __len__(self):
        return int(self.ids.size)


def enumerate_triangles(G: GroupTable) -> TriangleSet:
    """All ordered pairs ``(x, y)`` with ``xy != yx``, by increasing key."""
    t = G.table
    ids = np.flatnonzero((t != t.T).ravel())
    x, y = np.divmod(ids, G.order)
    return TriangleSet(ids, x, y, ids.size == 0)


def adjacent(G: GroupTable, x: int, y: int, side: str) -> tuple[int, int]:
    """The triangle glued to ``T(x, y)`` across ``side``."""
    if side == "rim":
        return y, x
    if side == "spoke_y":
        return y, G.mul(G.mul(int(G.inv[y]), x), y)
    if side == "spoke_x":
        return G.conj(x, y), x
    raise ValueError(f"side must be one of {SIDES}, got {side!r}")


def format_symbol(n: int, lam1: int, lam2: int) -> str:
    if lam1 == lam2:
        return f"{{{n},{lam1}}}"
    return f"{{{n},{lam1}-{lam2}}}"


@dataclass(frozen=True)
class ComponentInvariants:
    genus: int
    n: int
    valencies: tuple[int, int]
    F: int
    V: int
    E: int
    vertex_orbit_count: int | None = None

    @property
    def equivar(self) -> bool:
        return self.valencies[0] == self.valencies[1]

    @property
    def symbol(self) -> str:
        return format_symbol(self.n, *self.valencies)

    @property
    def key(self) -> tuple:
        """Census grouping key."""
        return (self.genus, self.F, self.n, self.valencies[0], self.valencies[1], self.V, self.E)

    def describe(self) -> str:
        return f"{self.symbol}^{self.F} (genus {self.genus})"

    def as_dict(self) -> dict:
        lam = [self.valencies[0]] if self.equivar else list(self.valencies)
        d = {"genus": self.genus, "n": self.n, "lambda": lam, "F": self.F, "V": self.V, "E": self.E}
        if self.vertex_orbit_count is not None:
            d["vertex_orbits"] = self.vertex_orbit_count
        return d


@dataclass
class SurfaceComponent:
    """One connected surface.  ``reference`` is its least triangle position."""

    index: int
    reference: int
    complex: "SurfaceComplex"

    @property
    def triangles(self) -> np.ndarray:
        return self.complex.component_triangles(self.index)

    @property
    def reference_pair(self) -> tuple[int, int]:
        return self.complex.pair(self.reference)

    @cached_property
    def invariants(self) -> ComponentInvariants:
        return self.complex.invariants(self.index)

    def __repr__(self):
        return f"SurfaceComponent({self.index}, ref={self.reference_pair})"


def _cycle_labels(perm: np.ndarray) -> np.ndarray:
    """Label the cycles of a permutation by first occurrence."""
    n = perm.size
    if n == 0:
        return np.zeros(0, dtype=np.int32)
    g = coo_matrix((np.ones(n, dtype=np.int8), (np.arange(n), perm)), shape=(n, n)).tocsr()
    _, lab = connected_components(g, directed=True, connection="weak")
    return _relabel_by_first(lab)


def _relabel_by_first(lab: np.ndarray) -> np.ndarray:
    _, first = np.unique(lab, return_index=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty(order.size, dtype=np.int32)
    rank[order] = np.arange(order.size, dtype=np.int32)
    return rank[lab]


class SurfaceComplex:
    """The resolved complex of ``G``, decomposed into surface components.

    All per-triangle arrays are indexed by triangle position.  Components,
    faces and vertices are numbered in order of their least triangle
    position, so every label is deterministic.
    """

    def __init__(self, G: GroupTable, check: bool = True):
        self.group = G
        N = self.N = G.order
        tri = enumerate_triangles(G)
        if tri.empty_warning:
            warnings.warn(f"{G.label or 'group'} is abelian; the complex is empty", AbelianGroupWarning,
                          stacklevel=2)
        self.ids = tri.ids
        self.x = tri.x.astype(np.int32)
        self.y = tri.y.astype(np.int32)
        T = self.size = len(tri)
        pos = np.full(N * N, -1, dtype=np.int32)
        pos[tri.ids] = np.arange(T, dtype=np.int32)
        self._pos = pos
        t = G.table.astype(np.int64) if T else G.table
        inv = np.asarray(G.inv, dtype=np.int64)
        x = tri.x
        y = tri.y
        self.rim = pos[y * N + x]
        self.spoke_y = pos[y * N + t[t[inv[y], x], y]]
        self.spoke_x = pos[t[t[x, y], inv[x]] * N + x]
        if check:
            self._check_gluing()
        if T:
            adj = coo_matrix(
                (np.ones(2 * T, dtype=np.int8),
                 (np.concatenate([np.arange(T), np.arange(T)]), np.concatenate([self.rim, self.spoke_y]))),
                shape=(T, T),
            ).tocsr()
            _, lab = connected_components(adj, directed=True, connection="weak")
            self.comp = _relabel_by_first(lab)
        else:
            self.comp = np.zeros(0, dtype=np.int32)
        self.face = _cycle_labels(self.spoke_y)
        self.vertex = _cycle_labels(self.spoke_y[self.rim])
        self._aggregate()

    # -- construction helpers -------------------------------------------------

    def _check_gluing(self):
        T = self.size
        ar = np.arange(T)
        for side in SIDES:
            if (getattr(self, side) < 0).any():
                raise TheoremViolation(f"{side} gluing leaves the noncommuting pairs", group=self.group.label)
        if not np.array_equal(self.rim[self.rim], ar) or (self.rim == ar).any():
            raise TheoremViolation("rim gluing is not a fixed-point-free involution", group=self.group.label)
        if not np.array_equal(self.spoke_x[self.spoke_y], ar):
            raise TheoremViolation("spoke gluings are not mutually inverse", group=self.group.label)

    def _aggregate(self):
        T = self.size
        comp = self.comp.astype(np.int64)
        nc = self.n_components = int(comp.max()) + 1 if T else 0
        face_len = np.bincount(self.face)
        face_first = np.unique(self.face, return_index=True)[1]
        face_comp = comp[face_first]
        vert_len = np.bincount(self.vertex)
        vert_first = np.unique(self.vertex, return_index=True)[1]
        vert_comp = comp[vert_first]
        self.face_length = face_len
        self.valency = vert_len
        self.face_component = face_comp
        self.vertex_component = vert_comp

        size = np.bincount(comp, minlength=nc)
        F = np.bincount(face_comp, minlength=nc)
        V = np.bincount(vert_comp, minlength=nc)
        n_min = np.full(nc, np.iinfo(np.int64).max)
        n_max = np.zeros(nc, dtype=np.int64)
        np.minimum.at(n_min, face_comp, face_len)
        np.maximum.at(n_max, face_comp, face_len)
        pairs = np.unique(vert_comp * (T + 1) + vert_len)
        pc, pv = np.divmod(pairs, T + 1)
        n_val = np.bincount(pc, minlength=nc)
        l_min = np.full(nc, np.iinfo(np.int64).max)
        l_max = np.zeros(nc, dtype=np.int64)
        np.minimum.at(l_min, pc, pv)
        np.maximum.at(l_max, pc, pv)
        E, odd = np.divmod(size, 2)
        chi = V - E + F

        bad = np.flatnonzero(odd)
        if bad.size:
            raise TheoremViolation("component with an odd number of triangles", group=self.group.label,
                                   component=int(bad[0]))
        bad = np.flatnonzero(n_min != n_max)
        if bad.size:
            c = int(bad[0])
            raise TheoremViolation("unequal face sizes in a component", group=self.group.label, component=c,
                                   sizes=(int(n_min[c]), int(n_max[c])))
        bad = np.flatnonzero(n_val > 2)
        if bad.size:
            c = int(bad[0])
            raise TheoremViolation("more than two valencies in a component", group=self.group.label,
                                   component=c, count=int(n_val[c]))
        bad = np.flatnonzero((chi % 2 != 0) | (chi > 2))
        if bad.size:
            c = int(bad[0])
            raise TheoremViolation("Euler characteristic gives no nonnegative integral genus",
                                   group=self.group.label, component=c, chi=int(chi[c]))
        self.comp_size = size
        self.comp_F = F
        self.comp_V = V
        self.comp_E = E
        self.comp_n = n_min
        self.comp_lambda = np.stack([l_min, l_max], axis=1)
        self.comp_genus = (2 - chi) // 2
        # least position of each component, ordered by construction of the labels
        self.comp_reference = np.unique(comp, return_index=True)[1]

    # -- lookups --------------------------------------------------------------

    def position(self, x: int, y: int) -> int:
        """Triangle position of ``T(x, y)``, or -1 if the pair commutes."""
        return int(self._pos[x * self.N + y])

    def positions(self, x, y) -> np.ndarray:
        return self._pos[np.asarray(x, dtype=np.int64) * self.N + np.asarray(y, dtype=np.int64)]

    def pair(self, p: int) -> tuple[int, int]:
        return int(self.x[p]), int(self.y[p])

    def triangle_id(self, p: int) -> int:
        return int(self.ids[p])

    def component_of(self, x: int, y: int) -> int:
        p = self.position(x, y)
        if p < 0:
            raise ValueError(f"pair ({x}, {y}) commutes and spans no triangle")
        return int(self.comp[p])

    @cached_property
    def _component_order(self):
        order = np.argsort(self.comp, kind="stable")
        bounds = np.concatenate([[0], np.cumsum(self.comp_size)])
        return order, bounds

    def component_triangles(self, c: int) -> np.ndarray:
        order, bounds = self._component_order
        return order[bounds[c]:bounds[c + 1]]

    def components(self) -> list[SurfaceComponent]:
        return [SurfaceComponent(c, int(self.comp_reference[c]), self) for c in range(self.n_components)]

    def component(self, c: int) -> SurfaceComponent:
        if not 0 <= c < self.n_components:
            raise IndexError(f"component {c} out of range 0..{self.n_components - 1}")
        return SurfaceComponent(c, int(self.comp_reference[c]), self)

    # -- invariants -----------------------------------------------------------

    def first_vertex(self, p):
        """Vertex (cycle id) at the first corner of triangle ``p``."""
        return self.vertex[p]

    def second_vertex(self, p):
        return self.vertex[self.rim[p]]

    def vertex_orbit_count(self, c: int) -> int:
        """Orbits of the conjugation action on the type-1 vertices of component ``c``.

        Two orbits unless some ``g`` carries the reference vertex ``(x,1)``
        onto the reference vertex ``(y,1)`` of the same component.
        """
        G = self.group
        ref = int(self.comp_reference[c])
        x, y = self.pair(ref)
        t = G.table
        inv = np.asarray(G.inv)
        g = np.arange(self.N)
        cand = g[t[t[g, x], inv] == y]
        if cand.size == 0:
            return 2
        images = self.positions(y, t[t[cand, y], inv[cand]])
        return 1 if (self.vertex[images] == self.vertex[self.rim[ref]]).any() else 2

    def invariants(self, c: int, orbits: bool = True) -> ComponentInvariants:
        lam = self.comp_lambda[c]
        return ComponentInvariants(
            genus=int(self.comp_genus[c]),
            n=int(self.comp_n[c]),
            valencies=(int(lam[0]), int(lam[1])),
            F=int(self.comp_F[c]),
            V=int(self.comp_V[c]),
            E=int(self.comp_E[c]),
            vertex_orbit_count=self.vertex_orbit_count(c) if orbits else None,
        )

    def orientation_check(self, c: int | None = None) -> bool:
        """Audit that glued sides are traversed in opposite directions.

        Each triangle is oriented ``(x,1) -> (y,1) -> (xy,2)``.  Type-1
        vertices are cycle ids; type-2 vertices are face ids offset past
        them.  For every glued pair of sides the endpoints must agree with
        reversed direction, and the directed-edge multiset must be balanced.
        """
        tris = np.arange(self.size) if c is None else self.component_triangles(c)
        if tris.size == 0:
            return True
        nv = int(self.vertex.max()) + 1
        a = self.vertex[tris].astype(np.int64)
        b = self.vertex[self.rim[tris]].astype(np.int64)
        f = self.face[tris].astype(np.int64) + nv
        r = self.rim[tris]
        sy = self.spoke_y[tris]
        sx = self.spoke_x[tris]
        # rim side a->b must appear as b->a in the rim partner
        ok = (self.vertex[r] == b) & (self.vertex[self.rim[r]] == a)
        # spoke side b->f is the partner's f->(first corner)
        ok &= (self.vertex[sy] == b) & (self.face[sy] + nv == f)
        # spoke side f->a is the partner's (second corner)->f
        ok &= (self.vertex[self.rim[sx]] == a) & (self.face[sx] + nv == f)
        if not ok.all():
            return False
        tails = np.concatenate([a, b, f])
        heads = np.concatenate([b, f, a])
        width = nv + int(self.face.max()) + 1
        fwd = np.sort(tails * width + heads)
        rev = np.sort(heads * width + tails)
        return bool(np.array_equal(fwd, rev))

    def __repr__(self):
        return f"SurfaceComplex({self.group.label}, triangles={self.size}, components={self.n_components})"
