"""Automorphism group search by backtracking over generator images."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CapExceeded, TheoremViolation
from .table import GroupTable, Homomorphism, conjugacy_classes, element_orders, subgroup_closure

__all__ = [
    "DEFAULT_AUT_CAP",
    "Automorphism",
    "greedy_generating_sequence",
    "automorphism_group",
    "automorphism_images",
    "inner_automorphism_images",
]

DEFAULT_AUT_CAP = 1000


@dataclass(frozen=True)
class Automorphism(Homomorphism):
    """A bijective endomorphism; ``image`` is a permutation of the indices."""

    def check(self) -> None:
        super().check()
        if np.unique(self.image).size != self.source.order:
            raise TheoremViolation("automorphism is not bijective")


def greedy_generating_sequence(G: GroupTable) -> list[int]:
    """Repeatedly add the element that enlarges the closure most (ties: least index)."""
    gens: list[int] = []
    current = subgroup_closure(G, gens)
    while current.size < G.order:
        inside = np.zeros(G.order, dtype=bool)
        inside[current] = True
        best, best_size = -1, -1
        for x in np.flatnonzero(~inside):
            size = subgroup_closure(G, gens + [int(x)]).size
            if size > best_size:
                best, best_size = int(x), size
                if size == G.order:
                    break
        gens.append(best)
        current = subgroup_closure(G, gens)
    return gens


class _WordTree:
    """Spanning tree of the Cayley graph for a fixed generating sequence.

    Lets a tuple of generator images be extended to a full map level by
    level, then checked against every Cayley-graph edge.
    """

    def __init__(self, G: GroupTable, gens: list[int]):
        t = G.table.astype(np.int64)
        self.t = t
        self.gens = gens
        self.right = [t[:, g] for g in gens]
        depth = np.full(G.order, -1)
        parent = np.zeros(G.order, dtype=np.int64)
        via = np.zeros(G.order, dtype=np.int64)
        depth[0] = 0
        frontier = np.array([0])
        levels = []
        while frontier.size:
            nxt_nodes, nxt_par, nxt_via = [], [], []
            for k, r in enumerate(self.right):
                cand = r[frontier]
                fresh = depth[cand] < 0
                c = cand[fresh]
                c, first = np.unique(c, return_index=True)
                c_par = frontier[fresh][first]
                keep = depth[c] < 0
                c, c_par = c[keep], c_par[keep]
                depth[c] = len(levels) + 1
                parent[c] = c_par
                via[c] = k
                nxt_nodes.append(c)
                nxt_par.append(c_par)
                nxt_via.append(np.full(c.size, k))
            frontier = np.concatenate(nxt_nodes) if nxt_nodes else np.array([], dtype=np.int64)
            if frontier.size:
                levels.append((frontier, np.concatenate(nxt_par), np.concatenate(nxt_via)))
        if (depth < 0).any():
            raise ValueError("sequence does not generate the group")
        self.levels = levels

    def extend(self, images: list[int]) -> np.ndarray | None:
        t = self.t
        h = np.asarray(images, dtype=np.int64)
        phi = np.zeros(t.shape[0], dtype=np.int64)
        for nodes, par, via in self.levels:
            phi[nodes] = t[phi[par], h[via]]
        for k, r in enumerate(self.right):
            if not np.array_equal(phi[r], t[phi, h[k]]):
                return None
        if np.unique(phi).size != phi.size:
            return None
        return phi


def automorphism_images(G: GroupTable, cap: int = DEFAULT_AUT_CAP) -> np.ndarray:
    """All automorphisms of ``G`` as rows of an ``(|Aut|, |G|)`` image array.

    Rows are sorted lexicographically, so the identity comes first.
    """
    if G.order > cap:
        raise CapExceeded(f"automorphism search limited to order <= {cap}, got {G.order}")
    if G.order == 1:
        return np.zeros((1, 1), dtype=np.int64)
    gens = greedy_generating_sequence(G)
    orders = element_orders(G)
    class_size = np.zeros(G.order, dtype=np.int64)
    for cls in conjugacy_classes(G):
        class_size[cls] = cls.size
    candidates = [np.flatnonzero((orders == orders[g]) & (class_size == class_size[g])) for g in gens]
    tree = _WordTree(G, gens)
    found = []
    chosen: list[int] = []

    def backtrack(level):
        if level == len(gens):
            phi = tree.extend(chosen)
            if phi is not None:
                found.append(phi)
            return
        for h in candidates[level]:
            if int(h) in chosen:
                continue
            chosen.append(int(h))
            backtrack(level + 1)
            chosen.pop()

    backtrack(0)
    auts = np.array(found, dtype=np.int64)
    order = np.lexsort(auts.T[::-1])
    return auts[order]


def inner_automorphism_images(G: GroupTable) -> np.ndarray:
    """Row g is conjugation x -> g x g^-1."""
    t = G.table.astype(np.int64)
    inv = np.asarray(G.inv, dtype=np.int64)
    return t[t[:, :], inv[:, None]]


def _verify_group(G, auts, samples=4000, seed=0):
    n_aut = len(auts)
    keys = {row.tobytes() for row in auts}
    if len(keys) != n_aut:
        raise TheoremViolation("duplicate automorphisms", group=G.label)
    if auts[0].tobytes() != np.arange(G.order, dtype=np.int64).tobytes():
        raise TheoremViolation("identity automorphism missing", group=G.label)
    for row in inner_automorphism_images(G):
        if row.tobytes() not in keys:
            raise TheoremViolation("inner automorphism missing", group=G.label)
    if n_aut * n_aut <= 250_000:
        pairs = [(i, j) for i in range(n_aut) for j in range(n_aut)]
    else:
        rng = np.random.default_rng(seed)
        pairs = rng.integers(0, n_aut, size=(samples, 2)).tolist()
    for i, j in pairs:
        # (phi_j after phi_i)
        if auts[j][auts[i]].tobytes() not in keys:
            raise TheoremViolation("automorphism set not closed under composition", group=G.label)


def automorphism_group(G: GroupTable, cap: int = DEFAULT_AUT_CAP, verify: bool = True) -> list[Automorphism]:
    """The full automorphism group of ``G``, deterministically ordered."""
    auts = automorphism_images(G, cap)
    if verify:
        _verify_group(G, auts)
    return [Automorphism(G, G, row) for row in auts]
