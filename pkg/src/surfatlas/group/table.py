"""Finite groups as indexed element sets with Cayley tables.

Elements are indexed ``0 .. order-1`` with the identity at index 0.  Groups
whose order is at most ``table_cap`` carry a dense multiplication table;
larger groups multiply through their element representation on demand.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import CapExceeded, NotASubgroupError, NotNormalError, TheoremViolation

__all__ = [
    "DEFAULT_TABLE_CAP",
    "DEFAULT_MAX_ORDER",
    "GroupTable",
    "Homomorphism",
    "table_cap",
    "subgroup_closure",
    "centralizer",
    "center",
    "conjugacy_classes",
    "element_order",
    "element_orders",
    "exponent",
    "is_normal",
    "is_simple",
    "quotient",
]

DEFAULT_TABLE_CAP = 10_000
DEFAULT_MAX_ORDER = 50_000


def table_cap() -> int:
    """Dense-table cap, overridable through ``ATLAS_TABLE_CAP``."""
    raw = os.environ.get("ATLAS_TABLE_CAP")
    if raw is None:
        return DEFAULT_TABLE_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ATLAS_TABLE_CAP must be an integer, got {raw!r}") from None


def _index_dtype(order):
    return np.int16 if order <= np.iinfo(np.int16).max else np.int32


class GroupTable:
    """A finite group on the indices ``0 .. order-1``.

    Parameters
    ----------
    elements:
        Element representations, identity first.
    rep:
        Object providing ``mul``, ``inverse`` and ``name`` for ``elements``.
    mul:
        Dense ``(order, order)`` table or ``None`` for on-demand products.
    inv:
        Inverse of every index.
    label:
        Short descriptor used in reports (``"S4"``, ``"SL2(3)"`` ...).
    """

    def __init__(self, elements, rep, mul, inv, label="", names=None):
        self.elements = list(elements)
        self.rep = rep
        self.label = label
        self._mul = mul
        self.inv = np.asarray(inv)
        self.order = len(self.elements)
        self.names = list(names) if names is not None else [rep.name(e) for e in self.elements]
        if mul is not None:
            mul.setflags(write=False)
        self.inv.setflags(write=False)

    @classmethod
    def from_generators(cls, rep, generators, label="", cap=None, max_order=DEFAULT_MAX_ORDER):
        """Breadth-first closure of ``generators`` under right multiplication.

        Discovery order fixes the indexing: the identity first, then each
        dequeued element times every generator in the given order.
        """
        cap = table_cap() if cap is None else cap
        gens = list(generators)
        e = rep.identity()
        index = {e: 0}
        elements = [e]
        right = [[] for _ in gens]  # right[k][i] = index of elements[i] * gens[k]
        parent = [-1]
        parent_gen = [-1]
        head = 0
        while head < len(elements):
            a = elements[head]
            for k, g in enumerate(gens):
                b = rep.mul(a, g)
                j = index.get(b)
                if j is None:
                    j = len(elements)
                    if j >= max_order:
                        raise CapExceeded(f"closure of {label or 'generators'} exceeds {max_order} elements")
                    index[b] = j
                    elements.append(b)
                    parent.append(head)
                    parent_gen.append(k)
                right[k].append(j)
            head += 1
        order = len(elements)
        if order <= cap:
            mul = _dense_table(order, right, parent, parent_gen)
            inv = np.argmax(mul == 0, axis=1).astype(mul.dtype)
        else:
            mul = None
            inv = np.array([index[rep.inverse(a)] for a in elements], dtype=_index_dtype(order))
        group = cls(elements, rep, mul, inv, label=label)
        group._index = index
        return group

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self.elements)}

    @property
    def has_table(self) -> bool:
        return self._mul is not None

    @property
    def table(self) -> np.ndarray:
        """The dense Cayley table; raises when the group is above the cap."""
        if self._mul is None:
            raise CapExceeded(f"{self.label or 'group'} of order {self.order} has no dense table "
                              f"(table cap {table_cap()}); raise ATLAS_TABLE_CAP")
        return self._mul

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return int(self._mul[a, b])
        return self._index[self.rep.mul(self.elements[a], self.elements[b])]

    def index(self, element) -> int:
        return self._index[element]

    def index_of_name(self, name: str) -> int:
        return self._name_index[name]

    @cached_property
    def _name_index(self):
        return {n: i for i, n in enumerate(self.names)}

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), int(self.inv[g]))

    def commute(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def check_axioms(self, samples: int = 2000, seed: int = 0) -> None:
        """Associativity, identity and inverse axioms.

        Exhaustive for order <= 1000, otherwise ``samples`` random triples.
        """
        n = self.order
        t = self.table.astype(np.int64)
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise TheoremViolation("index 0 is not a two-sided identity", group=self.label)
        if not (np.all(t[ar, self.inv] == 0) and np.all(t[self.inv, ar] == 0)):
            raise TheoremViolation("inv is not a two-sided inverse", group=self.label)
        if n <= 1000:
            for a in range(n):
                # (a b) c == a (b c) for all b, c
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise TheoremViolation("multiplication is not associative", group=self.label, a=a)
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise TheoremViolation("multiplication is not associative", group=self.label)
        if len(set(self.names)) != n:
            raise TheoremViolation("element names are not distinct", group=self.label)

    def __repr__(self):
        return f"GroupTable({self.label or '?'}, order={self.order})"


def _dense_table(order, right, parent, parent_gen):
    dtype = _index_dtype(order)
    right = [np.asarray(r, dtype=dtype) for r in right]
    mul = np.empty((order, order), dtype=dtype)
    mul[:, 0] = np.arange(order, dtype=dtype)
    # column y = column parent(y), then right-multiplied by the generator
    for y in range(1, order):
        mul[:, y] = right[parent_gen[y]][mul[:, parent[y]]]
    return mul


@dataclass(frozen=True)
class Homomorphism:
    """A map of groups given by the image of every source index."""

    source: GroupTable
    target: GroupTable
    image: np.ndarray = field(repr=False)

    def __call__(self, a):
        return self.image[a]

    def check(self) -> None:
        """Exhaustive homomorphism check."""
        img = np.asarray(self.image, dtype=np.int64)
        if img[0] != 0:
            raise TheoremViolation("homomorphism does not fix the identity")
        s = self.source.table.astype(np.int64)
        t = self.target.table.astype(np.int64)
        if not np.array_equal(img[s], t[img[:, None], img[None, :]]):
            raise TheoremViolation("map does not respect multiplication")

    def kernel(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.image) == 0)

    def is_surjective(self) -> bool:
        return len(np.unique(self.image)) == self.target.order


def subgroup_closure(G: GroupTable, gens: Iterable[int]) -> np.ndarray:
    """Sorted indices of the subgroup generated by ``gens``."""
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    if gens.size == 0:
        return np.array([0])
    t = G.table
    frontier = np.array([0])
    while frontier.size:
        cand = t[np.ix_(frontier, gens)].ravel()
        cand = np.unique(cand[~mask[cand]])
        mask[cand] = True
        frontier = cand
    return np.flatnonzero(mask)


def centralizer(G: GroupTable, x: int) -> np.ndarray:
    t = G.table
    return np.flatnonzero(t[x, :] == t[:, x])


def center(G: GroupTable) -> np.ndarray:
    t = G.table
    return np.flatnonzero(np.all(t == t.T, axis=1))


def conjugacy_classes(G: GroupTable) -> list[np.ndarray]:
    """Classes in order of their least element."""
    t = G.table
    inv = np.asarray(G.inv)
    ar = np.arange(G.order)
    assigned = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if assigned[x]:
            continue
        cls = np.unique(t[t[inv, x], ar])
        assigned[cls] = True
        classes.append(cls)
    return classes


def element_order(G: GroupTable, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = G.mul(y, x)
        k += 1
    return k


def element_orders(G: GroupTable) -> np.ndarray:
    """Orders of all elements at once."""
    t = G.table
    orders = np.zeros(G.order, dtype=np.int64)
    ar = np.arange(G.order)
    power = ar.copy()
    k = 1
    while (orders == 0).any():
        orders[(power == 0) & (orders == 0)] = k
        power = t[power, ar]
        k += 1
    return orders


def exponent(G: GroupTable, S: Iterable[int] | None = None) -> int:
    """Least common multiple of the element orders in ``S`` (default: all)."""
    S = range(G.order) if S is None else [int(s) for s in S]
    return math.lcm(1, *(element_order(G, s) for s in S))


def _check_subgroup(G, N):
    N = np.unique(np.asarray(list(N), dtype=np.int64))
    if N.size == 0 or N[0] != 0:
        raise NotASubgroupError("subset does not contain the identity")
    closed = subgroup_closure(G, N)
    if closed.size != N.size:
        raise NotASubgroupError(f"subset of size {N.size} is not closed (closure has {closed.size})")
    return N


def is_normal(G: GroupTable, N: Iterable[int]) -> bool:
    N = np.asarray(list(N), dtype=np.int64)
    t = G.table
    mask = np.zeros(G.order, dtype=bool)
    mask[N] = True
    inv = np.asarray(G.inv)
    # g^-1 n g for every g (rows) and n (cols)
    conj = t[t[inv][:, N], np.arange(G.order)[:, None]]
    return bool(mask[conj].all())


def is_simple(G: GroupTable) -> bool:
    """True when the only normal subgroups are trivial and the whole group."""
    if G.order == 1:
        return False
    for cls in conjugacy_classes(G)[1:]:
        if subgroup_closure(G, cls).size != G.order:
            return False
    return True


class _CosetRep:
    """Names quotient elements after their least-index representative."""

    kind = "coset"

    def __init__(self, parent: GroupTable):
        self.parent = parent

    def name(self, rep: int) -> str:
        return f"{self.parent.names[rep]}N"


def quotient(G: GroupTable, N: Sequence[int], label: str = "") -> tuple[GroupTable, Homomorphism]:
    """``G/N`` with cosets indexed in order of least representative.

    Returns the quotient group and the projection.  Quotient elements are
    the least indices of their cosets in ``G``.
    """
    N = _check_subgroup(G, N)
    if not is_normal(G, N):
        raise NotNormalError(f"subgroup of order {N.size} is not normal in {G.label or 'group'}")
    t = G.table.astype(np.int64)
    cosets = t[:, N]  # row x is the coset xN
    reps = cosets.min(axis=1)
    uniq = np.unique(reps)  # sorted; identity coset first
    proj = np.searchsorted(uniq, reps)
    order = uniq.size
    dtype = _index_dtype(order)
    mul = proj[t[np.ix_(uniq, uniq)]].astype(dtype)
    inv = proj[np.asarray(G.inv)[uniq]].astype(dtype)
    rep = _CosetRep(G)
    Q = GroupTable([int(r) for r in uniq], rep, mul, inv, label=label or f"{G.label}/N")
    pi = Homomorphism(G, Q, proj.astype(np.int64))
    Q.representatives = uniq
    return Q, pi
