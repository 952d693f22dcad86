"""Structural invariants on randomly generated groups."""

from fractions import Fraction

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import complex_of, group
from surfatlas.actions import component_report, conjugation_action
from surfatlas.cover import analyze_cover
from surfatlas.group import (
    GroupTable,
    center,
    conjugacy_classes,
    format_cycles,
    is_normal,
    quotient,
    subgroup_closure,
)
from surfatlas.group.elements import PermutationRep
from surfatlas.surface import SurfaceComplex

perm5 = st.permutations(range(5)).map(tuple)


def _group_from(gens):
    return GroupTable.from_generators(PermutationRep(5), list(gens), label="random")


@settings(max_examples=25, deadline=None)
@given(st.lists(perm5, min_size=1, max_size=3))
def test_random_group_axioms(gens):
    G = _group_from(gens)
    G.check_axioms(samples=300)
    assert G.elements[0] == tuple(range(5))
    assert len(set(G.names)) == G.order
    assert all(G.names[i] == format_cycles(G.elements[i]) for i in range(G.order))


@settings(max_examples=25, deadline=None)
@given(st.lists(perm5, min_size=2, max_size=3))
def test_random_complex_invariants(gens):
    G = _group_from(gens)
    assume(not G.is_abelian())
    cx = SurfaceComplex(G)
    ar = np.arange(cx.size)
    assert cx.size == G.order * (G.order - len(conjugacy_classes(G)))
    assert np.array_equal(cx.rim[cx.rim], ar)
    assert np.array_equal(cx.spoke_x[cx.spoke_y], ar)
    assert cx.orientation_check()
    for c in range(cx.n_components):
        inv = cx.invariants(c, orbits=False)
        assert 2 * inv.E == inv.n * inv.F
        l1, l2 = inv.valencies
        chi = inv.E * (Fraction(1, l1) + Fraction(1, l2) + Fraction(2, inv.n) - 1)
        assert chi == 2 - 2 * inv.genus


@settings(max_examples=15, deadline=None)
@given(st.lists(perm5, min_size=2, max_size=3))
def test_quotient_by_center_is_homomorphism(gens):
    G = _group_from(gens)
    Z = center(G)
    assert is_normal(G, Z)
    Q, pi = quotient(G, Z)
    assert Q.order * len(Z) == G.order
    pi.check()
    assert pi.image[0] == 0


@settings(max_examples=15, deadline=None)
@given(st.lists(perm5, min_size=2, max_size=3), st.data())
def test_random_action_reports(gens, data):
    G = _group_from(gens)
    assume(not G.is_abelian())
    cx = SurfaceComplex(G)
    c = data.draw(st.integers(0, cx.n_components - 1))
    r = component_report(cx, c, conjugation_action(G))
    assert r.quotient_genus == 0
    assert r.Q in (r.E, 2 * r.E)
    assert r.hurwitz_ok


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([("S4", ["(1 2)(3 4)", "(1 3)(2 4)"]), ("SL2(3)", None), ("SL2(5)", None)]),
       st.data())
def test_lift_records_divisibility(case, data):
    spec, kernel = case
    G = group(spec)
    N = center(G) if kernel is None else subgroup_closure(G, [G.index_of_name(k) for k in kernel])
    report = analyze_cover(G, N, cxGam=complex_of(spec), central=kernel is None)
    b = report.bases[data.draw(st.integers(0, len(report.bases) - 1))]
    assert sum(r.m for r in b.lifts) == len(N) ** 2
    for r in b.lifts:
        assert r.m % r.l == 0 and r.m % r.lx == 0 and r.m % r.ly == 0
        assert r.n == b.n * r.l
        assert r.E == r.m * b.E
        assert r.F * r.l == r.m * b.F
