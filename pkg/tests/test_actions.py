from fractions import Fraction

import pytest

from conftest import complex_of, group
from surfatlas.actions import (
    ShortcutNotApplicable,
    automorphism_action,
    automorphism_report,
    component_report,
    conjugation_action,
    conjugation_report,
    render_summary,
    riemann_hurwitz,
    simple_group_shortcut,
    summarize_reports,
)
from surfatlas.errors import TheoremViolation
from surfatlas.group import center


@pytest.fixture(scope="module")
def psl27_reports():
    cx = complex_of("PSL2(7)")
    action = conjugation_action(cx.group)
    return [component_report(cx, c, action) for c in range(cx.n_components)]


def test_riemann_hurwitz_examples():
    assert riemann_hurwitz(168, 3, (2, 3, 7)) == 0
    assert riemann_hurwitz(24, 0, (2, 3, 4)) == 0
    assert riemann_hurwitz(1, 1, ()) == 1
    assert riemann_hurwitz(2, 1, ()) == 1
    assert isinstance(riemann_hurwitz(60, 0, (2, 3, 5)), Fraction)


def test_riemann_hurwitz_rejects_fractional():
    with pytest.raises(TheoremViolation):
        riemann_hurwitz(5, 0, ())
    with pytest.raises(ValueError):
        riemann_hurwitz(0, 0, ())


@pytest.mark.parametrize("n", range(3, 9))
def test_dihedral_sphere(n):
    spec = f"D{2 * n}"
    cx = complex_of(spec)
    action = conjugation_action(cx.group)
    expected = cx.group.order // len(center(cx.group))
    spheres = [c for c in range(cx.n_components) if cx.invariants(c, False).symbol == f"{{{n},2}}"]
    assert spheres
    for c in spheres:
        r = component_report(cx, c, action)
        assert r.Q == expected
        assert r.quotient_genus == 0
        assert r.genus == 0


def test_a5_polyhedra():
    cx = complex_of("A5")
    action = conjugation_action(cx.group)
    shapes = {"{5,3}": 12, "{3,5}": 20}
    hits = 0
    for c in range(cx.n_components):
        inv = cx.invariants(c, False)
        if inv.genus == 0 and inv.symbol in shapes and inv.F == shapes[inv.symbol]:
            r = component_report(cx, c, action)
            assert r.Q == 60 == 2 * r.E
            assert r.vertex_orbits == 1 and r.edge_flip
            assert simple_group_shortcut(cx, c) == 60
            hits += 1
    assert hits == 4


def test_psl27_genus3_hurwitz_equality(psl27_reports):
    named = [r for r in psl27_reports if r.genus == 3 and r.symbol in ("{14,2-3}", "{6,2-7}", "{4,3-7}")]
    assert len([r for r in named if r.symbol == "{14,2-3}"]) == 2
    for r in named:
        assert r.Q == 168 == r.hurwitz_bound
        assert r.hurwitz_equality
        assert r.quotient_genus == 0
        assert sorted(r.branch) == [2, 3, 7]


def test_psl27_equalities_are_genus3(psl27_reports):
    assert all(r.genus == 3 for r in psl27_reports if r.hurwitz_equality)
    assert all(r.hurwitz_ok for r in psl27_reports)


@pytest.mark.parametrize("spec", ["S3", "A4", "S4", "SL2(3)", "A5", "Q8", "D12"])
def test_component_relations(spec):
    cx = complex_of(spec)
    action = conjugation_action(cx.group)
    for c in range(cx.n_components):
        r = component_report(cx, c, action)
        assert r.Q == (2 * r.E if r.vertex_orbits == 1 else r.E)
        assert r.edge_flip == (r.vertex_orbits == 1)
        assert r.Q_e == (2 if r.edge_flip else 1)
        assert (r.Q_x, r.Q_y) == (r.lambda_x, r.lambda_y)
        n = cx.invariants(c, False).n
        assert r.Q_F in (n, n // 2)
        assert r.quotient_genus == 0
        assert r.stabilizer_order % r.kernel_order == 0
        assert r.stabilizer_order // r.kernel_order == r.Q
        if r.realized_order is not None:
            assert r.realized_order == r.Q


@pytest.mark.parametrize("p, genus", [(3, 1), (5, 6)])
def test_extraspecial_automorphisms(p, genus):
    cx = complex_of(f"ES({p})")
    action = automorphism_action(cx.group)
    for c in (0, cx.n_components - 1):
        r = component_report(cx, c, action, orbits=True)
        assert r.genus == genus
        assert r.E == p * p
        assert r.Q == 2 * p * p == 2 * r.E
        assert r.quotient_genus == 0
        assert r.orbit_size * r.stabilizer_order == action.size


@pytest.mark.parametrize("p", [3, 5])
def test_extraspecial_conjugation(p):
    cx = complex_of(f"ES({p})")
    r = conjugation_report(cx, 0)
    # G/Z is elementary abelian of order p^2
    assert r.Q == p * p
    assert r.vertex_orbits == 2


@pytest.mark.parametrize("spec", ["S4", "SL2(3)", "ES(3)"])
def test_aut_orbit_shares_invariants(spec):
    cx = complex_of(spec)
    action = automorphism_action(cx.group)
    for c in range(cx.n_components):
        x, y = cx.pair(int(cx.comp_reference[c]))
        orbit = {cx.component_of(int(action.row(k)[x]), int(action.row(k)[y])) for k in range(action.size)}
        assert len({cx.invariants(d).key for d in orbit}) == 1
        r = component_report(cx, c, action, orbits=True)
        assert r.orbit_size == len(orbit)


def test_automorphism_report_defaults_to_orbits():
    r = automorphism_report(group("A4"), 0)
    assert r.orbit_size is not None
    assert r.kind == "automorphism"


def test_shortcut_not_applicable():
    with pytest.raises(ShortcutNotApplicable):
        simple_group_shortcut(complex_of("S4"), 0)


def test_summary_rows(psl27_reports):
    rows = summarize_reports(psl27_reports)
    assert sum(r["count"] for r in rows) == len(psl27_reports)
    text = render_summary(rows, "PSL2(7)")
    assert "(equal)" in text
    equal = [r for r in rows if r["hurwitz_margin"] == 0]
    assert {r["symbol"] for r in equal} >= {"{14,2-3}", "{6,2-7}", "{4,3-7}"}


def test_report_dict_is_plain():
    r = conjugation_report(group("S3"), 0)
    d = r.as_dict()
    assert d["Q"] == r.Q
    assert isinstance(d["branch"], list)
    for v in d.values():
        assert isinstance(v, (int, bool, str, list, type(None)))
