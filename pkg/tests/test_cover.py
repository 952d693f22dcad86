from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complex_of, group
from surfatlas.cover import (
    NotCentralError,
    analyze_central_cover,
    analyze_cover,
    monodromy,
    render_diagram,
)
from surfatlas.errors import NotNormalError
from surfatlas.group import build_named_group, center


def _klein(G):
    return [G.index_of_name("(1 2)(3 4)"), G.index_of_name("(1 3)(2 4)")]


@pytest.fixture(scope="module")
def s4_report():
    G = group("S4")
    return analyze_cover(G, _klein(G), cxGam=complex_of("S4"))


@pytest.fixture(scope="module")
def sl23_report():
    G = group("SL2(3)")
    return analyze_central_cover(G, center(G), cxGam=complex_of("SL2(3)"))


def _base_by_shape(report, symbol, F):
    found = [b for b in report.bases if b.symbol == symbol and b.F == F]
    assert len(found) >= 1
    return found


def _shapes(base):
    return Counter((r.symbol, r.F, r.triple, r.m) for r in base.lifts)


def test_s4_over_s3_sphere(s4_report):
    (base,) = _base_by_shape(s4_report, "{3,2}", 2)
    assert _shapes(base) == Counter({
        ("{6,2-4}", 8, (2, 1, 2), 8): 1,
        ("{3,4}", 8, (1, 2, 2), 4): 1,
        ("{3,2}", 2, (1, 1, 1), 1): 4,
    })
    assert sum(r.m for r in base.lifts) == 16
    t = {r.symbol: r.t for r in base.lifts}
    assert t["{6,2-4}"] == 4


def test_s4_over_s3_second_base(s4_report):
    (base,) = _base_by_shape(s4_report, "{4,2-3}", 3)
    shapes = Counter((r.symbol, r.F, r.triple) for r in base.lifts)
    assert shapes == Counter({
        ("{8,2-3}", 6, (2, 1, 1)): 1,
        ("{8,3-4}", 6, (2, 1, 2)): 1,
        ("{4,3-4}", 12, (1, 1, 2)): 1,
        ("{4,2-3}", 3, (1, 1, 1)): 4,
    })
    assert sum(r.m for r in base.lifts) == 16


def test_s4_lifts_and_uncovered_partition_components(s4_report):
    lifted = {r.component for b in s4_report.bases for r in b.lifts}
    assert len(lifted) == 13
    assert len(lifted) + len(s4_report.uncovered) == complex_of("S4").n_components


def test_sl23_central_diagrams(sl23_report):
    r = sl23_report
    assert r.central and r.kernel_exponent == 2
    spheres = _base_by_shape(r, "{3,3}", 4)
    assert len(spheres) == 2
    for b in spheres:
        shapes = Counter((x.symbol, x.F, x.triple) for x in b.lifts)
        assert shapes == Counter({("{6,3}", 4, (2, 1, 1)): 1, ("{3,3}", 4, (1, 1, 1)): 2})
        branched = [x for x in b.lifts if x.l == 2]
        assert branched[0].monodromy_order == 2
        assert len(b.groupings) == 2
    others = [b for b in r.bases if b not in spheres]
    assert len(others) == 3
    for b in others:
        assert all(x.triple == (1, 1, 1) and x.m == 1 for x in b.lifts)
        assert all((x.symbol, x.F, x.genus) == (b.symbol, b.F, b.genus) for x in b.lifts)


def test_ramification_divides_kernel_exponent(sl23_report):
    for b in sl23_report.bases:
        for x in b.lifts:
            assert all(sl23_report.kernel_exponent % e == 0 for e in x.triple)


def test_monodromy_direct():
    G = group("SL2(3)")
    cx = complex_of("SL2(3)")
    report = analyze_central_cover(G, center(G), cxGam=cx)
    rec = next(x for b in report.bases for x in b.lifts if x.l == 2)
    b = next(b for b in report.bases if rec in b.lifts)
    start = int(cx.comp_reference[rec.component])
    c, order = monodromy(cx, G, start, b.n, set(center(G).tolist()))
    assert order == 2
    assert c in set(center(G).tolist()) and c != 0


def test_trivial_extension():
    G = group("S4")
    report = analyze_cover(G, [0], cxGam=complex_of("S4"))
    assert len(report.bases) == complex_of("S4").n_components
    for b in report.bases:
        (lift,) = b.lifts
        assert lift.triple == (1, 1, 1) and lift.m == 1
        assert (lift.symbol, lift.F, lift.genus) == (b.symbol, b.F, b.genus)
    assert report.uncovered == []


def test_direct_product_cover():
    G = build_named_group("perm:(1 2),(1 2 3),(4 5),(4 5 6)")
    N = [G.index(G.rep.parse("(4 5)")), G.index(G.rep.parse("(4 5 6)"))]
    report = analyze_cover(G, N)
    assert report.kernel_order == 6
    for b in report.bases:
        assert sum(r.m for r in b.lifts) == 36


@pytest.mark.parametrize("spec", ["SL2(5)", "SL2(7)"])
def test_larger_central_covers(spec):
    G = group(spec)
    report = analyze_central_cover(G, center(G), cxGam=complex_of(spec))
    assert len(report.bases) == complex_of("A5" if spec == "SL2(5)" else "PSL2(7)").n_components
    for b in report.bases:
        assert sum(r.m for r in b.lifts) == 4
        for r in b.lifts:
            assert r.monodromy_order == r.l


def test_non_normal_kernel():
    G = group("S4")
    with pytest.raises(NotNormalError):
        analyze_cover(G, [G.index_of_name("(1 2)")])


def test_non_central_kernel():
    G = group("S4")
    with pytest.raises(NotCentralError):
        analyze_central_cover(G, _klein(G))


def test_abelian_base_rejected():
    G = group("ES(3)")
    with pytest.raises(ValueError):
        analyze_cover(G, center(G))


def test_render_diagram(s4_report):
    text = render_diagram(s4_report)
    assert "--(2,1,2) m=8-->" in text
    assert "{3,2}^2 x4" in text
    assert text.count("sum m = 16 = |N|^2") == 2
    assert text.rstrip().endswith("components over commuting pairs: 14")


def test_report_dict(s4_report):
    d = s4_report.as_dict()
    assert d["kernel_order"] == 4
    assert all(b["sum_m"] == 16 for b in d["bases"])


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lift_choice_does_not_matter(seed):
    G = group("S4")
    rng = np.random.default_rng(seed)
    ref = analyze_cover(G, _klein(G), cxGam=complex_of("S4"))
    other = analyze_cover(G, _klein(G), cxGam=complex_of("S4"), lift_choice=lambda c: int(rng.choice(c)))
    for i in range(len(ref.bases)):
        assert ref.lift_multiset(i) == other.lift_multiset(i)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_central_lift_choice_does_not_matter(seed):
    G = group("SL2(3)")
    rng = np.random.default_rng(seed)
    Z = center(G)
    ref = analyze_central_cover(G, Z, cxGam=complex_of("SL2(3)"))
    other = analyze_central_cover(G, Z, cxGam=complex_of("SL2(3)"), lift_choice=lambda c: int(rng.choice(c)))
    for i in range(len(ref.bases)):
        assert ref.lift_multiset(i) == other.lift_multiset(i)


def test_monodromy_elements(sl23_report):
    G = group("SL2(3)")
    minus_i = G.names[G.index_of_name("[[2,0],[0,2]]")]
    for b in sl23_report.bases:
        for r in b.lifts:
            if r.l == 2:
                assert r.monodromy == minus_i
            else:
                assert r.monodromy == G.names[0]
