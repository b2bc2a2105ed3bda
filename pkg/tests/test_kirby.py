import itertools
import math
import random
from fractions import Fraction

import pytest

from lenseta.errors import IndexOutOfRange, NotCharacteristic, NotCoprime, SameComponent
from lenseta.kirby import (
    FramedLink,
    RelativeDiagram,
    build_cobordism,
    chain_link,
    characteristic_sublinks,
    disjoint_union,
    evaluate_expansion,
    first_component_rule,
    h1_order,
    handle_slide,
    is_characteristic,
    slam_dunk_expand,
    spin_extension,
    structure_report,
)
from lenseta.seifert import seifert_data


def brute_characteristic(link):
    m = link.m
    out = []
    for bits in itertools.product((0, 1), repeat=m):
        if all((sum(link.linking[i][j] * bits[j] for j in range(m)) - link.linking[i][i]) % 2 == 0 for i in range(m)):
            out.append(bits)
    return out


def fraction_det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n, det = len(a), Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return int(det)


@pytest.mark.parametrize("p, q, expected", [(7, 1, [7]), (5, 2, [3, 2]), (7, 3, [3, 2, 2])])
def test_slam_dunk_examples(p, q, expected):
    assert slam_dunk_expand(p, q) == expected


def test_slam_dunk_errors():
    with pytest.raises(NotCoprime):
        slam_dunk_expand(6, 4)


def test_slam_dunk_round_trip_random():
    rng = random.Random(4)
    done = 0
    while done < 200:
        p = rng.randrange(2, 10**4 + 1)
        q = rng.randrange(1, p)
        if math.gcd(p, q) != 1:
            continue
        coeffs = slam_dunk_expand(p, q)
        value = Fraction(coeffs[-1])
        for n in reversed(coeffs[:-1]):
            value = n - 1 / value
        assert value == Fraction(p, q)
        assert evaluate_expansion(coeffs) == Fraction(p, q)
        assert min(coeffs) >= 2
        assert slam_dunk_expand(p, p + q) == [1, coeffs[0] + 1] + coeffs[1:]
        done += 1


def test_chain_link_examples():
    assert chain_link([]).m == 0
    assert chain_link([3, 2]).linking == ((3, 1), (1, 2))
    assert chain_link([3, 3]).linking == ((3, 1), (1, 3))


def test_framed_link_must_be_symmetric():
    with pytest.raises(ValueError):
        FramedLink(((1, 2), (0, 1)))


def test_h1_order_examples():
    assert h1_order(chain_link([])) == 1
    assert h1_order(chain_link([3, 2])) == 5
    assert h1_order(chain_link([3, 3])) == 8
    assert h1_order(FramedLink(((0, 0), (0, 0)))) == 0


def test_h1_order_against_dense_oracle():
    rng = random.Random(8)
    for _ in range(100):
        m = rng.randrange(1, 7)
        rows = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                rows[i][j] = rows[j][i] = rng.randrange(-4, 5)
        assert h1_order(FramedLink(rows)) == abs(fraction_det(rows))


def test_chain_determinant_is_p():
    for p in range(2, 120):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                assert h1_order(chain_link(slam_dunk_expand(p, q))) == p


def test_characteristic_examples():
    assert characteristic_sublinks(chain_link([1])) == [(1,)]
    assert characteristic_sublinks(chain_link([2])) == [(0,), (1,)]
    assert characteristic_sublinks(chain_link([3, 2])) == [(0, 1)]
    assert characteristic_sublinks(chain_link([])) == [()]


def test_characteristic_against_brute_force():
    rng = random.Random(12)
    for _ in range(150):
        m = rng.randrange(1, 9)
        rows = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                rows[i][j] = rows[j][i] = rng.randrange(-3, 4)
        link = FramedLink(rows)
        subs = characteristic_sublinks(link)
        assert subs == brute_characteristic(link)
        assert all(is_characteristic(link, c) for c in subs)


@pytest.mark.parametrize(
    "p, q, predicted, colorings",
    [(5, 2, "uncolored", [(0, 1)]), (5, 3, "colored", [(1, 0)]), (8, 3, "split", [(0, 1), (1, 0)])],
)
def test_first_component_rule_examples(p, q, predicted, colorings):
    rule = first_component_rule(p, q)
    assert rule.predicted == predicted
    assert rule.colorings == colorings
    assert rule.agree


def test_lens_figure_examples():
    # unique spin structures on L(5,2), L(7,3); two on L(8,3)
    assert len(characteristic_sublinks(chain_link(slam_dunk_expand(5, 2)))) == 1
    assert len(characteristic_sublinks(chain_link(slam_dunk_expand(7, 3)))) == 1
    assert len(characteristic_sublinks(chain_link(slam_dunk_expand(8, 3)))) == 2


def test_handle_slide_over_split_zero_unknot():
    link = disjoint_union(chain_link([3, 2]), chain_link([0]))
    for coloring in characteristic_sublinks(link):
        new, col = handle_slide(link, coloring, 0, 2)
        assert new.framings[0] == 3
        assert col[2] == coloring[2] ^ coloring[0]
        assert is_characteristic(new, col)


def test_handle_slide_reproduces_shifted_chain():
    # sliding the first chain component over a split +1 unknot gives framing n_1 + 1
    for p, q in ((5, 2), (7, 3), (9, 4), (11, 7)):
        coeffs = slam_dunk_expand(p, q)
        m = len(coeffs)
        link = disjoint_union(chain_link(coeffs), chain_link([1]))
        coloring = characteristic_sublinks(link)[0]
        new, col = handle_slide(link, coloring, 0, m)
        assert new.framings[0] == coeffs[0] + 1
        assert h1_order(new) == p == h1_order(chain_link(slam_dunk_expand(p, p + q)))
        # the unknot now links the old first component once
        assert abs(new.linking[0][m]) == 1
        assert is_characteristic(new, col)


def test_handle_slide_errors():
    link = chain_link([3, 2])
    with pytest.raises(SameComponent):
        handle_slide(link, (0, 1), 1, 1)
    with pytest.raises(IndexOutOfRange):
        handle_slide(link, (0, 1), 0, 5)
    with pytest.raises(NotCharacteristic):
        handle_slide(link, (1, 1), 0, 1)


def test_build_cobordism_examples():
    d = build_cobordism(seifert_data((2, 3, 5)))
    assert d.bracketed.framings == (2, 3, 5)
    assert d.attach_framing == 1 and d.attach_linking == (1, 1, 1)
    d = build_cobordism(seifert_data((2, 3)))
    assert d.bracketed.framings == (2, 2, 2)
    assert d.attach_linking == (1, 1, 0)
    d = build_cobordism(seifert_data((3, 5, 7)))
    assert h1_order(d.bracketed) == 105


def test_spin_extension_examples():
    ext = spin_extension(build_cobordism(seifert_data((2, 3, 5))))
    assert [(c, total) for c, total, _ in ext.candidates] == [((0, 1, 1), 2), ((1, 1, 1), 3)]
    assert ext.exists and ext.extendable == [(1, 1, 1)]
    ext = spin_extension(build_cobordism(seifert_data((3, 5, 7))))
    assert len(ext.candidates) == 1 and not ext.exists
    empty = RelativeDiagram(chain_link([]), 0, ())
    assert spin_extension(empty).exists


def test_structure_report_examples():
    r = structure_report(seifert_data((2, 3, 5)))
    assert r.spinnable and r.extension_agrees
    assert r.spinc_on_boundary_lens == "Z/2 + 2Z/30"
    r = structure_report(seifert_data((3, 5, 7)))
    assert not r.spinnable and r.extension_agrees
    assert r.spinc_on_boundary_lens == "2Z/105"
    assert r.canonical_spinc_extension is not None
    assert r.pi1_W == "<x1, x2, x3 | x1^3 = x2^5 = x3^7 = x1x2x3 = 1>"
    r = structure_report(seifert_data((2, 3)))
    assert r.spinnable and r.extension_agrees
