import itertools

import pytest

import oracles as o
from mcgwords import homology as hom
from mcgwords.catalog import (
    CatalogError,
    GenusError,
    apply_overrides,
    build_catalog,
    build_lifted_catalog,
    dump_catalog,
    standard_chain,
    validate_catalog,
)


def test_standard_chain_table():
    chain = standard_chain(3)
    assert [e.name for e in chain] == [f"c{i}" for i in range(1, 8)]
    assert list(chain[1].hom_class) == o.a(3, 1)
    assert list(chain[6].hom_class) == o.b(3, 3)
    with pytest.raises(GenusError):
        standard_chain(0)


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
def test_derived_classes_against_oracle(g):
    cat = build_catalog(g)
    c = lambda i: o.chain_class(g, i)
    for i in range(1, 2 * g + 1):
        d = o.conj_class(g, [(c(i + 1), 1)], c(i))
        dbar = o.conj_class(g, [(c(i + 1), -1)], c(i))
        e = o.conj_class(g, [(c(i), 1)], c(i + 1))
        assert list(cat.hom_class(f"d{i}")) == d
        assert list(cat.hom_class(f"dbar{i}")) == dbar
        assert list(cat.hom_class(f"e{i + 1}")) == e
        # d_i and dbar_i are c_i +- c_{i+1}
        assert sorted([d, dbar]) == sorted([o.add(c(i), c(i + 1)), [x - y for x, y in zip(c(i), c(i + 1))]])
    # f_j = (c_{j-1} c_{j+1})^{-1} (dbar_j)
    for j in range(2, 2 * g + 1):
        want = o.conj_class(g, [(c(j + 1), -1), (c(j - 1), -1)], list(cat.hom_class(f"dbar{j}")))
        assert list(cat.hom_class(f"f{j}")) == want


@pytest.mark.parametrize("g", [3, 4, 5, 6])
def test_z2_anchors(g):
    cat = build_catalog(g)
    c = lambda i: o.chain_class(g, i)
    assert list(cat.z2(f"dbar{2 * g}")) == o.mod2(o.add(c(2 * g), c(2 * g + 1)))
    assert list(cat.z2(f"e{2 * g}")) == o.mod2(o.add(c(2 * g - 1), c(2 * g)))
    assert list(cat.z2(f"x{g}")) == o.mod2(o.add(c(2 * g - 1), c(2 * g + 1)))


@pytest.mark.parametrize("g", [3, 4, 5])
def test_daisy_sign_search_oracle(g):
    # x_j = c_{2j-1} + s_j c_{2g+1}; brute force over all signs
    c = lambda i: o.chain_class(g, i)
    top = c(2 * g + 1)
    lhs = [c(2 * j - 1) for j in range(1, g + 1)] + [top] * (g - 2)
    target = o.product(lhs, g)
    found = []
    for signs in itertools.product((1, -1), repeat=g):
        xs = [[p + s * t for p, t in zip(c(2 * j - 1), top)] for j, s in zip(range(1, g + 1), signs)]
        if o.product(xs, g) == target:
            found.append(xs)
    assert found
    cat = build_catalog(g)
    mine = [list(cat.hom_class(f"x{j}")) for j in range(1, g + 1)]
    assert mine in found


@pytest.mark.parametrize("g", [3, 4, 5, 6])
def test_daisy_relators_shape(g):
    cat = build_catalog(g)
    d = cat.relators["D"]
    assert sorted(d.lhs) == sorted([f"c{2 * j - 1}" for j in range(1, g + 1)] + [f"c{2 * g + 1}"] * (g - 2))
    assert d.p == g - 1 and len(d.lhs) - len(d.rhs) == g - 2
    d2 = cat.relators["D2"]
    assert d2.p == 2 * (g - 1) and len(d2.lhs) - len(d2.rhs) == d2.p - 1
    y1 = cat.entry("y1")
    assert hom.is_zero(y1.hom_class) and y1.separating_genus == 1
    for j in range(2, g + 1):
        assert cat.hom_class(f"y{g + j - 1}") == cat.hom_class(f"x{j}")
    for rid in ("D", "Dp", "D2", "lantern"):
        rel = cat.relators[rid]
        lhs = o.product([list(cat.hom_class(n)) for n in rel.lhs], g)
        rhs = o.product([list(cat.hom_class(n)) for n in rel.rhs], g)
        assert lhs == rhs, rid


def test_odd_chain_dependency():
    for g in range(1, 7):
        total = [0] * (2 * g)
        for t, j in enumerate(range(1, 2 * g + 2, 2)):
            total = [x + (-1) ** t * y for x, y in zip(total, o.chain_class(g, j))]
        assert total == [0] * (2 * g)


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
def test_validate_catalog_passes(g):
    rep = validate_catalog(g)
    assert rep.ok, str(rep)


def test_validate_catches_corrupted_chain():
    bad = apply_overrides(build_catalog(3), "curve c7 1 0 0 0 0 0\n")
    rep = validate_catalog(bad)
    assert not rep.ok
    assert rep.first_failure == ("chain intersection pattern", "<c6,c7> = 0")


def test_dump_round_trip():
    cat = build_catalog(3)
    again = apply_overrides(cat, dump_catalog(cat))
    assert {n: e.hom_class for n, e in again.entries.items()} == {n: e.hom_class for n, e in cat.entries.items()}
    with pytest.raises(CatalogError):
        apply_overrides(cat, "catalog genus=4\n")
    with pytest.raises(CatalogError):
        apply_overrides(cat, "curve c1 1 2\n")


def test_lifted_catalog_projection():
    cat = build_lifted_catalog(3, 8)
    closed = build_catalog(3)
    assert cat.entry("alphap").projection == "c7"
    assert cat.hom_class("alphap") == closed.hom_class("c7")
    assert hom.is_zero(cat.hom_class("bdelta3"))
    assert cat.hom_class("chi2") == closed.hom_class("x2")
    assert cat.entry("betabar4").projection == "dbar4"


def test_action_facts_hold():
    cat = build_catalog(4)
    for f in cat.facts.values():
        m = cat.image(f.actor)
        got = list(m.apply(cat.hom_class(f.source)))
        want = list(cat.hom_class(f.target))
        assert got in (want, [-x for x in want]), f.id
    with pytest.raises(CatalogError):
        cat.fact("desc:1:12:3")
