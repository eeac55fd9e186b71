import pytest

import oracles as o
from mcgwords import scriptgen
from mcgwords.engine import ScriptError, parse_script, replay_script
from mcgwords.library import (
    LibraryError,
    boundary_census,
    build_word,
    derive,
    lemma_initial,
    lifted_relation,
    parse_word_id,
    projection_matches,
    relator_sides,
    replay_lemma,
    script_text,
    shipped_scripts,
)
from mcgwords.wordfile import letter_token
from mcgwords.words import project, word_image


def tokens(w):
    return [letter_token(x) for x in w.letters]


def test_word_ids():
    w = parse_word_id("I@g=4,k=3")
    assert (w.name, w.g, w.params["k"]) == ("I", 4, 3)
    for bad in ("H", "X@g=3", "I@g=3,k=x"):
        with pytest.raises(LibraryError):
            parse_word_id(bad)
    with pytest.raises(LibraryError):
        derive("H1@g=2")


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
def test_base_lengths(g):
    want = o.h_lengths(g)
    for name in ("H", "I", "G"):
        assert len(build_word(f"{name}@g={g}")) == want[name]


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_chain_relator_against_boundary_oracle(g, k):
    if k > 2 * g + 1:
        pytest.skip("chain longer than the surface")
    lhs, rhs = relator_sides(f"chain@g={g},k={k}")
    assert rhs.letters == ()
    v = o.boundary_class(g, k)
    # odd k: two boundary curves of class v, so the image is T_v^2; even k: one separating curve
    want = o.product([v, v], g) if k % 2 else o.identity(2 * g)
    assert [list(r) for r in word_image(lhs).matrix] == want


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_lemma41(k):
    a = replay_lemma("4.1a", k)
    assert tokens(a.final) == [f"c{k}"] * k + [f"dbar{i}" for i in range(k - 1, 0, -1)]
    b = replay_lemma("4.1b", k)
    assert tokens(b.final) == [f"d{i}" for i in range(1, k)] + [f"c{k}"] * k
    for tr in (a, b):
        assert word_image(tr.final) == word_image(tr.initial)


@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_lemma42(l):
    a = replay_lemma("4.2a", l)
    top = 2 * l + 1
    assert tokens(a.final) == ([f"c{top}"] * (l + 1) + [f"c{i}" for i in range(top - 1, 0, -1)]
                               + [f"d{i}" for i in range(2 * l, 0, -2)])
    b = replay_lemma("4.2b", l)
    assert tokens(b.final) == ([f"dbar{i}" for i in range(2, 2 * l + 1, 2)] + [f"c{i}" for i in range(1, top)]
                               + [f"c{top}"] * (l + 1))
    assert len(lemma_initial("4.2a", l)) == 4 * l + 1


@pytest.mark.parametrize("g", [3, 4, 5, 6])
def test_derived_lengths_and_identity(g):
    h = o.h_lengths(g)
    assert len(derive(f"H1@g={g}")[0]) == 7 * g + 6
    assert len(derive(f"H2@g={g}")[0]) == 6 * g + 8
    for k in range(1, g + 2):
        w, _ = derive(f"I@g={g},k={k}")
        assert len(w) == h["I"] - k * (g - 2)
    for wid, base in ((f"H_daisy2@g={g}", "H"), (f"I_daisy2@g={g}", "I"), (f"G_daisy@g={g}", "G")):
        w, tr = derive(wid)
        assert len(w) == h[base] - sum(p - 1 for _, p in tr.substitutions())
        assert tr.substitutions()
    for wid in (f"H1@g={g}", f"H2@g={g}", f"I@g={g},k={g + 1}", f"H_daisy2@g={g}", f"G_daisy@g={g}"):
        assert word_image(derive(wid)[0]).is_identity(), wid


def test_every_intermediate_word_is_a_relator():
    _, tr = derive("I@g=3,k=2")
    for w in tr.words[:: max(1, len(tr.words) // 40)]:
        assert word_image(w).is_identity()


def test_i_substitution_types():
    g = 4
    _, tr = derive(f"I@g={g},k=3")
    assert [r for r, _ in tr.substitutions()] == ["D", "D", "Dp"]
    # ceil(g/2) substitutions of type 2(g-1)
    for g in (3, 4, 5, 6):
        _, tr = derive(f"I_daisy2@g={g}")
        assert tr.substitutions() == [("D2", 2 * (g - 1))] * ((g + 1) // 2)


@pytest.mark.parametrize("g", [3, 4, 5])
def test_lifted_relations(g):
    w1, _ = lifted_relation(f"thm4.1-lift@g={g}")
    assert len(boundary_census(w1)) == 2 * g + 6
    assert projection_matches(w1, derive(f"H1@g={g}")[0])
    w2, _ = lifted_relation(f"thm4.2-lift@g={g}")
    assert len(boundary_census(w2)) == 8
    assert projection_matches(w2, derive(f"H2@g={g}")[0])
    for name in ("lem2", "lem3"):
        w, _ = lifted_relation(f"{name}@g={g}")
        assert word_image(project(w)).is_identity()


def test_lemma51_is_chain_relation():
    w, tr = lifted_relation("lem1@g=3")
    assert tr.steps
    assert word_image(project(w)) == word_image(project(tr.initial))


def test_shipped_scripts_replay_names():
    names = shipped_scripts()
    assert len(names) == 88
    for kind, tag, rng in (("4.1a", "k", range(2, 7)), ("4.1b", "k", range(2, 7)),
                           ("4.2a", "l", range(0, 4)), ("4.2b", "l", range(0, 4))):
        for p in rng:
            assert f"lemma{kind}-{tag}{p}" in names
    for g in (3, 4, 5, 6):
        for stem in ("lem1", "lem2", "lem3", "thm4.1-lift", "thm4.2-lift", "H1", "H2", "Hd2",
                     "thm4.3i", "thm4.3ii", "thm4.4"):
            assert f"{stem}-g{g}" in names


def test_scriptgen_matches_shipped_files():
    gen = scriptgen.lemma_scripts()
    gen.update(scriptgen.lifted_scripts(3))
    gen.update(scriptgen.closed_scripts(3))
    for name, text in gen.items():
        assert script_text(name) == text, name


def test_corrupted_script_aborts_at_step():
    steps = parse_script(script_text("lemma4.1a-k3"))
    bad = list(steps)
    # point the first FACT at the wrong window
    i = next(n for n, s in enumerate(bad) if s.op == "FACT")
    bad[i] = type(bad[i])(bad[i].op, (bad[i].args[0], bad[i].args[1] + 1), bad[i].line)
    with pytest.raises(ScriptError) as exc:
        replay_script(bad, lemma_initial("4.1a", 3))
    assert exc.value.step_index == i + 1


def test_build_word_rejects_bad_genus():
    with pytest.raises(LibraryError):
        build_word("H@g=0")
