import pytest

import oracles as o
from mcgwords.catalog import build_catalog, phi_word
from mcgwords.engine import (
    MoveError,
    ScriptError,
    apply_step,
    braid_rewrite,
    commute_adjacent,
    cyclic_permute,
    global_conjugate,
    hurwitz_left,
    hurwitz_right,
    parse_script,
    replay_script,
    substitute,
)
from mcgwords.library import build_word, replay_lemma
from mcgwords.wordfile import ParseError, letter_token, parse_letter_token, parse_wordfile, serialize_wordfile
from mcgwords.words import (
    Factorization,
    Letter,
    Verdict,
    effective_class,
    letters_equal,
    normal_form,
    word_image,
)

CAT3 = build_catalog(3)


def word(*names, g=3):
    return Factorization.from_names(g, names)


def tokens(w):
    return [letter_token(x) for x in w.letters]


def test_letter_class_is_conjugated_class():
    x = parse_letter_token("[c3 c2^-1:c1]", CAT3)
    c = lambda i: o.chain_class(3, i)
    assert list(effective_class(CAT3, x)) == o.conj_class(3, [(c(3), 1), (c(2), -1)], c(1))


def test_letters_equal_verdicts():
    assert letters_equal(CAT3, Letter.twist("dbar2"), parse_letter_token("[c3^-1:c2]", CAT3)) is Verdict.EQUAL
    assert letters_equal(CAT3, Letter.twist("c1"), Letter.twist("c3")) is Verdict.DISTINCT
    # a separating twist acts trivially on homology but moves c2
    assert letters_equal(CAT3, parse_letter_token("[y1:c2]", CAT3), Letter.twist("c2")) is Verdict.HOMOLOGY_ONLY


def test_normal_form_idempotent():
    for tok in ("[c3^-1:c2]", "[phi^-1:dbar6]", "[c1 c3 c1^-1:c5]", "[c4 c5:c4]"):
        x = parse_letter_token(tok, CAT3)
        nf = normal_form(CAT3, x)
        assert normal_form(CAT3, Letter(*nf)) == nf


def test_phi_alias():
    x = parse_letter_token("[phi^-1:dbar6]", CAT3)
    assert x.conjugator == (("phi", -1),)
    assert phi_word(3) == (("c7", 1),) * 4 + (("c5", 1),) * 3 + (("c3", 1),) * 2 + (("c1", 1),)


def test_hurwitz_moves():
    w = word("c1", "c2", "c3")
    r = hurwitz_right(w, 1)
    assert tokens(r)[1] == "c1"
    assert word_image(r) == word_image(w)
    assert hurwitz_left(r, 1) == w
    assert hurwitz_right(hurwitz_left(w, 2), 2) == w
    with pytest.raises(MoveError):
        hurwitz_right(w, 3)


def test_cyclic_and_conjugation():
    w = build_word("H@g=2")
    assert cyclic_permute(w, 3).letters == w.letters[3:] + w.letters[:3]
    v = word("c1", "c2", "c4")
    u = (("c2", 1), ("c3", -1))
    got = word_image(global_conjugate(v, u))
    m = CAT3.image(u)
    assert got == m @ word_image(v) @ m.inverse()


def test_commute_and_braid():
    w = word("c1", "c3", "c2")
    assert tokens(commute_adjacent(w, 1)) == ["c3", "c1", "c2"]
    with pytest.raises(MoveError):
        commute_adjacent(w, 2)
    b = braid_rewrite(word("c1", "c2", "c1"), 1)
    assert tokens(b) == ["c2", "c1", "c2"]
    with pytest.raises(MoveError):
        braid_rewrite(word("c1", "c3", "c1"), 1)


def test_substitute_daisy():
    rel = CAT3.relators["D"]
    w = word(*rel.lhs)
    s = substitute(w, "D", 1)
    assert tokens(s) == list(rel.rhs)
    assert len(w) - len(s) == rel.p - 1
    assert substitute(s, "D", 1, reverse=True) == w
    with pytest.raises(MoveError):
        substitute(word("c1", "c1", "c1", "c1"), "D", 1)


def test_lemma41a_k2():
    tr = replay_lemma("4.1a", 2)
    assert tokens(tr.initial) == ["c1", "c2", "c1"]
    assert tokens(tr.final) == ["c2", "c2", "dbar1"]


def test_script_errors_report_step():
    steps = parse_script("HR 1\nCOMM 9\n")
    with pytest.raises(ScriptError) as exc:
        replay_script(steps, word("c1", "c2", "c3"))
    assert exc.value.step_index == 2
    with pytest.raises(Exception):
        parse_script("FLIP 1\n")
    with pytest.raises(Exception):
        parse_script("HR\n")


def test_apply_step_name():
    w = word("dbar2")
    step = parse_script("NAME 1 [c3^-1:c2]")[0]
    assert tokens(apply_step(w, step)) == ["[c3^-1:c2]"]


# -- word files ---------------------------------------------------------------

def test_parse_i3():
    text = "surface genus=3 boundary=0\n" + "c1 c2 c3 c4 c5 c6 c7\n" * 8
    w, prov = parse_wordfile(text)
    assert len(w) == 56 and prov is None
    assert w.letters == build_word("I@g=3").letters


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as exc:
        parse_wordfile("surface genus=3 boundary=0\nc1 c7^-2\n")
    assert (exc.value.line, exc.value.col) == (2, 4)
    with pytest.raises(ParseError) as exc:
        parse_wordfile("surface genus=3 boundary=0\nc1 c9\n")
    assert exc.value.line == 2 and exc.value.col == 4
    with pytest.raises(ParseError):
        parse_wordfile("surface genus=x\n")
    with pytest.raises(ParseError):
        parse_wordfile("surface genus=3 boundary=0\n[c1:c2\n")


def test_serialize_canonical():
    assert serialize_wordfile(Factorization(3, ())) == "surface genus=3 boundary=0\n"
    w = parse_wordfile("surface genus=3 boundary=0\nc7 c7 c7 [c2 c2^-1 c3:c1]\n")[0]
    text = serialize_wordfile(w)
    assert "c7^3 [c3:c1]" in text
    assert parse_wordfile(text)[0] == w
    assert serialize_wordfile(parse_wordfile(text)[0]) == text


def test_hurwitz_rejects_out_of_range():
    with pytest.raises(MoveError):
        hurwitz_right(build_word("H@g=2"), 0)
