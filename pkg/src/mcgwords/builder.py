"""Script construction: record steps while rewriting, plus a local planner.

Shipped derivation scripts are produced by the functions in
:mod:`mcgwords.derivations`, which follow the written proofs milestone by
milestone.  Between milestones the compressed "~" steps are filled in by
:meth:`ScriptBuilder.reach`, a depth-first search over Hurwitz moves that
builds the target one position at a time:

* pull a later letter to position p through the letters in between with HR
  moves (the pulled letter is conjugated by them), or
* bring a later letter to p unchanged with HL moves (the letters it passes
  are conjugated instead).
"""
from __future__ import annotations

from typing import Sequence

from .catalog import Catalog, free_reduce
from .engine import Step, apply_step, simplify
from .words import Factorization, Letter, Verdict, letters_equal, normal_form
from .wordfile import letter_token, parse_letter_token


class PlanError(RuntimeError):
    pass


class ScriptBuilder:
    def __init__(self, word: Factorization):
        self.initial = word
        self.word = word
        self.steps: list[Step] = []

    @property
    def cat(self) -> Catalog:
        return self.word.catalog

    def do(self, op: str, *args) -> "ScriptBuilder":
        step = Step(op, tuple(args))
        self.word = apply_step(self.word, step)
        self.steps.append(step)
        return self

    def comment(self, text: str) -> "ScriptBuilder":
        self.steps.append(Step("#", (text,)))
        return self

    # -- macros -----------------------------------------------------------
    def move_left(self, j: int, i: int, keep: bool = False) -> "ScriptBuilder":
        """Move the letter at j to i < j.  With ``keep`` it stays unchanged
        (HL moves); otherwise it is conjugated by the letters it passes."""
        for p in range(j - 1, i - 1, -1):
            self.do("HL" if keep else "HR", p)
        return self

    def move_right(self, i: int, j: int, keep: bool = False) -> "ScriptBuilder":
        """Move the letter at i to j > i.  With ``keep`` it stays unchanged
        (HR moves); otherwise it is conjugated by the inverses it passes."""
        for p in range(i, j):
            self.do("HR" if keep else "HL", p)
        return self

    def rotate(self, k: int) -> "ScriptBuilder":
        return self.do("CYC", k)

    def tokens(self, lo: int = 1, hi: int | None = None) -> list[str]:
        hi = len(self.word) if hi is None else hi
        return [letter_token(x) for x in self.word.letters[lo - 1:hi]]

    def expect(self, target: Sequence[str], lo: int = 1) -> "ScriptBuilder":
        """Assert that the letters from ``lo`` are the target tokens (as
        twists), renaming literally different but equal letters."""
        cat = self.cat
        for off, tok in enumerate(target):
            p = lo + off
            if p > len(self.word):
                raise PlanError(f"expect: word too short at {p}")
            want = parse_letter_token(tok, cat)
            have = self.word.letters[p - 1]
            if have == want:
                continue
            if letters_equal(cat, have, want) is not Verdict.EQUAL:
                raise PlanError(f"expect: position {p} is {letter_token(have)}, wanted {tok}")
            self.do("NAME", p, tok)
        return self

    def expect_all(self, target: Sequence[str]) -> "ScriptBuilder":
        if len(target) != len(self.word):
            raise PlanError(f"expect_all: length {len(self.word)} != {len(target)}")
        return self.expect(target)

    # -- planner ----------------------------------------------------------
    def reach(self, target: Sequence[str], lo: int = 1, budget: int = 20000) -> "ScriptBuilder":
        """Rewrite positions lo .. lo+len(target)-1 into ``target`` using
        Hurwitz moves inside that window only."""
        cat = self.cat
        n = len(target)
        want = [parse_letter_token(t, cat) for t in target]
        window = list(self.word.letters[lo - 1:lo - 1 + n])
        if len(window) != n:
            raise PlanError("reach: window runs past the end of the word")
        nodes = [0]
        moves = _search(cat, window, want, 0, nodes, budget)
        if moves is None:
            raise PlanError(f"reach: no plan within budget for {' '.join(target)}")
        for op, p in moves:
            self.do(op, lo + p)
        return self.expect(target, lo)

    def script_text(self) -> str:
        out = []
        for s in self.steps:
            out.append(f"# {s.args[0]}" if s.op == "#" else str(s))
        return "\n".join(out) + "\n"

    def real_steps(self) -> list[Step]:
        return [s for s in self.steps if s.op != "#"]


def _same(cat: Catalog, x: Letter, y: Letter) -> bool:
    return x == y or letters_equal(cat, x, y) is Verdict.EQUAL


def _search(cat, window, want, p, nodes, budget):
    """Moves (op, 0-based left index) turning window into want from p on."""
    n = len(want)
    if p == n:
        return []
    nodes[0] += 1
    if nodes[0] > budget:
        return None
    if _same(cat, window[p], want[p]):
        rest = _search(cat, window, want, p + 1, nodes, budget)
        if rest is not None:
            return rest
    cands = []
    for q in range(p + 1, n):
        # (B) bring window[q] unchanged
        if _same(cat, window[q], want[p]):
            cands.append(("keep", q))
        # (A) pull window[q] through window[p:q]
        conj: tuple = ()
        for x in window[p:q]:
            conj += x.as_word()
        if _same(cat, Letter(free_reduce(conj + window[q].conjugator), window[q].base), want[p]):
            cands.append(("pull", q))
    for kind, q in sorted(cands, key=lambda c: (c[1], c[0] != "keep")):
        new = list(window)
        moves = []
        if kind == "keep":
            for r in range(q - 1, p - 1, -1):
                x, y = new[r], new[r + 1]
                new[r], new[r + 1] = y, simplify(cat, x.conjugated(_inv_word(y)))
                moves.append(("HL", r))
        else:
            for r in range(q - 1, p - 1, -1):
                x, y = new[r], new[r + 1]
                new[r], new[r + 1] = simplify(cat, y.conjugated(x.as_word())), x
                moves.append(("HR", r))
        rest = _search(cat, new, want, p + 1, nodes, budget)
        if rest is not None:
            return moves + rest
        if nodes[0] > budget:
            return None
    return None


def _inv_word(x: Letter):
    from .catalog import invert

    return invert(x.as_word())


def _plain(x: Letter) -> str:
    if x.conjugator:
        raise PlanError(f"{letter_token(x)} is not a plain twist")
    return x.base


def c_left(b: ScriptBuilder, q: int, p: int) -> ScriptBuilder:
    """Conjugation step: bring the twist at q to p < q; letters outside
    p..q are conjugated by it, letters in between are unchanged."""
    t = _plain(b.word.letters[q - 1])
    b.do("CONJ", t)
    return b.move_left(q, p, keep=True)


def c_right(b: ScriptBuilder, p: int, q: int) -> ScriptBuilder:
    """Conjugation step: send the twist at p to q > p; letters outside p..q
    are conjugated by its inverse."""
    t = _plain(b.word.letters[p - 1])
    b.do("CONJ", f"{t}^-1")
    return b.move_right(p, q, keep=True)
