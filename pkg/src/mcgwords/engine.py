"""Elementary transformations of factorizations and replayable scripts.

Indices are 1-based throughout, as in a written derivation.  Every move
returns a new :class:`Factorization` and is checked on homology:

* moves that keep the product (Hurwitz, commutation, braid, action facts,
  substitution, renaming) compare the Sp image of the rewritten window;
* cyclic permutation is a literal rotation;
* global conjugation checks that each new letter class is Sp(u) of the old one.

Script format, one step per line (``#`` starts a comment)::

    HR i | HL i | CYC k | CONJ <word> | COMM i | BRAID i | FACT <id> i
    SUB <relator-id> i | SUBR <relator-id> i | EXPAND | NAME i <token>
    CAP i

``SUBR`` substitutes right-to-left (rhs back to lhs).  ``NAME`` replaces a
letter by a token for the same twist.  ``CAP`` is the boundary daisy step of
a lifted word: ``alpha{2g+1}^{n-1} alphap`` with right side ``delta`` becomes
``zeta1 .. zetan`` with right side ``bdelta1 .. bdeltan``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import homology as hom
from .catalog import Atom, Catalog, CatalogError, free_reduce, invert
from .words import (
    Factorization,
    Letter,
    Verdict,
    WordError,
    effective_class,
    letters_equal,
    letters_image,
    normal_form,
    reduce_tail,
)


class MoveError(WordError):
    pass


# ---------------------------------------------------------------------------
# naming


@lru_cache(maxsize=None)
def _name_table(cat_key: tuple) -> dict:
    cat = _CATALOGS[cat_key]
    table = {}
    for name in cat.entries:
        nf = normal_form(cat, Letter.twist(name))
        table.setdefault(nf, name)
    return table


_CATALOGS: dict[tuple, Catalog] = {}


def _key(cat: Catalog) -> tuple:
    k = (cat.genus, cat.boundary, cat.lifted)
    _CATALOGS.setdefault(k, cat)
    return k


def simplify(cat: Catalog, letter: Letter) -> Letter:
    """Rename a letter to a catalog curve when its normal form is one."""
    if not letter.conjugator:
        return letter
    memo = cat.__dict__.setdefault("_simplify_memo", {})
    got = memo.get(letter)
    if got is not None:
        return got
    nf = normal_form(cat, letter)
    name = _name_table(_key(cat)).get(nf)
    if name is not None:
        got = Letter.twist(name)
    elif len(nf[0]) < len(letter.conjugator):
        got = Letter(*nf)
    else:
        got = letter
    memo[letter] = got
    return got


def letters_disjoint(cat: Catalog, x: Letter, y: Letter) -> bool:
    """Disjointness derivable from the catalog: after moving both letters by
    a common conjugator, the bases are registered disjoint."""
    wx, bx = normal_form(cat, x)
    wy, by = normal_form(cat, y)
    rel, b = reduce_tail(cat, free_reduce(invert(wy) + wx), bx)
    rel = list(rel)
    while rel and cat.are_disjoint(rel[0][0], by):
        rel.pop(0)
    return not rel and b != by and cat.are_disjoint(b, by)


def braid_partner(cat: Catalog, x: Letter, y: Letter) -> bool:
    wx, bx = normal_form(cat, x)
    wy, by = normal_form(cat, y)
    rel, b = reduce_tail(cat, free_reduce(invert(wx) + wy), by)
    rel = list(rel)
    while rel and cat.are_disjoint(rel[0][0], bx):
        rel.pop(0)
    return not rel and frozenset((b, bx)) in cat.braid_pairs


# ---------------------------------------------------------------------------
# moves


def _check_index(w: Factorization, i: int, width: int) -> int:
    if not 1 <= i or i + width - 1 > len(w):
        raise MoveError(f"index {i} out of range for a word of length {len(w)}")
    return i - 1


def _same_window(cat: Catalog, old: Sequence[Letter], new: Sequence[Letter], what: str) -> None:
    if letters_image(cat, old) != letters_image(cat, new):
        raise MoveError(f"{what}: Sp image of the rewritten window changed")


def _splice(w: Factorization, k: int, width: int, new: Sequence[Letter], what: str, **kw) -> Factorization:
    cat = w.catalog
    old = w.letters[k:k + width]
    new = tuple(new)
    _same_window(cat, old, new, what)
    return w.replace(w.letters[:k] + new + w.letters[k + width:], **kw)


def _check_moved(cat: Catalog, new: Letter, by: Letter, old: Letter, power: int, what: str) -> None:
    """T_a T_b = T_{T_a(b)} T_a on homology, and a transvection only depends
    on its class up to sign, so a Hurwitz move preserves the window image
    exactly when the new class is +-T_by^power of the old one."""
    want = hom.twist_vector(effective_class(cat, old), effective_class(cat, by), power)
    got = effective_class(cat, new)
    if got != want and got != hom.neg(want):
        raise MoveError(f"{what}: Sp image of the rewritten window changed")


def hurwitz_right(w: Factorization, i: int) -> Factorization:
    """(x, y) -> (x(y), x) at positions i, i+1."""
    k = _check_index(w, i, 2)
    cat = w.catalog
    x, y = w.letters[k], w.letters[k + 1]
    new = simplify(cat, y.conjugated(x.as_word()))
    _check_moved(cat, new, x, y, 1, "HR")
    return w.replace(w.letters[:k] + (new, x) + w.letters[k + 2:])


def hurwitz_left(w: Factorization, i: int) -> Factorization:
    """(x, y) -> (y, y^{-1}(x)) at positions i, i+1; inverse of HR."""
    k = _check_index(w, i, 2)
    cat = w.catalog
    x, y = w.letters[k], w.letters[k + 1]
    new = simplify(cat, x.conjugated(invert(y.as_word())))
    _check_moved(cat, new, y, x, -1, "HL")
    return w.replace(w.letters[:k] + (y, new) + w.letters[k + 2:])


def cyclic_permute(w: Factorization, k: int) -> Factorization:
    """Move the first k letters to the end (negative k rotates the other way)."""
    if not w.letters:
        return w
    k %= len(w)
    return w.replace(w.letters[k:] + w.letters[:k])


def global_conjugate(w: Factorization, u: Sequence[Atom]) -> Factorization:
    cat = w.catalog
    try:
        m = cat.image(u)
    except CatalogError as exc:
        raise MoveError(str(exc)) from None
    new = []
    images: dict = {}
    for x in w.letters:
        y = simplify(cat, x.conjugated(u))
        old = effective_class(cat, x)
        c = images.get(old)
        if c is None:
            c = images[old] = m.apply(old)
        d = effective_class(cat, y)
        if c != d and c != hom.neg(d):
            raise MoveError("CONJ: letter class is not Sp(u) of the old class")
        new.append(y)
    return w.replace(new)


def commute_adjacent(w: Factorization, i: int) -> Factorization:
    k = _check_index(w, i, 2)
    cat = w.catalog
    x, y = w.letters[k], w.letters[k + 1]
    if letters_equal(cat, x, y) is Verdict.EQUAL:
        # swapping two copies of one twist changes nothing
        return w.replace(w.letters[:k] + (y, x) + w.letters[k + 2:])
    if hom.pairing(effective_class(cat, x), effective_class(cat, y)) != 0:
        raise MoveError(f"COMM {i}: letters intersect on homology")
    if not letters_disjoint(cat, x, y):
        raise MoveError(f"COMM {i}: {x} and {y} are not registered disjoint")
    # transvections of classes pairing to zero commute, so the window image is kept
    return w.replace(w.letters[:k] + (y, x) + w.letters[k + 2:])


def braid_rewrite(w: Factorization, i: int) -> Factorization:
    k = _check_index(w, i, 3)
    cat = w.catalog
    x, y, z = w.letters[k:k + 3]
    if letters_equal(cat, x, z) is not Verdict.EQUAL or not braid_partner(cat, x, y):
        raise MoveError(f"BRAID {i}: no aba pattern on a registered braid pair")
    return _splice(w, k, 3, (y, x, y), "BRAID")


def _match(cat: Catalog, letters: Sequence[Letter], names: Sequence[str]) -> bool:
    return len(letters) == len(names) and all(
        letters_equal(cat, x, Letter.twist(n)) is Verdict.EQUAL for x, n in zip(letters, names)
    )


def apply_action_fact(w: Factorization, fact_id: str, i: int) -> Factorization:
    """actor . t_source -> t_target . actor, or t_target . actor -> actor . t_source."""
    cat = w.catalog
    try:
        fact = cat.fact(fact_id)
    except CatalogError as exc:
        raise MoveError(str(exc)) from None
    if any(s < 0 for _, s in fact.actor):
        raise MoveError(f"FACT {fact_id}: actor is not a positive word")
    actor = [n for n, _ in fact.actor]
    n = len(actor) + 1
    k = _check_index(w, i, n)
    window = w.letters[k:k + n]
    tw = Letter.twist
    if _match(cat, window, actor + [fact.source]):
        new = [tw(fact.target)] + [tw(a) for a in actor]
    elif _match(cat, window, [fact.target] + actor):
        new = [tw(a) for a in actor] + [tw(fact.source)]
    else:
        raise MoveError(f"FACT {fact_id} {i}: pattern mismatch")
    return _splice(w, k, n, new, f"FACT {fact_id}")


def substitute(w: Factorization, relator_id: str, i: int, reverse: bool = False) -> Factorization:
    cat = w.catalog
    rel = cat.relators.get(relator_id)
    if rel is None:
        raise MoveError(f"unknown relator {relator_id!r}")
    src, dst = (rel.rhs, rel.lhs) if reverse else (rel.lhs, rel.rhs)
    k = _check_index(w, i, len(src))
    if not _match(cat, w.letters[k:k + len(src)], src):
        raise MoveError(f"SUB {relator_id} {i}: no literal match")
    return _splice(w, k, len(src), [Letter.twist(n) for n in dst], f"SUB {relator_id}")


def expand_aliases(w: Factorization) -> Factorization:
    """Rewrite every letter as (primitive conjugator, primitive base)."""
    cat = w.catalog
    return w.replace([Letter(*normal_form(cat, x)) for x in w.letters])


def rename(w: Factorization, i: int, letter: Letter) -> Factorization:
    k = _check_index(w, i, 1)
    cat = w.catalog
    if letters_equal(cat, w.letters[k], letter) is not Verdict.EQUAL:
        raise MoveError(f"NAME {i}: {w.letters[k]} and {letter} are not the same twist")
    return w.replace(w.letters[:k] + (letter,) + w.letters[k + 1:])


def cap_boundary(w: Factorization, i: int) -> Factorization:
    """alpha{2g+1}^{n-1} alphap = zeta1 .. zetan, trading delta for bdelta1..n.

    This is the daisy relation alpha{2g+1}^{n-1} bdelta1 .. bdeltan alphap
    = zeta1 .. zetan delta on the surface with n boundary components, used
    with delta and the bdelta central.
    """
    if not w.lifted or w.rhs != ("delta",):
        raise MoveError("CAP needs a lifted word with right side delta")
    cat = w.catalog
    n = cat.boundary
    k = _check_index(w, i, n)
    top = cat.chain_name(2 * w.genus + 1)
    if not _match(cat, w.letters[k:k + n], [top] * (n - 1) + ["alphap"]):
        raise MoveError(f"CAP {i}: expected {top}^{n - 1} alphap")
    new = [Letter.twist(f"zeta{j}") for j in range(1, n + 1)]
    return _splice(w, k, n, new, "CAP", rhs=tuple(f"bdelta{j}" for j in range(1, n + 1)))


# ---------------------------------------------------------------------------
# scripts


@dataclass(frozen=True)
class Step:
    op: str
    args: tuple = ()
    line: int = 0

    def __str__(self) -> str:
        return " ".join([self.op, *map(str, self.args)])


@dataclass
class DerivationTrace:
    initial: Factorization
    steps: list[Step] = field(default_factory=list)
    words: list[Factorization] = field(default_factory=list)

    @property
    def final(self) -> Factorization:
        return self.words[-1] if self.words else self.initial

    def substitutions(self) -> list[tuple[str, int]]:
        """(relator id, type p) for each daisy substitution performed."""
        out = []
        cat = self.initial.catalog
        for s in self.steps:
            if s.op in ("SUB", "SUBR"):
                rel = cat.relators[s.args[0]]
                if rel.kind == "daisy":
                    out.append((rel.id, rel.p))
        return out


class ScriptError(MoveError):
    def __init__(self, step_index: int, step: Step, reason: str):
        self.step_index = step_index
        self.step = step
        self.reason = reason
        super().__init__(f"step {step_index} (line {step.line}: {step}): {reason}")


_ARITY = {"HR": 1, "HL": 1, "CYC": 1, "COMM": 1, "BRAID": 1, "FACT": 2, "SUB": 2, "SUBR": 2,
          "EXPAND": 0, "NAME": 2, "CAP": 1, "CONJ": None}


def parse_script(text: str) -> list[Step]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *rest = line.split()
        op = op.upper()
        if op not in _ARITY:
            raise WordError(f"line {lineno}: unknown step {op!r}")
        if op == "CONJ":
            steps.append(Step(op, (" ".join(rest),), lineno))
            continue
        if len(rest) != _ARITY[op]:
            raise WordError(f"line {lineno}: {op} takes {_ARITY[op]} argument(s)")
        if op in ("FACT", "SUB", "SUBR"):
            args = [str(rest[0]), _int(rest[1], lineno)]
        elif op == "NAME":
            args = [_int(rest[0], lineno), rest[1]]
        elif op == "EXPAND":
            args = []
        else:
            args = [_int(rest[0], lineno)]
        steps.append(Step(op, tuple(args), lineno))
    return steps


def _int(s: str, lineno: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise WordError(f"line {lineno}: expected an integer, got {s!r}") from None


def format_script(steps: Iterable[Step]) -> str:
    return "".join(f"{s}\n" for s in steps)


def apply_step(w: Factorization, step: Step) -> Factorization:
    from .wordfile import parse_conjugator, parse_letter_token

    op, a = step.op, step.args
    if op == "HR":
        return hurwitz_right(w, a[0])
    if op == "HL":
        return hurwitz_left(w, a[0])
    if op == "CYC":
        return cyclic_permute(w, a[0])
    if op == "CONJ":
        return global_conjugate(w, parse_conjugator(a[0], w.catalog))
    if op == "COMM":
        return commute_adjacent(w, a[0])
    if op == "BRAID":
        return braid_rewrite(w, a[0])
    if op == "FACT":
        return apply_action_fact(w, a[0], a[1])
    if op == "SUB":
        return substitute(w, a[0], a[1])
    if op == "SUBR":
        return substitute(w, a[0], a[1], reverse=True)
    if op == "EXPAND":
        return expand_aliases(w)
    if op == "NAME":
        return rename(w, a[0], parse_letter_token(a[1], w.catalog))
    if op == "CAP":
        return cap_boundary(w, a[0])
    raise MoveError(f"unknown step {op}")


def replay_script(steps: Sequence[Step] | str, initial: Factorization) -> DerivationTrace:
    if isinstance(steps, str):
        steps = parse_script(steps)
    trace = DerivationTrace(initial)
    w = initial
    for n, step in enumerate(steps, start=1):
        try:
            w = apply_step(w, step)
        except (WordError, CatalogError) as exc:
            raise ScriptError(n, step, str(exc)) from None
        trace.steps.append(step)
        trace.words.append(w)
    return trace
