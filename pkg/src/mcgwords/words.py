"""Letters and factorizations.

A :class:`Letter` is the positive twist ``w t_c w^{-1}`` stored as a freely
reduced conjugator ``w`` (a word of signed twists) and a base curve name.
Conjugator atoms may name any catalog curve, including derived curves, and
the conjugator aliases ``phi`` and ``h``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from . import homology as hom
from .catalog import Atom, Catalog, catalog_for, free_reduce, invert, split_name
from .homology import HomClass, SpElement


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Letter:
    conjugator: tuple[Atom, ...]
    base: str

    def __post_init__(self):
        object.__setattr__(self, "conjugator", free_reduce(self.conjugator))

    @classmethod
    def twist(cls, name: str) -> "Letter":
        return cls((), name)

    def as_word(self) -> tuple[Atom, ...]:
        """The twist as a word of signed atoms: w c w^{-1}."""
        return self.conjugator + ((self.base, 1),) + invert(self.conjugator)

    def conjugated(self, by: Sequence[Atom]) -> "Letter":
        return Letter(tuple(by) + self.conjugator, self.base)

    def __str__(self) -> str:
        if not self.conjugator:
            return self.base
        return f"[{format_conjugator(self.conjugator)}:{self.base}]"


def format_conjugator(word: Sequence[Atom]) -> str:
    """Compress runs: (c1,+1),(c1,+1),(c2,-1) -> 'c1^2 c2^-1'."""
    parts = []
    i = 0
    while i < len(word):
        name, s = word[i]
        j = i
        while j < len(word) and word[j] == (name, s):
            j += 1
        n = (j - i) * s
        parts.append(name if n == 1 else f"{name}^{n}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class Factorization:
    """An ordered product of positive twists.

    ``rhs`` holds the boundary twists the product equals on a surface with
    boundary (``("delta",)`` or ``("bdelta1", ...)``); it is empty for a
    relator on the closed surface.
    """

    genus: int
    letters: tuple[Letter, ...]
    boundary: int = 0
    rhs: tuple[str, ...] = ()
    lifted: bool = False

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def catalog(self) -> Catalog:
        return catalog_for(self.genus, self.boundary, self.lifted)

    def replace(self, letters: Iterable[Letter] | None = None, **kw) -> "Factorization":
        d = dict(genus=self.genus, letters=self.letters, boundary=self.boundary, rhs=self.rhs, lifted=self.lifted)
        if letters is not None:
            d["letters"] = tuple(letters)
        d.update(kw)
        return Factorization(**d)

    def __add__(self, other: "Factorization") -> "Factorization":
        return self.replace(self.letters + other.letters)

    def __str__(self) -> str:
        return " ".join(compress_tokens([str(x) for x in self.letters]))

    @classmethod
    def from_names(cls, g: int, names: Iterable[str], **kw) -> "Factorization":
        return cls(g, tuple(Letter.twist(n) for n in names), **kw)


def compress_tokens(tokens: Sequence[str]) -> list[str]:
    out = []
    i = 0
    while i < len(tokens):
        j = i
        while j < len(tokens) and tokens[j] == tokens[i]:
            j += 1
        n = j - i
        out.append(tokens[i] if n == 1 else f"{tokens[i]}^{n}")
        i = j
    return out


# ---------------------------------------------------------------------------
# homology of letters and words


def apply_word(cat: Catalog, word: Sequence[Atom], v: HomClass) -> HomClass:
    """Apply the mapping class of ``word`` (functional order) to a class."""
    for name, s in reversed(cat.expand_word(word)):
        c = cat.hom_class(name)
        k = hom.pairing(v, c)
        if k:
            v = hom.add(v, c, s * k)
    return v


def _memo(cat: Catalog, name: str) -> dict:
    # catalogs are immutable once built, so per-catalog caches are safe
    return cat.__dict__.setdefault(name, {})


def effective_class(cat: Catalog, letter: Letter) -> HomClass:
    memo = _memo(cat, "_class_memo")
    got = memo.get(letter)
    if got is None:
        got = memo[letter] = apply_word(cat, letter.conjugator, cat.hom_class(letter.base))
    return got


def letters_image(cat: Catalog, letters: Iterable[Letter]) -> SpElement:
    return hom.twist_product([(effective_class(cat, x), 1) for x in letters], cat.genus)


def word_image(w: Factorization) -> SpElement:
    """Product of the letters' transvections; for lifted words this is the
    image of the projection to the closed surface."""
    return letters_image(w.catalog, w.letters)


def conjugator_image(cat: Catalog, word: Sequence[Atom]) -> SpElement:
    return cat.image(word)


# ---------------------------------------------------------------------------
# normalization


def normal_form(cat: Catalog, letter: Letter) -> tuple[tuple[Atom, ...], str]:
    """Expand aliases, reduce, then strip the conjugator tail using
    stabilizers (disjoint curves, the base itself) and registered action facts.

    Conjugators are reduced in the group where registered disjoint curves
    commute, and written in a canonical order, so the result does not depend
    on how commuting atoms were interleaved.
    """
    memo = _memo(cat, "_nf_memo")
    got = memo.get(letter)
    if got is None:
        conj, base = cat.resolve(letter.base)
        got = memo[letter] = reduce_tail(cat, cat.expand_word(letter.conjugator) + conj, base)
    return got


def commuting_reduce(cat: Catalog, word: Sequence[Atom]) -> tuple[Atom, ...]:
    """Cancel x ... x^{-1} whenever every atom in between commutes with x."""
    w = list(free_reduce(word))
    changed = True
    while changed:
        changed = False
        for i, (name, s) in enumerate(w):
            for j in range(i + 1, len(w)):
                n2, s2 = w[j]
                if n2 == name and s2 == -s:
                    del w[j], w[i]
                    changed = True
                    break
                if n2 == name or not cat.are_disjoint(n2, name):
                    break
            if changed:
                break
    return tuple(w)


def canonical_order(cat: Catalog, word: Sequence[Atom]) -> tuple[Atom, ...]:
    """Lexicographically least rewriting of ``word`` by swapping adjacent
    commuting atoms."""
    rest = list(word)
    out = []
    while rest:
        best = None
        seen: set[str] = set()
        for i, a in enumerate(rest):
            if a[0] not in seen and all(_commute(cat, b, a[0]) for b in seen):
                if best is None or _atom_key(a) < _atom_key(rest[best]):
                    best = i
            seen.add(a[0])
        out.append(rest.pop(best))
    return tuple(out)


def _commute(cat: Catalog, a: str, b: str) -> bool:
    """Distinct registered-disjoint curves (cached per catalog)."""
    memo = _memo(cat, "_commute_memo")
    key = (a, b)
    got = memo.get(key)
    if got is None:
        got = memo[key] = a != b and cat.are_disjoint(a, b)
    return got


def _atom_key(a: Atom):
    stem, idx = split_name(a[0])
    return (stem, idx or 0, a[1])


def reduce_tail(cat: Catalog, word: Sequence[Atom], base: str) -> tuple[tuple[Atom, ...], str]:
    word = list(canonical_order(cat, commuting_reduce(cat, word)))
    while word:
        # drop atoms that fix the base and can be moved to the end
        keep = []
        dropped = False
        for i, (name, _) in enumerate(word):
            later = word[i + 1:]
            if cat.are_disjoint(name, base) and all(cat.are_disjoint(b, name) and b != name for b, _ in later):
                dropped = True
                continue
            keep.append(word[i])
        if dropped:
            word = keep
            continue
        hit = _tail_fact(cat, word, base)
        if hit is None:
            break
        cut, base = hit
        word = list(canonical_order(cat, commuting_reduce(cat, word[:len(word) - cut])))
    return tuple(word), base


def _tail_fact(cat: Catalog, word: list[Atom], base: str) -> tuple[int, str] | None:
    """Shortest registered fact whose actor (or its inverse) ends ``word``."""
    best = None
    for cut, new in _chain_tail_candidates(cat, word, base):
        if best is None or cut < best[0]:
            best = (cut, new)
    for f in cat.facts.values():
        if f.id.startswith(("desc:", "asc:")):
            continue
        n = len(f.actor)
        if n > len(word):
            continue
        tail = tuple(word[-n:])
        if f.source == base and tail == f.actor:
            cand = (n, f.target)
        elif f.target == base and tail == invert(f.actor):
            cand = (n, f.source)
        else:
            continue
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def _chain_index(cat: Catalog, name: str) -> int | None:
    stem, idx = split_name(name)
    if stem == ("alpha" if cat.lifted else "c") and idx is not None:
        return idx
    return None


def _chain_tail_candidates(cat: Catalog, word: list[Atom], base: str):
    """Chain facts whose actor, or its inverse, is a tail of ``word``.

    A tail run increasing left to right (a_lo .. a_hi, or the inverse of
    a_hi .. a_lo) sends a_j to a_{j+1} for lo <= j < hi; a decreasing run
    sends a_j to a_{j-1} for lo < j <= hi.  The sign of the run does not
    matter.
    """
    j = _chain_index(cat, base)
    if j is None:
        return
    idx = [(_chain_index(cat, n), s) for n, s in word]
    for sign in (1, -1):
        for step in (1, -1):
            # run[0] is the last atom, run[k] = run[0] - k * step
            run: list[int] = []
            for k in range(len(idx) - 1, -1, -1):
                c, s = idx[k]
                if c is None or s != sign or (run and c != run[-1] - step):
                    break
                run.append(c)
            for length in range(2, len(run) + 1):
                lo, hi = min(run[:length]), max(run[:length])
                if step == 1 and lo <= j < hi:
                    yield length, cat.chain_name(j + 1)
                elif step == -1 and lo < j <= hi:
                    yield length, cat.chain_name(j - 1)


class Verdict(str, Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    HOMOLOGY_ONLY = "homology-equal-only"


def letters_equal(cat: Catalog, x: Letter, y: Letter) -> Verdict:
    nx = normal_form(cat, x)
    ny = normal_form(cat, y)
    if nx == ny:
        return Verdict.EQUAL
    # x = y iff (wy^{-1} wx)(bx) = by
    for (wa, ba), (wb, bb) in ((nx, ny), (ny, nx)):
        rel = reduce_tail(cat, free_reduce(invert(wb) + wa), ba)
        if rel == ((), bb):
            return Verdict.EQUAL
    cx = effective_class(cat, x)
    cy = effective_class(cat, y)
    if cx == cy or cx == hom.neg(cy):
        return Verdict.HOMOLOGY_ONLY
    return Verdict.DISTINCT


def projected_letter(cat: Catalog, letter: Letter) -> Letter | None:
    """Image of a lifted letter under capping the boundary; None if trivial."""
    from .catalog import project_name

    base = project_name(cat, letter.base)
    if base is None:
        return None
    conj = []
    for n, s in letter.conjugator:
        if n in cat.conjugator_aliases:
            conj.append((n, s))
            continue
        p = project_name(cat, n)
        if p is not None:
            conj.append((p, s))
    return Letter(tuple(conj), base)


def project(w: Factorization) -> Factorization:
    if not w.lifted:
        return w
    cat = w.catalog
    letters = [projected_letter(cat, x) for x in w.letters]
    return Factorization(w.genus, tuple(x for x in letters if x is not None))
