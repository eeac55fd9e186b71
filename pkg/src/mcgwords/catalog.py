"""Named curves on the reference surface and the relators built from them.

Two alphabets are supported.  The closed alphabet lives on a closed genus-g
surface: chain curves ``c1 .. c{2g+1}``, derived curves ``d, dbar, e, ebar,
f`` (stored as conjugation recipes), and the daisy configuration curves
``x, xp, y`` plus the lantern curves ``w, l1, l2, l3``.  The lifted alphabet
lives on a surface with boundary: ``alpha1 .. alpha{2g+1}``, ``alphap``,
``chi``, ``zeta``, boundary twists ``bdelta`` and ``delta``, and the derived
``beta, betabar, gamma, gammabar``.

Homology of lifted curves is computed through the projection to the closed
surface (boundary-parallel curves project to zero).

Figures are not machine readable, so the daisy curve classes are pinned by
solving for signs that make each relator the identity on homology.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import homology as hom
from .homology import HomClass, SpElement

Atom = tuple[str, int]  # (curve name, +1 or -1): one twist or its inverse


class CatalogError(ValueError):
    pass


class GenusError(CatalogError):
    pass


@dataclass(frozen=True)
class CurveEntry:
    name: str
    hom_class: HomClass
    separating_genus: int | None = None
    definition: tuple[tuple[Atom, ...], str] | None = None
    projection: str | None = None  # closed-surface name for lifted curves

    @property
    def z2_class(self) -> HomClass:
        return hom.mod2(self.hom_class)

    @property
    def is_separating(self) -> bool:
        return hom.is_zero(self.hom_class)


@dataclass(frozen=True)
class ActionFact:
    """``actor(source) = target``, admitted as a rewrite axiom."""

    id: str
    actor: tuple[Atom, ...]
    source: str
    target: str


@dataclass(frozen=True)
class Relator:
    """``lhs`` and ``rhs`` are letter tokens with equal group image.

    For daisy relators ``lhs`` holds the boundary twists and ``rhs`` the
    interior curves, so substituting lhs -> rhs shortens a word by ``p - 1``.
    """

    id: str
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    kind: str
    p: int | None = None


# ---------------------------------------------------------------------------
# word helpers


def power(name: str, n: int) -> tuple[Atom, ...]:
    s = 1 if n > 0 else -1
    return ((name, s),) * abs(n)


def invert(word: Sequence[Atom]) -> tuple[Atom, ...]:
    return tuple((n, -s) for n, s in reversed(word))


def free_reduce(word: Iterable[Atom]) -> tuple[Atom, ...]:
    out: list[Atom] = []
    for a in word:
        if out and out[-1][0] == a[0] and out[-1][1] == -a[1]:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


_TOKEN = re.compile(r"^([a-z]+?)(\d*)$")


def split_name(name: str) -> tuple[str, int | None]:
    m = _TOKEN.match(name)
    if not m:
        raise CatalogError(f"bad curve name {name!r}")
    stem, idx = m.groups()
    return stem, int(idx) if idx else None


# ---------------------------------------------------------------------------
# sign search for daisy configurations


def daisy_sign_solutions(
    g: int,
    lhs_classes: Sequence[HomClass],
    center: HomClass,
    petals: Sequence[HomClass],
    fixed: dict[int, HomClass] | None = None,
) -> list[tuple[HomClass, ...]]:
    """All choices ``v_i = petal_i + s_i * center`` (s_i = +-1) that make the
    product of transvections of the ``v_i`` equal that of ``lhs_classes``.

    Entries of ``fixed`` are not searched.  Candidates must be zero or
    primitive, as classes of simple closed curves are.
    """
    fixed = fixed or {}
    target = hom.product((hom.transvection(c) for c in lhs_classes), g)
    free = [i for i in range(len(petals)) if i not in fixed]
    sols = []
    for signs in itertools.product((1, -1), repeat=len(free)):
        vs = dict(fixed)
        ok = True
        for i, s in zip(free, signs):
            v = hom.add(petals[i], center, s)
            if not _zero_or_primitive(v):
                ok = False
                break
            vs[i] = v
        if not ok:
            continue
        got = hom.product((hom.transvection(vs[i]) for i in range(len(petals))), g)
        if got == target:
            sols.append(tuple(vs[i] for i in range(len(petals))))
    return sols


def _zero_or_primitive(v: Sequence[int]) -> bool:
    from math import gcd

    d = 0
    for x in v:
        d = gcd(d, x)
    return d in (0, 1)


# ---------------------------------------------------------------------------
# the catalog


@dataclass
class Catalog:
    genus: int
    boundary: int = 0
    lifted: bool = False
    entries: dict[str, CurveEntry] = field(default_factory=dict)
    disjoint: set[frozenset[str]] = field(default_factory=set)
    braid_pairs: set[frozenset[str]] = field(default_factory=set)
    facts: dict[str, ActionFact] = field(default_factory=dict)
    relators: dict[str, Relator] = field(default_factory=dict)
    conjugator_aliases: dict[str, tuple[Atom, ...]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    # -- lookup -----------------------------------------------------------
    def __contains__(self, name: str) -> bool:
        return name in self.entries or name in self.conjugator_aliases

    def entry(self, name: str) -> CurveEntry:
        try:
            return self.entries[name]
        except KeyError:
            raise CatalogError(f"unknown curve {name!r} in genus {self.genus}") from None

    def hom_class(self, name: str) -> HomClass:
        return self.entry(name).hom_class

    def chain_name(self, i: int) -> str:
        return f"alpha{i}" if self.lifted else f"c{i}"

    @property
    def chain_length(self) -> int:
        return 2 * self.genus + 1

    # -- structure --------------------------------------------------------
    def is_primitive(self, name: str) -> bool:
        e = self.entry(name)
        return e.definition is None

    def expand_atom(self, atom: Atom) -> tuple[Atom, ...]:
        """Rewrite a twist (or conjugator alias) as a word in primitive twists."""
        name, s = atom
        if name in self.conjugator_aliases:
            w = self.conjugator_aliases[name]
            return w if s > 0 else invert(w)
        e = self.entry(name)
        if e.definition is None:
            return (atom,)
        conj, base = e.definition
        conj = self.expand_word(conj)
        inner = self.expand_atom((base, s))
        return conj + inner + invert(conj)

    def expand_word(self, word: Iterable[Atom]) -> tuple[Atom, ...]:
        out: list[Atom] = []
        for a in word:
            out.extend(self.expand_atom(a))
        return free_reduce(out)

    def resolve(self, name: str) -> tuple[tuple[Atom, ...], str]:
        """(conjugator, primitive base) with ``name`` = conjugator(base)."""
        e = self.entry(name)
        if e.definition is None:
            return (), name
        conj, base = e.definition
        inner_conj, prim = self.resolve(base)
        return free_reduce(self.expand_word(conj) + inner_conj), prim

    def are_disjoint(self, a: str, b: str) -> bool:
        return a == b or frozenset((a, b)) in self.disjoint

    def image(self, word: Iterable[Atom]) -> SpElement:
        pairs = [(self.hom_class(name), s) for name, s in self.expand_word(word)]
        return hom.twist_product(pairs, self.genus)

    def z2(self, name: str) -> HomClass:
        return self.entry(name).z2_class

    # -- registration -----------------------------------------------------
    def add(self, entry: CurveEntry) -> None:
        self.entries[entry.name] = entry

    def add_derived(self, name: str, conj: tuple[Atom, ...], base: str, **kw) -> None:
        cls = self.hom_class(base)
        for n, s in reversed(self.expand_word(conj)):
            cls = hom.twist_vector(cls, self.hom_class(n), s)
        self.add(CurveEntry(name, cls, definition=(conj, base), **kw))

    def register_fact(self, fact: ActionFact) -> None:
        got = self.hom_class(fact.source)
        for name, s in reversed(self.expand_word(fact.actor)):
            got = hom.twist_vector(got, self.hom_class(name), s)
        want = self.hom_class(fact.target)
        if got != want and got != hom.neg(want):
            raise CatalogError(f"action fact {fact.id} fails on homology")
        self.facts[fact.id] = fact

    def register_relator(self, rel: Relator) -> None:
        self.relators[rel.id] = rel

    def fact(self, fid: str) -> ActionFact:
        if fid not in self.facts:
            f = chain_fact(self, fid)
            if f is None:
                raise CatalogError(f"unknown action fact {fid!r}")
            self.register_fact(f)
        return self.facts[fid]


# ---------------------------------------------------------------------------
# chain facts: (a_k ... a_m)(a_{i+1}) = a_i and (a_m ... a_k)(a_i) = a_{i+1}


def chain_fact(cat: Catalog, fid: str) -> ActionFact | None:
    m = re.fullmatch(r"(desc|asc):(\d+):(\d+):(\d+)", fid)
    if not m:
        return None
    kind, lo, hi, i = m.group(1), *map(int, m.groups()[1:])
    n = cat.chain_length
    if not (1 <= lo <= i < hi <= n):
        raise CatalogError(f"action fact {fid!r} out of range")
    a = cat.chain_name
    if kind == "desc":
        actor = tuple((a(j), 1) for j in range(hi, lo - 1, -1))
        return ActionFact(fid, actor, a(i + 1), a(i))
    actor = tuple((a(j), 1) for j in range(lo, hi + 1))
    return ActionFact(fid, actor, a(i), a(i + 1))


def chain_facts(cat: Catalog) -> Iterable[ActionFact]:
    n = cat.chain_length
    for lo in range(1, n + 1):
        for hi in range(lo + 1, n + 1):
            for i in range(lo, hi):
                for kind in ("desc", "asc"):
                    yield cat.fact(f"{kind}:{lo}:{hi}:{i}")


# ---------------------------------------------------------------------------
# builders


def chain_classes(g: int) -> list[HomClass]:
    """c_{2i} -> a_i, c_{2i-1} -> b_{i-1} + b_i (b_0 = b_{g+1} = 0)."""
    out = []
    for j in range(1, 2 * g + 2):
        if j % 2 == 0:
            out.append(hom.a_class(g, j // 2))
        else:
            i = (j + 1) // 2
            out.append(hom.add(hom.b_class(g, i - 1), hom.b_class(g, i)))
    return out


def standard_chain(g: int) -> list[CurveEntry]:
    if g < 1:
        raise GenusError("genus must be >= 1")
    return [CurveEntry(f"c{j}", cls) for j, cls in enumerate(chain_classes(g), start=1)]


def _add_chain(cat: Catalog, prefix: str) -> None:
    g = cat.genus
    for j, cls in enumerate(chain_classes(g), start=1):
        cat.add(CurveEntry(f"{prefix}{j}", cls, projection=f"c{j}" if prefix != "c" else None))
    n = 2 * g + 1
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            cat.disjoint.add(frozenset((f"{prefix}{i}", f"{prefix}{j}")))
        if i < n:
            cat.braid_pairs.add(frozenset((f"{prefix}{i}", f"{prefix}{i + 1}")))


def _add_derived(cat: Catalog, a: str, names: dict[str, str]) -> None:
    """d/dbar/e/ebar (or beta/betabar/gamma/gammabar) and f."""
    n = 2 * cat.genus + 1
    for i in range(1, n):
        cat.add_derived(f"{names['d']}{i}", ((f"{a}{i + 1}", 1),), f"{a}{i}")
        cat.add_derived(f"{names['dbar']}{i}", ((f"{a}{i + 1}", -1),), f"{a}{i}")
        cat.add_derived(f"{names['e']}{i + 1}", ((f"{a}{i}", 1),), f"{a}{i + 1}")
        cat.add_derived(f"{names['ebar']}{i + 1}", ((f"{a}{i}", -1),), f"{a}{i + 1}")
    if "f" in names:
        for j in range(1, n):
            conj = ((f"{a}{j + 1}", -1),)
            if j > 1:
                conj += ((f"{a}{j - 1}", -1),)
            cat.add_derived(f"{names['f']}{j}", conj, f"{names['dbar']}{j}")


def phi_word(g: int, a: str = "c") -> tuple[Atom, ...]:
    """c_{2g+1}^{g+1} c_{2g-1}^{g} ... c_3^2 c_1."""
    out: list[Atom] = []
    for i in range(g + 1, 0, -1):
        out.extend(power(f"{a}{2 * i - 1}", i))
    return tuple(out)


def h_word(g: int, a: str = "c") -> tuple[Atom, ...]:
    return tuple((f"{a}{j}", 1) for j in range(1, 2 * g + 2))


def _solve_daisy(cat: Catalog, rel_id: str, lhs: Sequence[str], center: str,
                 petals: Sequence[str], fixed: dict[int, HomClass] | None = None) -> tuple[HomClass, ...]:
    g = cat.genus
    sols = daisy_sign_solutions(
        g,
        [cat.hom_class(n) for n in lhs],
        cat.hom_class(center),
        [cat.hom_class(n) for n in petals],
        fixed,
    )
    if not sols:
        raise CatalogError(f"{rel_id}: sign search found no solution")
    canon = {tuple(hom.canonical_sign(v) for v in s) for s in sols}
    if len(canon) > 1:
        cat.notes.append(f"{rel_id}: {len(canon)} homology solutions, first one used")
    return sols[0]


def _add_daisy_closed(cat: Catalog) -> None:
    g = cat.genus
    top = f"c{2 * g + 1}"
    if g >= 3:
        odd = [f"c{2 * j - 1}" for j in range(1, g + 1)]
        lhs = odd + [top] * (g - 2)
        xs = _solve_daisy(cat, "D", lhs, top, odd)
        for j, cls in enumerate(xs, start=1):
            cat.add(CurveEntry(f"x{j}", cls))
            # no Z/2 anchor for x'_j; the same classes solve the D' relator
            cat.add(CurveEntry(f"xp{j}", cls))
        cat.register_relator(Relator("D", tuple(lhs), tuple(f"x{j}" for j in range(1, g + 1)), "daisy", g - 1))
        cat.register_relator(Relator("Dp", tuple(lhs), tuple(f"xp{j}" for j in range(1, g + 1)), "daisy", g - 1))

        # D_{2(g-1)}: boundaries c_{2g+1}, c_{2g-1}, ..., c_3, c_3, ..., c_{2g-1}; center c_{2g+1}
        desc = [f"c{2 * i + 1}" for i in range(g, 0, -1)]
        asc = [f"c{2 * i + 1}" for i in range(1, g)]
        petals = desc + asc
        fixed = {0: (0,) * (2 * g)}
        for j in range(2, g + 1):
            fixed[g + j - 2] = cat.hom_class(f"x{j}")
        ys = _solve_daisy(cat, "D2", desc + asc + [top] * (2 * g - 3), top, petals, fixed)
        cat.add(CurveEntry("y1", ys[0], separating_genus=1))
        for i in range(2, g + 1):
            cat.add(CurveEntry(f"y{i}", ys[i - 1]))
        for j in range(2, g + 1):
            cat.add(CurveEntry(f"y{g + j - 1}", cat.hom_class(f"x{j}"), definition=((), f"x{j}")))
        lhs2 = tuple(n for i in range(1, g) for n in (f"c{2 * i + 1}",) * 2) + (top,) * (2 * g - 2)
        cat.register_relator(Relator("D2", lhs2, tuple(f"y{i}" for i in range(1, 2 * g)), "daisy", 2 * (g - 1)))
        # daisy curves live in the planar piece cut out by the odd chain curves
        daisy_names = [n for n in cat.entries if split_name(n)[0] in ("x", "xp", "y")
                       and cat.entries[n].definition is None]
        for n in daisy_names:
            for o in odd + [top]:
                cat.disjoint.add(frozenset((n, o)))
    _add_lantern(cat)


def _add_lantern(cat: Catalog) -> None:
    g = cat.genus
    if g == 2:
        # Sigma_2 cut along c3 and c5 is a sphere with four holes.
        lhs = ["c3", "c3", "c5", "c5"]
        petals = ["c5", "c3", "c3"]
        sols = _solve_daisy(cat, "lantern", lhs, "c5", petals, {0: (0,) * 4})
        bounds = ["c3", "c5"]
    else:
        # sphere with four holes bounded by c1, c3, c5 and w inside the
        # planar piece cut out by the odd chain curves (w = c7 when g = 3)
        wcls = hom.add(hom.add(cat.hom_class("c1"), cat.hom_class("c3"), -1), cat.hom_class("c5"))
        cat.add(CurveEntry("w", wcls))
        for o in range(1, 2 * g + 2, 2):
            if o != 7:
                cat.disjoint.add(frozenset(("w", f"c{o}")))
        lhs = ["c1", "c3", "c5", "w"]
        petals = ["c1", "c3", "w"]
        sols = _solve_daisy(cat, "lantern", lhs, "c5", petals)
        bounds = ["c1", "c3", "c5", "w"]
    for i, cls in enumerate(sols, start=1):
        cat.add(CurveEntry(f"l{i}", cls, separating_genus=1 if hom.is_zero(cls) else None))
        for b in bounds:
            cat.disjoint.add(frozenset((f"l{i}", b)))
    cat.register_relator(Relator("lantern", tuple(lhs), ("l1", "l2", "l3"), "daisy", 2))


def _add_chain_relators(cat: Catalog) -> None:
    """Chain relations in the closed group: (c_1 ... c_k)^{k+1} or ^{2k+2}
    equals boundary twists; on a closed surface only the full chains close up."""
    g = cat.genus
    a = cat.chain_name
    n = 2 * g + 1
    full = tuple(a(j) for j in range(1, n + 1)) * (2 * g + 2)
    cat.register_relator(Relator("chain_odd", full, (), "chain"))
    even = tuple(a(j) for j in range(1, 2 * g + 1)) * (4 * g + 2)
    cat.register_relator(Relator("chain_even", even, (), "chain"))


@lru_cache(maxsize=None)
def build_catalog(g: int) -> Catalog:
    """Closed-surface catalog for genus g (cached; treat as immutable)."""
    if g < 1:
        raise GenusError("genus must be >= 1")
    cat = Catalog(g)
    _add_chain(cat, "c")
    _add_derived(cat, "c", {"d": "d", "dbar": "dbar", "e": "e", "ebar": "ebar", "f": "f"})
    cat.conjugator_aliases["phi"] = phi_word(g)
    cat.conjugator_aliases["h"] = h_word(g)
    if g >= 2:
        _add_daisy_closed(cat)
        _add_chain_relators(cat)
        _add_turn_facts(cat, "c", f"c{2 * g + 1}")
    return cat


@lru_cache(maxsize=None)
def build_lifted_catalog(g: int, n: int = 1) -> Catalog:
    """Catalog on the genus-g surface with n boundary components."""
    if g < 2:
        raise GenusError("lifted alphabet needs genus >= 2")
    closed = build_catalog(g)
    cat = Catalog(g, boundary=n, lifted=True)
    _add_chain(cat, "alpha")
    top = 2 * g + 1
    cat.add(CurveEntry("alphap", closed.hom_class(f"c{top}"), projection=f"c{top}"))
    for j in range(1, 2 * g + 1):
        if j != 2 * g:
            cat.disjoint.add(frozenset(("alphap", f"alpha{j}")))
    cat.disjoint.add(frozenset(("alphap", f"alpha{top}")))
    cat.braid_pairs.add(frozenset(("alphap", f"alpha{2 * g}")))
    _add_derived(cat, "alpha", {"d": "beta", "dbar": "betabar", "e": "gamma", "ebar": "gammabar"})
    for name in list(cat.entries):
        e = cat.entries[name]
        stem, idx = split_name(name)
        proj = {"beta": "d", "betabar": "dbar", "gamma": "e", "gammabar": "ebar"}.get(stem)
        if proj:
            cat.entries[name] = CurveEntry(name, e.hom_class, definition=e.definition, projection=f"{proj}{idx}")
    zero = (0,) * (2 * g)
    if g >= 3:
        for j in range(1, g + 1):
            cat.add(CurveEntry(f"chi{j}", closed.hom_class(f"x{j}"), projection=f"x{j}"))
            for o in range(1, top + 1, 2):
                cat.disjoint.add(frozenset((f"chi{j}", f"alpha{o}")))
        odd = [f"alpha{2 * j - 1}" for j in range(1, g + 1)]
        cat.register_relator(Relator("D", tuple(odd + [f"alpha{top}"] * (g - 2)),
                                     tuple(f"chi{j}" for j in range(1, g + 1)), "daisy", g - 1))
    cat.add(CurveEntry("delta", zero, projection=""))
    for i in range(1, n + 1):
        cat.add(CurveEntry(f"bdelta{i}", zero, projection=""))
        cat.add(CurveEntry(f"zeta{i}", closed.hom_class(f"c{top}"), projection=f"c{top}"))
    boundary_like = ["delta"] + [f"bdelta{i}" for i in range(1, n + 1)]
    for b in boundary_like:
        for other in cat.entries:
            if other != b:
                cat.disjoint.add(frozenset((b, other)))
    cat.conjugator_aliases["phi"] = phi_word(g, "alpha")
    cat.conjugator_aliases["h"] = h_word(g, "alpha")
    cat.conjugator_aliases["deltachain"] = tuple((f"alpha{j}", 1) for j in range(1, 2 * g + 1)) * (4 * g + 2)
    _add_turn_facts(cat, "alpha", "alphap")
    # the odd chain alpha_1 .. alpha_{2g-1} bounds alpha_{2g+1} and alpha'
    lhs = tuple(f"alpha{j}" for j in range(1, 2 * g)) * (2 * g)
    cat.register_relator(Relator("chain_lift", lhs, (f"alpha{top}", "alphap"), "chain"))
    return cat


def _add_turn_facts(cat: Catalog, a: str, other: str) -> None:
    """The turn facts of the chain: with T = a_{2g} .. a_1 a_1 .. a_{2g},
    a_{2g+1} T a_{2g+1} fixes each a_i (i <= 2g) and T sends the second
    boundary curve (alpha', or c_{2g+1} once capped) to a_{2g+1}."""
    g = cat.genus
    top = 2 * g + 1
    turn = tuple((f"{a}{j}", 1) for j in range(2 * g, 0, -1)) + tuple((f"{a}{j}", 1) for j in range(1, 2 * g + 1))
    turn_full = ((f"{a}{top}", 1),) + turn + ((f"{a}{top}", 1),)
    for i in range(1, 2 * g + 1):
        cat.register_fact(ActionFact(f"turn-fix:{i}", turn_full, f"{a}{i}", f"{a}{i}"))
    cat.register_fact(ActionFact("turn-top", turn, other, f"{a}{top}"))


def catalog_for(g: int, boundary: int = 0, lifted: bool = False) -> Catalog:
    if lifted or boundary > 0:
        return build_lifted_catalog(g, max(boundary, 1))
    return build_catalog(g)


def project_name(cat: Catalog, name: str) -> str | None:
    """Closed-surface name of a lifted curve; None when it projects to 1."""
    if not cat.lifted:
        return name
    e = cat.entry(name)
    if e.projection is None:
        return name
    return e.projection or None


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    genus: int
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def first_failure(self) -> tuple[str, str] | None:
        for name, ok, detail in self.checks:
            if not ok:
                return name, detail
        return None

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))

    def __str__(self) -> str:
        lines = [f"catalog genus={self.genus}: {'pass' if self.ok else 'FAIL'}"]
        for name, ok, detail in self.checks:
            lines.append(f"  {'ok  ' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
        return "\n".join(lines)


def _pm(u: Sequence[int], v: Sequence[int]) -> bool:
    return tuple(u) == tuple(v) or tuple(u) == hom.neg(v)


def validate_catalog(cat: "Catalog | int") -> ValidationReport:
    """Re-check a closed catalog from its stored data.

    Nothing computed while building is trusted: the chain pattern, derived
    classes, action facts, relator images, daisy sign search and the Z/2
    anchors are all recomputed here.
    """
    if isinstance(cat, int):
        cat = build_catalog(cat)
    g = cat.genus
    rep = ValidationReport(g)
    n = 2 * g + 1
    cls = {j: cat.hom_class(f"c{j}") for j in range(1, n + 1)}

    bad = None
    # adjacent pairs first, so a corrupted curve is reported next to its neighbour
    pairs = [(i, i + 1) for i in range(1, n)] + [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1)]
    for i, j in pairs:
        p = hom.pairing(cls[i], cls[j])
        if (j == i + 1 and abs(p) != 1) or (j > i + 1 and p != 0):
            bad = f"<c{i},c{j}> = {p}"
            break
    rep.add("chain intersection pattern", bad is None, bad or "")

    bad = None
    for name, e in cat.entries.items():
        if e.definition is None:
            continue
        conj, base = e.definition
        v = cat.image(conj).apply(cat.hom_class(base))
        if not _pm(v, e.hom_class):
            bad = name
            break
    rep.add("derived classes", bad is None, f"{bad} does not match its recipe" if bad else "")

    bad = None
    for name, e in cat.entries.items():
        if e.separating_genus is not None and not hom.is_zero(e.hom_class):
            bad = f"{name} is labelled separating but has a nonzero class"
        elif e.separating_genus is None and not _zero_or_primitive(e.hom_class):
            bad = f"{name} has an imprimitive class"
        if bad:
            break
    rep.add("class shapes", bad is None, bad or "")

    bad = None
    facts = list(cat.facts.values())
    m = cat.chain_length
    chain = [chain_fact(cat, f"{kind}:{lo}:{hi}:{i}") for lo in range(1, m + 1)
             for hi in range(lo + 1, m + 1) for i in range(lo, hi) for kind in ("desc", "asc")]
    for f in facts + chain:
        v = cat.image(f.actor).apply(cat.hom_class(f.source))
        if not _pm(v, cat.hom_class(f.target)):
            bad = f.id
            break
    rep.add("action facts", bad is None, f"{bad} fails on homology" if bad else "")

    for rel in cat.relators.values():
        lhs = [(cat.hom_class(x), 1) for x in rel.lhs]
        rhs = [(cat.hom_class(x), 1) for x in rel.rhs]
        same = hom.twist_product(lhs, g) == hom.twist_product(rhs, g)
        detail = "" if same else "sides differ on homology"
        if same and rel.kind == "daisy" and len(rel.lhs) - len(rel.rhs) != rel.p - 1:
            same, detail = False, "length delta is not p - 1"
        rep.add(f"relator {rel.id}", same, detail)

    if g >= 3:
        odd = [cls[2 * j - 1] for j in range(1, g + 1)]
        lhs = odd + [cls[n]] * (g - 2)
        sols = daisy_sign_solutions(g, lhs, cls[n], odd)
        rep.add("D sign search", bool(sols), f"{len(sols)} solution(s)")

    z2 = lambda *names: hom.mod2([sum(t) for t in zip(*(cat.hom_class(x) for x in names))])
    anchors = [(f"dbar{2 * g}", (f"c{2 * g}", f"c{n}")), (f"e{2 * g}", (f"c{2 * g - 1}", f"c{2 * g}"))]
    if g >= 3:
        anchors.append((f"x{g}", (f"c{2 * g - 1}", f"c{n}")))
    for name, parts in anchors:
        ok = cat.z2(name) == z2(*parts)
        rep.add(f"Z/2 anchor {name} = {' + '.join(parts)}", ok, "" if ok else str(cat.z2(name)))

    if g >= 3:
        y1 = cat.entry("y1")
        ok = hom.is_zero(y1.hom_class) and y1.separating_genus == 1
        rep.add("y1 separating of genus 1", ok)
        nonzero = [x for x in cat.entries if split_name(x)[0] in ("x", "xp", "y") and x != "y1"]
        zeros = [x for x in nonzero if hom.is_zero(cat.hom_class(x))]
        rep.add("other daisy curves non-separating", not zeros, ", ".join(zeros))
    return rep


# ---------------------------------------------------------------------------
# dump / override

CATALOG_ENV = "MCGWORDS_CATALOG"


def dump_catalog(cat: Catalog) -> str:
    """One ``curve <name> <coords> [sep=<h>]`` line per primitive curve."""
    out = [f"catalog genus={cat.genus}"]
    for name, e in cat.entries.items():
        if e.definition is not None:
            continue
        line = f"curve {name} " + " ".join(map(str, e.hom_class))
        if e.separating_genus is not None:
            line += f" sep={e.separating_genus}"
        out.append(line)
    return "\n".join(out) + "\n"


def apply_overrides(cat: Catalog, text: str) -> Catalog:
    """A copy of ``cat`` with the classes listed in a dump replaced.

    Derived classes are recomputed from their recipes afterwards.
    """
    import copy

    new = copy.deepcopy(cat)
    for k in [k for k in new.__dict__ if k.startswith("_") and k.endswith("_memo")]:
        del new.__dict__[k]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("catalog"):
            m = re.fullmatch(r"catalog genus=(\d+)", line) if line else None
            if m and int(m.group(1)) != cat.genus:
                raise CatalogError(f"line {lineno}: override is for genus {m.group(1)}")
            continue
        parts = line.split()
        if parts[0] != "curve" or len(parts) < 2:
            raise CatalogError(f"line {lineno}: expected 'curve <name> <coords>'")
        name = parts[1]
        sep = None
        coords = parts[2:]
        if coords and coords[-1].startswith("sep="):
            sep = int(coords.pop()[4:])
        if len(coords) != 2 * cat.genus:
            raise CatalogError(f"line {lineno}: {name} needs {2 * cat.genus} coordinates")
        old = new.entries.get(name)
        proj = old.projection if old else None
        new.entries[name] = CurveEntry(name, tuple(int(x) for x in coords), separating_genus=sep, projection=proj)
    for name, e in list(new.entries.items()):
        if e.definition is not None:
            conj, base = e.definition
            new.add_derived(name, conj, base, separating_genus=e.separating_genus, projection=e.projection)
    return new


def catalog_with_env(g: int) -> Catalog:
    """The closed catalog, with the override file named by $MCGWORDS_CATALOG
    applied when set."""
    import os

    cat = build_catalog(g)
    path = os.environ.get(CATALOG_ENV)
    if path:
        with open(path) as fh:
            cat = apply_overrides(cat, fh.read())
    return cat
