"""Invariants of the Lefschetz fibration defined by a positive relator.

For a relator w in the closed genus-g mapping class group with m letters
the total space X has

    e(X) = 4 - 4g + m

and, when the monodromy is hyperelliptic, a signature given by the Endo
formula in terms of the numbers of non-separating (s0) and separating
(s_h, separation genus h) vanishing cycles:

    sigma = -(g+1)/(2g+1) s0 + sum_h (4h(g-h)/(2g+1) - 1) s_h

Words obtained by daisy substitutions are not hyperelliptic in general, so
their signature is taken from the base word plus p - 1 per substitution of
type p (a rational blowdown).  The report says which path produced sigma.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import homology as hom
from .catalog import Catalog, catalog_for
from .homology import AbelianGroupDesc
from .words import Factorization, Letter, effective_class, project


class InvariantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CycleCensus:
    s0: int
    sh: tuple[tuple[int, int], ...] = ()  # sorted (h, count) pairs
    unknown: int = 0  # zero-class letters with no genus label

    @property
    def total(self) -> int:
        return self.s0 + sum(n for _, n in self.sh) + self.unknown

    @property
    def complete(self) -> bool:
        return self.unknown == 0

    def separating(self) -> int:
        return sum(n for _, n in self.sh) + self.unknown

    def __add__(self, other: "CycleCensus") -> "CycleCensus":
        d = dict(self.sh)
        for h, n in other.sh:
            d[h] = d.get(h, 0) + n
        return CycleCensus(self.s0 + other.s0, tuple(sorted((h, n) for h, n in d.items() if n)),
                           self.unknown + other.unknown)

    def __sub__(self, other: "CycleCensus") -> "CycleCensus":
        neg = CycleCensus(-other.s0, tuple((h, -n) for h, n in other.sh), -other.unknown)
        return self + neg


def _closed(w: Factorization) -> Factorization:
    if w.lifted:
        raise InvariantError("invariants are defined for closed-surface words; cap the boundary first")
    return w


def letter_separating_genus(cat: Catalog, x: Letter) -> int | None:
    """Genus label of a separating letter: conjugation keeps it, so it is
    the label of the base curve (after resolving derived names)."""
    _, base = cat.resolve(x.base)
    return cat.entry(base).separating_genus


def census_of_letters(cat: Catalog, letters: Sequence[Letter]) -> CycleCensus:
    s0 = unknown = 0
    sh: dict[int, int] = {}
    for x in letters:
        if not hom.is_zero(effective_class(cat, x)):
            s0 += 1
            continue
        h = letter_separating_genus(cat, x)
        if h is None:
            unknown += 1
        else:
            sh[h] = sh.get(h, 0) + 1
    return CycleCensus(s0, tuple(sorted(sh.items())), unknown)


def classify_cycles(w: Factorization) -> CycleCensus:
    w = _closed(w)
    return census_of_letters(w.catalog, w.letters)


def euler_char(w: Factorization) -> int:
    w = _closed(w)
    return 4 - 4 * w.genus + len(w)


# ---------------------------------------------------------------------------
# signature


def endo_sigma(census: CycleCensus, g: int) -> Fraction:
    """The Endo formula evaluated on a census, without integrality check."""
    if not census.complete:
        raise InvariantError("census has separating cycles of unknown genus")
    s = Fraction(-(g + 1), 2 * g + 1) * census.s0
    for h, n in census.sh:
        s += (Fraction(4 * h * (g - h), 2 * g + 1) - 1) * n
    return s


def sigma_hyperelliptic(census: CycleCensus, g: int) -> int:
    s = endo_sigma(census, g)
    if s.denominator != 1:
        raise InvariantError(f"Endo formula gives the non-integer {s}; the census is not hyperelliptic")
    return int(s)


@dataclass(frozen=True)
class SubstitutionRecord:
    """Daisy substitutions applied, as (relator id, type p) pairs."""

    items: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_trace(cls, trace) -> "SubstitutionRecord":
        return cls(tuple(trace.substitutions()))

    @property
    def types(self) -> list[int]:
        return [p for _, p in self.items]

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.types:
            out[p] = out.get(p, 0) + 1
        return out

    def __bool__(self) -> bool:
        return bool(self.items)


def sigma_substituted(base_sigma: int, record: SubstitutionRecord | Sequence[int]) -> int:
    types = record.types if isinstance(record, SubstitutionRecord) else list(record)
    return base_sigma + sum(p - 1 for p in types)


def rational_blowdown_delta(p: int) -> tuple[int, int, int, int, int]:
    """(de, dsigma, dc1^2, dchi_h, db2+) for a rational blowdown along C_p."""
    if p < 2:
        raise InvariantError("daisy type p must be >= 2")
    return (-(p - 1), p - 1, p - 1, 0, 0)


# ---------------------------------------------------------------------------
# spin


@dataclass(frozen=True)
class SpinWitness:
    l: int
    letters: tuple[int, ...]  # 1-based positions of v_1 .. v_l
    sum_letter: int | None  # position of a letter with class v (None for l = 0)
    pairing_sum: int

    def describe(self, w: Factorization) -> str:
        name = lambda i: str(w.letters[i - 1])
        if self.l == 0:
            return f"l=0: separating {name(self.sum_letter)}"
        parts = " + ".join(name(i) for i in self.letters)
        return f"l={self.l}: {parts} = {name(self.sum_letter)}, pairings {self.pairing_sum}"


def _pack(v: Sequence[int]) -> tuple[int, int]:
    """Z/2 class as (a bits, b bits)."""
    a = b = 0
    for i in range(0, len(v), 2):
        if v[i] % 2:
            a |= 1 << (i // 2)
        if v[i + 1] % 2:
            b |= 1 << (i // 2)
    return a, b


def _z2_pair(u: tuple[int, int], v: tuple[int, int]) -> int:
    return bin((u[0] & v[1]) ^ (u[1] & v[0])).count("1") & 1


def spin1_witness(w: Factorization, l_max: int = 3) -> SpinWitness | None:
    """Search for vanishing cycles v_1 .. v_l (l <= l_max) whose sum v is
    also a vanishing cycle and with l + sum_{i<j} v_i.v_j even.  Any such
    witness shows the total space is not spin.  l = 0 is a separating cycle.
    """
    w = _closed(w)
    if l_max < 0:
        raise InvariantError("l_max must be >= 0")
    cat = w.catalog
    classes = [_pack(effective_class(cat, x)) for x in w.letters]
    first: dict[tuple[int, int], int] = {}
    positions: dict[tuple[int, int], list[int]] = {}
    for i, c in enumerate(classes, start=1):
        first.setdefault(c, i)
        positions.setdefault(c, []).append(i)
    zero = (0, 0)
    if zero in first:
        return SpinWitness(0, (), first[zero], 0)
    distinct = list(first)
    for l in range(1, l_max + 1):
        for combo in itertools.combinations_with_replacement(distinct, l):
            # each repeated class needs that many letters
            if any(combo.count(c) > len(positions[c]) for c in set(combo)):
                continue
            va = vb = 0
            for a, b in combo:
                va ^= a
                vb ^= b
            if (va, vb) not in first:
                continue
            pairs = sum(_z2_pair(combo[i], combo[j]) for i in range(l) for j in range(i + 1, l))
            if (l + pairs) % 2:
                continue
            used: dict = {}
            letters = []
            for c in combo:
                k = used.get(c, 0)
                letters.append(positions[c][k])
                used[c] = k + 1
            return SpinWitness(l, tuple(letters), first[(va, vb)], pairs)
    return None


# ---------------------------------------------------------------------------
# non-hyperellipticity


def relator_census_delta(cat: Catalog, relator_id: str) -> CycleCensus:
    """Census change of one substitution lhs -> rhs."""
    rel = cat.relators[relator_id]
    lhs = census_of_letters(cat, [Letter.twist(n) for n in rel.lhs])
    rhs = census_of_letters(cat, [Letter.twist(n) for n in rel.rhs])
    return rhs - lhs


def substituted_census(base: CycleCensus, record: SubstitutionRecord, g: int) -> CycleCensus:
    cat = catalog_for(g)
    out = base
    for rid, _ in record.items:
        out = out + relator_census_delta(cat, rid)
    return out


@dataclass(frozen=True)
class Certificate:
    discrepancy: Fraction
    endo: Fraction
    provenance: int

    @property
    def certified(self) -> bool:
        return self.discrepancy != 0


def nonhyperelliptic_certificate(base_census: CycleCensus, record: SubstitutionRecord, g: int) -> Certificate | None:
    """If the substituted word were hyperelliptic its signature would be
    given by the Endo formula on its census; the rational blowdown gives
    another value.  A nonzero difference certifies non-hyperellipticity.

    None when not applicable (empty record, or a base with separating
    cycles).
    """
    if not record or base_census.separating():
        return None
    base_sigma = sigma_hyperelliptic(base_census, g)
    prov = sigma_substituted(base_sigma, record)
    endo = endo_sigma(substituted_census(base_census, record, g), g)
    return Certificate(prov - endo, endo, prov)


def discrepancy_closed_form(g: int, counts: dict[int, int]) -> Fraction:
    """Closed forms from the proof: 2(g-1)(g-2)k/(2g+1) for k substitutions
    of type 2(g-1), g(g-2)K/(2g+1) for K of type g-1."""
    d = Fraction(0)
    for p, n in counts.items():
        if p == 2 * (g - 1):
            d += Fraction(2 * (g - 1) * (g - 2) * n, 2 * g + 1)
        elif p == g - 1:
            d += Fraction(g * (g - 2) * n, 2 * g + 1)
        else:
            raise InvariantError(f"no closed form for type {p} in genus {g}")
    return d


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class SectionAudit:
    ok: bool
    n: int
    reason: str = ""


def section_audit(lifted: Factorization, n: int | None = None, closed: Factorization | None = None) -> SectionAudit:
    """A lift whose right side is t_{delta_1} .. t_{delta_n}, each boundary
    twist once, shows n disjoint sections of self-intersection -1."""
    if not lifted.lifted:
        return SectionAudit(False, 0, "not a lifted word")
    rhs = list(lifted.rhs)
    got = len(rhs)
    if rhs == ["delta"]:
        got = 1
    else:
        names = [f"bdelta{i}" for i in range(1, lifted.boundary + 1)]
        dup = sorted({x for x in rhs if rhs.count(x) > 1})
        if dup:
            return SectionAudit(False, got, f"boundary twist {dup[0]} occurs more than once")
        if sorted(rhs) != sorted(names):
            return SectionAudit(False, got, "right side is not one twist per boundary component")
    boundary_letters = [x for x in lifted.letters if x.base == "delta" or x.base.startswith("bdelta")]
    if boundary_letters:
        return SectionAudit(False, got, "boundary twists on the left side")
    if closed is not None and project(lifted).letters != closed.letters:
        return SectionAudit(False, got, "projection is not the claimed closed word")
    if n is not None and got != n:
        return SectionAudit(False, got, f"expected {n} sections, found {got}")
    return SectionAudit(True, got)


# ---------------------------------------------------------------------------
# report


@dataclass
class InvariantReport:
    genus: int
    k: int | None
    m: int
    e: int
    sigma: int
    sigma_source: str
    b2plus: int | None
    b2minus: int | None
    c1sq: int
    chi_h: int
    h1: AbelianGroupDesc
    spin: str
    homeo_label: str | None
    hyperelliptic: str
    notes: list[str] = field(default_factory=list)

    COLUMNS = ("genus", "k", "m", "e", "sigma", "b2plus", "b2minus", "c1sq", "chi_h", "h1", "spin",
               "homeo_label", "hyperelliptic")

    def row(self) -> dict:
        d = {c: getattr(self, c) for c in self.COLUMNS}
        d["h1"] = str(self.h1)
        return d


def homeo_label(b2plus: int, b2minus: int) -> str:
    plus = "CP2" if b2plus == 1 else f"{b2plus}CP2"
    minus = "CP2bar" if b2minus == 1 else f"{b2minus}CP2bar"
    if b2minus == 0:
        return plus
    return f"{plus} # {minus}"


def invariant_report(w: Factorization, base: Factorization | None = None,
                     record: SubstitutionRecord = SubstitutionRecord(), k: int | None = None,
                     l_max: int = 3, sections: int = 0) -> InvariantReport:
    """``base`` is the hyperelliptic word the substitutions in ``record``
    were applied to; without it, ``w`` itself must be hyperelliptic.

    ``sections`` is the number of disjoint (-1)-sections known from a lift;
    one is enough to make the intersection form odd.
    """
    w = _closed(w)
    g = w.genus
    e = euler_char(w)
    notes = []
    census = classify_cycles(w)
    cert = None
    if base is None:
        if record:
            raise InvariantError("a substitution record needs the base word")
        sigma = sigma_hyperelliptic(census, g)
        source = "endo"
        hyper = "undetermined"
    else:
        base_census = classify_cycles(base)
        sigma = sigma_substituted(sigma_hyperelliptic(base_census, g), record)
        source = "blowdown"
        shift = sum(p - 1 for p in record.types)
        if euler_char(base) - shift != e:
            raise InvariantError("euler characteristic does not match the substitution record")
        if substituted_census(base_census, record, g) != census:
            notes.append("census differs from the one predicted by the record")
        cert = nonhyperelliptic_certificate(base_census, record, g)
        hyper = f"non-hyperelliptic (discrepancy {cert.discrepancy})" if cert and cert.certified else "undetermined"
    if (e + sigma) % 4:
        raise InvariantError(f"e + sigma = {e + sigma} is not divisible by 4")
    h1 = hom.h1_cokernel([effective_class(w.catalog, x) for x in w.letters], g)
    wit = spin1_witness(w, l_max)
    if wit:
        spin = f"non-spin ({wit.describe(w)})"
    elif sections:
        spin = "non-spin (section of self-intersection -1)"
    elif sigma % 16:
        spin = "non-spin (Rohlin: sigma not divisible by 16)"
    else:
        spin = "undetermined"
    b2p = b2m = None
    label = None
    if h1.is_trivial():
        b2 = e - 2
        b2p, b2m = (b2 + sigma) // 2, (b2 - sigma) // 2
        if spin.startswith("non-spin"):
            label = homeo_label(b2p, b2m)
    return InvariantReport(g, k, len(w), e, sigma, source, b2p, b2m, 2 * e + 3 * sigma, (e + sigma) // 4,
                           h1, spin, label, hyper, notes)
