"""Named words and relators, and the shipped derivations that produce them.

Word ids look like ``H@g=4``, ``I@g=3,k=2`` or ``lantern@g=3``::

    H, I, G                 base words of the hyperelliptic relations
    chain@g=..,k=..         (c_1 .. c_k)^{k+1} (k odd) or ^{2k+2} (k even)
    lantern, D, Dp, D2      daisy relators (left side; see relator_sides)
    H1, H2, H_daisy2        H(g,1), H(g,2), H_daisy2(g)
    I@g=..,k=..             I(g,k); k = 0 gives I(g) itself
    I_daisy2, G_daisy       I_daisy2(g), G_daisy(g)

Derived words come from replaying scripts stored in ``mcgwords/scripts``.
Scripts are shipped for genus 3..6; other genera are generated on the fly
from the same builders.
"""
from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from importlib import resources

from .catalog import CatalogError, catalog_for
from .engine import DerivationTrace, Step, parse_script, replay_script
from .words import Factorization, project

BASE = ("H", "I", "G", "chain", "lantern", "D", "Dp", "D2")
DERIVED = ("H1", "H2", "H_daisy2", "I", "I_daisy2", "G_daisy")
LIFTED = ("lem1", "lem2", "lem3", "chain-lift", "thm4.1-lift", "thm4.2-lift")

_ALIASES = {
    "H(g,1)": "H1", "H(g,2)": "H2", "Hd2": "H_daisy2", "Id2": "I_daisy2", "Gd": "G_daisy",
    "D_{g-1}": "D", "D'_{g-1}": "Dp", "D_{2(g-1)}": "D2",
}


class LibraryError(ValueError):
    pass


@dataclass(frozen=True)
class WordId:
    name: str
    params: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def g(self) -> int:
        return self.params["g"]

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return self.name + "@" + ",".join(f"{k}={v}" for k, v in self.params.items())


def parse_word_id(text: str) -> WordId:
    """``I@g=3,k=2`` -> WordId('I', {'g': 3, 'k': 2})."""
    m = re.fullmatch(r"\s*([A-Za-z_][\w.'()\-{}]*)\s*(?:@\s*(.*))?", text)
    if not m:
        raise LibraryError(f"bad word id {text!r}")
    name = _ALIASES.get(m.group(1), m.group(1))
    params = {}
    if m.group(2):
        for part in m.group(2).split(","):
            pm = re.fullmatch(r"\s*([a-z]+)\s*=\s*(-?\d+)\s*", part)
            if not pm:
                raise LibraryError(f"bad parameter {part!r} in {text!r}")
            params[pm.group(1)] = int(pm.group(2))
    if name not in BASE + DERIVED + LIFTED:
        raise LibraryError(f"unknown word {name!r}")
    if "g" not in params:
        raise LibraryError(f"{text!r}: genus parameter g= is required")
    return WordId(name, params)


def _as_id(wid) -> WordId:
    return wid if isinstance(wid, WordId) else parse_word_id(wid)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise LibraryError(msg)


# ---------------------------------------------------------------------------
# base words


def chain(g: int, k: int, prefix: str = "c") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, k + 1)]


def h_names(g: int) -> list[str]:
    c = chain(g, 2 * g + 1)
    return (c[:-1] + [c[-1]] * 2 + c[-2::-1]) * 2


def i_names(g: int) -> list[str]:
    return chain(g, 2 * g + 1) * (2 * g + 2)


def g_names(g: int) -> list[str]:
    return chain(g, 2 * g) * (4 * g + 2)


def chain_power(k: int) -> int:
    return k + 1 if k % 2 else 2 * k + 2


def relator_sides(wid) -> tuple[Factorization, Factorization]:
    """Both sides of a daisy relator or chain relation as closed words.

    For daisy relators the left side is the boundary side.  For chain@k the
    right side is empty when the chain closes up (k = 2g or 2g+1); otherwise
    it is the chain's boundary multicurve, which has no catalog name, so the
    right side is returned empty and callers compare against the boundary
    transvections directly.
    """
    wid = _as_id(wid)
    g = wid.g
    if wid.name == "chain":
        k = wid.params.get("k", 2 * g + 1)
        _need(1 <= k <= 2 * g + 1, f"chain needs 1 <= k <= 2g+1, got k={k}")
        lhs = Factorization.from_names(g, chain(g, k) * chain_power(k))
        return lhs, Factorization(g, ())
    _need(wid.name in ("lantern", "D", "Dp", "D2"), f"{wid.name} is not a relator")
    _need(g >= (2 if wid.name == "lantern" else 3), f"{wid.name} needs a larger genus")
    cat = catalog_for(g)
    rel = cat.relators[wid.name]
    return Factorization.from_names(g, rel.lhs), Factorization.from_names(g, rel.rhs)


def build_word(wid) -> Factorization:
    """The literal factorization named by ``wid`` (derived words are derived)."""
    wid = _as_id(wid)
    g = wid.g
    _need(g >= 1, "genus must be >= 1")
    if wid.name == "H":
        _need(g >= 1, "H(g) needs g >= 1")
        return Factorization.from_names(g, h_names(g))
    if wid.name == "I" and not wid.params.get("k"):
        return Factorization.from_names(g, i_names(g))
    if wid.name == "G":
        return Factorization.from_names(g, g_names(g))
    if wid.name in ("chain", "lantern", "D", "Dp", "D2"):
        return relator_sides(wid)[0]
    if wid.name in DERIVED:
        return derive(wid)[0]
    return lifted_relation(wid)[0]


# ---------------------------------------------------------------------------
# scripts


def script_text(name: str) -> str | None:
    res = resources.files("mcgwords").joinpath("scripts", f"{name}.script")
    return res.read_text() if res.is_file() else None


def _generated(name: str, g: int) -> str:
    from . import scriptgen

    if name.startswith(("thm4.3", "thm4.4")):
        scripts = scriptgen.closed_scripts(g)
    else:
        scripts = scriptgen.lifted_scripts(g)
    return scripts[name]


def load_script(name: str, g: int | None = None) -> list[Step]:
    text = script_text(name)
    if text is None:
        if g is None:
            raise LibraryError(f"no shipped script {name!r}")
        text = _generated(name, g)
    return parse_script(text)


def run_scripts(initial: Factorization, names: list[str], g: int | None = None) -> DerivationTrace:
    """Replay several scripts in turn; the traces are concatenated."""
    trace = DerivationTrace(initial)
    w = initial
    for name in names:
        t = replay_script(load_script(name, g), w)
        trace.steps.extend(t.steps)
        trace.words.extend(t.words)
        w = t.final
    return trace


def derive(wid) -> tuple[Factorization, DerivationTrace]:
    """Replay the shipped script(s) producing a derived word.  Results are
    cached; words are immutable, but callers must not mutate the trace."""
    wid = _as_id(wid)
    return _derive(wid.name, wid.g, wid.params.get("k", 0))


@lru_cache(maxsize=None)
def _derive(name: str, g: int, k: int) -> tuple[Factorization, DerivationTrace]:
    _need(name in DERIVED, f"{name} is not a derived word")
    _need(g >= 3, f"{name}@g={g}: the daisy relators need g >= 3")
    if name in ("H1", "H2", "H_daisy2"):
        tag = {"H1": "H1", "H2": "H2", "H_daisy2": "Hd2"}[name]
        trace = run_scripts(build_word(f"H@g={g}"), [f"{tag}-g{g}"], g)
    elif name == "I":
        _need(0 <= k <= g + 1, f"I(g,k) needs 0 <= k <= g+1, got k={k}")
        if k == 0:
            trace = run_scripts(Factorization.from_names(g, i_names(g)), [f"thm4.3i-g{g}"], g)
        else:
            # the rearrangement is shared by every k; only the substitutions differ
            _, pre = _derive("I", g, 0)
            tail = run_scripts(pre.final, [f"thm4.3i-g{g}-k{k}"], g)
            trace = DerivationTrace(pre.initial, pre.steps + tail.steps, pre.words + tail.words)
    elif name == "I_daisy2":
        trace = run_scripts(Factorization.from_names(g, i_names(g)), [f"thm4.3ii-g{g}"], g)
    else:
        trace = run_scripts(Factorization.from_names(g, g_names(g)), [f"thm4.4-g{g}"], g)
    return trace.final, trace


def _lifted(g: int, names: list[str], n: int = 1, rhs=("delta",)) -> Factorization:
    return Factorization.from_names(g, names, boundary=n, rhs=rhs, lifted=True)


def lifted_relation(wid) -> tuple[Factorization, DerivationTrace]:
    """Relations on the surface with boundary (Lemmas 5.1-5.3, Theorems
    4.1 and 4.2 before capping)."""
    wid = _as_id(wid)
    g = wid.g
    name = wid.name
    _need(name in LIFTED, f"{name} is not a lifted relation")
    _need(g >= 2, "lifted relations need g >= 2")
    asc = chain(g, 2 * g, "alpha")
    delta = asc * (4 * g + 2)
    if name == "lem1":
        start = _lifted(g, asc * (2 * g + 1), rhs=())
        trace = run_scripts(start, [f"lem1-g{g}"], g)
    elif name == "chain-lift":
        start = _lifted(g, delta)
        trace = DerivationTrace(start)
    elif name in ("lem2", "lem3"):
        names = [f"lem2-g{g}"] + ([f"lem3-g{g}"] if name == "lem3" else [])
        trace = run_scripts(_lifted(g, delta), names, g)
    elif name == "thm4.1-lift":
        _need(g >= 3, "Theorem 4.1 needs g >= 3")
        start = _lifted(g, delta, n=2 * g + 6)
        trace = run_scripts(start, [f"lem2-g{g}", f"lem3-g{g}", f"thm4.1-lift-g{g}"], g)
    else:
        _need(g >= 3, "Theorem 4.2 needs g >= 3")
        start = _lifted(g, delta, n=8)
        trace = run_scripts(start, [f"lem2-g{g}", f"lem3-g{g}", f"squares-lift-g{g}",
                                    f"thm4.2-lift-g{g}"], g)
    return trace.final, trace


def lifted_counterpart(name: str) -> str | None:
    return {"thm4.1-lift": "H1", "thm4.2-lift": "H2", "lem2": "H", "lem3": "H"}.get(name)


def boundary_census(w: Factorization) -> list[str]:
    """Boundary twists the lifted word equals (its right side)."""
    return list(w.rhs)


# ---------------------------------------------------------------------------
# lemma scripts (shipped for genus 3)

LEMMA_GENUS = 3


def lemma_initial(kind: str, param: int) -> Factorization:
    """Starting word of the shipped Lemma 4.1 / 4.2 scripts."""
    g = LEMMA_GENUS
    c = lambda i: f"c{i}"
    desc = lambda hi: [c(i) for i in range(hi, 0, -1)]
    asc = lambda hi: [c(i) for i in range(1, hi + 1)]
    if kind == "4.1a":
        names = desc(param - 1) + desc(param)
    elif kind == "4.1b":
        names = asc(param) + asc(param - 1)
    elif kind == "4.2a":
        names = desc(2 * param) + desc(2 * param + 1)
    elif kind == "4.2b":
        names = asc(2 * param + 1) + asc(2 * param)
    else:
        raise LibraryError(f"unknown lemma {kind!r}")
    return Factorization.from_names(g, names)


def replay_lemma(kind: str, param: int) -> DerivationTrace:
    tag = {"4.1a": "k", "4.1b": "k", "4.2a": "l", "4.2b": "l"}[kind]
    return run_scripts(lemma_initial(kind, param), [f"lemma{kind}-{tag}{param}"])


def shipped_scripts() -> list[str]:
    d = resources.files("mcgwords").joinpath("scripts")
    return sorted(p.name[:-len(".script")] for p in d.iterdir() if p.name.endswith(".script"))


def projection_matches(lifted: Factorization, closed: Factorization) -> bool:
    return project(lifted).letters == closed.letters


def catalog_error_types():
    return (CatalogError, LibraryError)
