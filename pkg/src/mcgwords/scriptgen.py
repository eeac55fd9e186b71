"""Generate the shipped derivation scripts from the proof builders.

    python3 -m mcgwords.scriptgen [outdir]

The scripts are data: :mod:`mcgwords.library` only replays them.  Closed
scripts for H(g,1), H(g,2) and H_daisy2(g) are projections of the lifted
ones (capping the boundary), preceded by the rotation that turns H(g) into
the projection of Lemma 5.2's word.
"""
from __future__ import annotations

import sys
from pathlib import Path

from .builder import ScriptBuilder
from .catalog import Catalog, catalog_for, project_name
from .derivations import (
    Chain,
    asc,
    desc,
    lemma41a,
    lemma41b,
    lemma42a,
    lemma42b,
    lemma51,
    lemma52,
    lemma53,
    theorem41_lifted,
    theorem41_lifted_tail,
    theorem42_lifted,
    theorem42_daisy,
    theorem42_lifted_tail,
    theorem43i,
    theorem43ii,
    theorem44,
)
from .engine import Step, format_script
from .words import Factorization, projected_letter
from .wordfile import letter_token, parse_conjugator, parse_letter_token

LEMMA_GENUS = 3
THEOREM_GENERA = (3, 4, 5, 6)


class ProjectionError(ValueError):
    pass


def project_step(step: Step, cat: Catalog) -> Step | None:
    """The closed-surface step replaying ``step`` of a lifted script; None
    for steps that only touch the boundary (CAP)."""
    op, args = step.op, step.args
    if op == "CAP":
        return None
    if op in ("SUB", "SUBR") and args[0] not in ("D",):
        raise ProjectionError(f"relator {args[0]} has no closed counterpart")
    if op == "CONJ":
        atoms = []
        for name, s in parse_conjugator(args[0], cat):
            p = name if name in cat.conjugator_aliases else project_name(cat, name)
            if p is not None:
                atoms.append(f"{p}^-1" if s < 0 else p)
        return Step(op, (" ".join(atoms),)) if atoms else None
    if op == "NAME":
        x = projected_letter(cat, parse_letter_token(args[1], cat))
        return Step(op, (args[0], letter_token(x)))
    return step


def project_steps(steps: list[Step], cat: Catalog) -> list[Step]:
    out = []
    for s in steps:
        p = s if s.op == "#" else project_step(s, cat)
        if p is not None:
            out.append(p)
    return out


def script_text(steps: list[Step]) -> str:
    lines = []
    for s in steps:
        lines.append(f"# {s.args[0]}" if s.op == "#" else str(s))
    return "\n".join(lines) + "\n"


def _closed(g: int, names) -> Factorization:
    return Factorization.from_names(g, names)


def _lifted(g: int, names, n: int = 1, rhs=("delta",)) -> Factorization:
    return Factorization.from_names(g, names, boundary=n, rhs=rhs, lifted=True)


def lemma_scripts() -> dict[str, str]:
    ch = Chain()
    g = LEMMA_GENUS
    out = {}
    for k in range(2, 7):
        b = ScriptBuilder(_closed(g, desc(ch, k - 1) + desc(ch, k)))
        lemma41a(b, 1, k, ch)
        out[f"lemma4.1a-k{k}"] = b.script_text()
        b = ScriptBuilder(_closed(g, asc(ch, k) + asc(ch, k - 1)))
        lemma41b(b, 1, k, ch)
        out[f"lemma4.1b-k{k}"] = b.script_text()
    for l in range(0, 4):
        b = ScriptBuilder(_closed(g, desc(ch, 2 * l) + desc(ch, 2 * l + 1)))
        lemma42a(b, 1, l, ch)
        out[f"lemma4.2a-l{l}"] = b.script_text()
        b = ScriptBuilder(_closed(g, asc(ch, 2 * l + 1) + asc(ch, 2 * l)))
        lemma42b(b, 1, l, ch)
        out[f"lemma4.2b-l{l}"] = b.script_text()
    return out


def lifted_scripts(g: int) -> dict[str, str]:
    ch = Chain(True)
    n = 2 * g
    out = {}
    b = ScriptBuilder(_lifted(g, asc(ch, n) * (n + 1), rhs=()))
    lemma51(b, 1, g, ch)
    out[f"lem1-g{g}"] = b.script_text()
    b = ScriptBuilder(_lifted(g, asc(ch, n) * (2 * n + 2)))
    lemma52(b, g, ch)
    out[f"lem2-g{g}"] = b.script_text()
    after_lem2 = b.word
    b = ScriptBuilder(after_lem2)
    lemma53(b, g, ch)
    out[f"lem3-g{g}"] = b.script_text()
    lem3_steps = b.steps

    cat41 = catalog_for(g, n + 6, True)
    b = ScriptBuilder(after_lem2.replace(boundary=n + 6))
    lemma53(b, g, ch)
    mark = len(b.steps)
    theorem41_lifted_tail(b, g)
    out[f"thm4.1-lift-g{g}"] = script_text(b.steps[mark:])
    rot = [Step("#", ("rotate H(g) into the projection of Lemma 5.2",)), Step("CYC", (n + 1,))]
    out[f"H1-g{g}"] = script_text(rot + project_steps(lem3_steps + b.steps[mark:], cat41))

    cat42 = catalog_for(g, 8, True)
    b = ScriptBuilder(after_lem2.replace(boundary=8))
    lemma53(b, g, ch)
    mark = len(b.steps)
    theorem42_lifted_tail(b, g, daisy=False)
    mid = len(b.steps)
    out[f"squares-lift-g{g}"] = script_text(b.steps[mark:])
    theorem42_daisy(b, g)
    out[f"thm4.2-lift-g{g}"] = script_text(b.steps[mid:])
    out[f"H2-g{g}"] = script_text(rot + project_steps(lem3_steps + b.steps[mark:], cat42))
    d2 = [Step("#", ("Theorem 4.7: the D_{2(g-1)} left side inside the odd-squares form",)),
          Step("SUB", ("D2", 4 * g + 3))]
    out[f"Hd2-g{g}"] = script_text(rot + project_steps(lem3_steps + b.steps[mark:mid], cat42) + d2)
    return out


def closed_scripts(g: int) -> dict[str, str]:
    ch = Chain()
    out = {}
    b = ScriptBuilder(_closed(g, asc(ch, 2 * g + 1) * (2 * g + 2)))
    theorem43i(b, g, 0)
    out[f"thm4.3i-g{g}"] = b.script_text()
    width = g - 2
    blk = 2 * (2 * g + 1)
    for k in range(1, g + 2):
        lines = [f"# {k} daisy substitutions of type g-1, the last one D'"]
        for j in range(k):
            s = 1 + j * (blk - width) + 2 * g
            lines.append(f"SUB {'Dp' if j == k - 1 else 'D'} {s}")
        out[f"thm4.3i-g{g}-k{k}"] = "\n".join(lines) + "\n"
    b = ScriptBuilder(_closed(g, asc(ch, 2 * g + 1) * (2 * g + 2)))
    theorem43ii(b, g)
    out[f"thm4.3ii-g{g}"] = b.script_text()
    b = ScriptBuilder(_closed(g, asc(ch, 2 * g) * (4 * g + 2)))
    theorem44(b, g)
    out[f"thm4.4-g{g}"] = b.script_text()
    return out


def all_scripts() -> dict[str, str]:
    out = lemma_scripts()
    for g in THEOREM_GENERA:
        out.update(lifted_scripts(g))
        out.update(closed_scripts(g))
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    outdir = Path(argv[0]) if argv else Path(__file__).with_name("scripts")
    outdir.mkdir(parents=True, exist_ok=True)
    scripts = all_scripts()
    for name, text in sorted(scripts.items()):
        (outdir / f"{name}.script").write_text(text)
    print(f"wrote {len(scripts)} scripts to {outdir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
