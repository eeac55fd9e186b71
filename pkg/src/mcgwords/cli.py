"""Command line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
and parse errors.  Set MCGWORDS_CATALOG to a catalog dump to override curve
classes for ``catalog``.
"""
from __future__ import annotations

import argparse
import sys

from . import homology as hom
from .catalog import CATALOG_ENV, CatalogError, catalog_with_env, dump_catalog, validate_catalog
from .engine import MoveError
from .invariants import (
    InvariantError,
    SubstitutionRecord,
    invariant_report,
    section_audit,
    spin1_witness,
)
from .library import LibraryError, build_word, derive, lifted_relation, parse_word_id
from .tables import FORMATS, family_rows
from .wordfile import ParseError, Provenance, parse_wordfile, serialize_wordfile
from .words import Factorization, project, word_image


class UsageError(Exception):
    pass


def _range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <a>..<b> or <n>, got {text!r}") from None


def _read(path: str) -> tuple[Factorization, Provenance | None]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return parse_wordfile(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


# ---------------------------------------------------------------------------
# provenance


def _candidates(base_id: str, g: int) -> list[str]:
    name = parse_word_id(base_id).name
    if name == "H":
        return [f"H1@g={g}", f"H2@g={g}", f"H_daisy2@g={g}"]
    if name == "I":
        return [f"I@g={g},k={k}" for k in range(1, g + 2)] + [f"I_daisy2@g={g}"]
    if name == "G":
        return [f"G_daisy@g={g}"]
    return []


def match_provenance(prov: Provenance, g: int) -> tuple[str | None, SubstitutionRecord]:
    """The derived word id whose shipped derivation has this base and
    substitution census, with its record; (None, record by type) if none."""
    if not prov.subs:
        return None, SubstitutionRecord()
    if g >= 3:
        for wid in _candidates(prov.base, g):
            _, trace = derive(wid)
            rec = SubstitutionRecord.from_trace(trace)
            if rec.counts() == prov.subs:
                return wid, rec
    by_type = {g - 1: "D", 2 * (g - 1): "D2", 2: "lantern"}
    items = []
    for p, n in sorted(prov.subs.items()):
        if p not in by_type:
            raise UsageError(f"no relator of type {p} in genus {g}")
        items += [(by_type[p], p)] * n
    return None, SubstitutionRecord(tuple(items))


def provenance_for(wid: str) -> Provenance | None:
    w = parse_word_id(wid)
    g = w.g
    base = {"H1": "H", "H2": "H", "H_daisy2": "H", "I": "I", "I_daisy2": "I", "G_daisy": "G"}.get(w.name)
    if base is None or (w.name == "I" and not w.params.get("k")):
        return None
    _, trace = derive(wid)
    return Provenance(f"{base}@g={g}", SubstitutionRecord.from_trace(trace).counts())


_SECTIONS = {"H": lambda g: 1, "H1": lambda g: 2 * g + 6, "H2": lambda g: 8}


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    wid = parse_word_id(args.word_id)
    if wid.name in ("lem1", "lem2", "lem3", "chain-lift", "thm4.1-lift", "thm4.2-lift"):
        w = lifted_relation(wid)[0]
        prov = None
    else:
        w = build_word(wid)
        prov = provenance_for(args.word_id)
    text = serialize_wordfile(w, prov)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    w, prov = _read(args.file)
    checks = []
    closed = project(w) if w.lifted else w
    checks.append(("Sp image is the identity" + (" (projection)" if w.lifted else ""),
                   word_image(closed).is_identity()))
    rep = validate_catalog(w.genus)
    checks.append((f"catalog genus={w.genus} valid", rep.ok))
    if prov is not None:
        wid, _ = match_provenance(prov, w.genus)
        if wid is None:
            checks.append((f"replay of {prov}", False))
        else:
            got, _ = derive(wid)
            checks.append((f"replay of {wid} matches the file", got.letters == w.letters))
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return 0 if all(ok for _, ok in checks) else 1


def _report_for(w: Factorization, prov: Provenance | None, lmax: int):
    if prov is None or not prov.subs:
        sections = 0
        if prov is not None:
            pid = parse_word_id(prov.base)
            sections = _SECTIONS.get(pid.name, lambda g: 0)(w.genus)
        return invariant_report(w, l_max=lmax, sections=sections)
    wid, rec = match_provenance(prov, w.genus)
    sections = 0
    if wid is not None:
        sections = _SECTIONS.get(parse_word_id(wid).name, lambda g: 0)(w.genus)
    return invariant_report(w, build_word(prov.base), rec, k=sum(prov.subs.values()), l_max=lmax,
                            sections=sections)


def cmd_invariants(args) -> int:
    w, prov = _read(args.file)
    r = _report_for(w, prov, args.lmax)
    sys.stdout.write(FORMATS[args.format]([r]))
    return 0


def cmd_spin(args) -> int:
    w, _ = _read(args.file)
    wit = spin1_witness(w, args.lmax)
    if wit is None:
        print(f"undetermined (no witness with l <= {args.lmax})")
        return 1
    print(f"non-spin: {wit.describe(w)}")
    return 0


def cmd_sections(args) -> int:
    w, _ = _read(args.file)
    audit = section_audit(w, args.expect)
    if audit.ok:
        print(f"PASS {audit.n} disjoint sections of self-intersection -1")
        return 0
    print(f"FAIL {audit.reason}")
    return 1


def cmd_report(args) -> int:
    rows = family_rows(args.family, args.genus, args.k)
    sys.stdout.write(FORMATS[args.format](rows))
    return 0


def cmd_catalog(args) -> int:
    if len(args.genus) != 1:
        raise UsageError("catalog takes a single genus")
    cat = catalog_with_env(args.genus[0])
    if args.validate:
        rep = validate_catalog(cat)
        print(rep)
        return 0 if rep.ok else 1
    sys.stdout.write(dump_catalog(cat))
    return 0


def _format_flags(p: argparse.ArgumentParser, default: str) -> None:
    g = p.add_mutually_exclusive_group()
    for f in ("json", "csv", "md"):
        g.add_argument(f"--{f}", dest="format", action="store_const", const=f)
    p.set_defaults(format=default)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcgwords", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a built-in or derived word file")
    s.add_argument("word_id")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="Sp identity, catalog and provenance replay checks")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("invariants", help="invariant report for a word file")
    s.add_argument("file")
    s.add_argument("--lmax", type=int, default=3)
    _format_flags(s, "md")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("spin", help="search for a non-spin witness")
    s.add_argument("file")
    s.add_argument("--lmax", type=int, default=3)
    s.set_defaults(func=cmd_spin)

    s = sub.add_parser("sections", help="audit the sections of a lifted word")
    s.add_argument("file")
    s.add_argument("--expect", type=int)
    s.set_defaults(func=cmd_sections)

    s = sub.add_parser("report", help="family tables")
    s.add_argument("--family", choices=("Y", "H", "G"), required=True)
    s.add_argument("--genus", type=_range, required=True)
    s.add_argument("--k", type=_range)
    _format_flags(s, "md")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("catalog", help=f"dump or validate a catalog (honours ${CATALOG_ENV})")
    s.add_argument("--genus", type=_range, required=True)
    s.add_argument("--validate", action="store_true")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LibraryError, CatalogError, MoveError, InvariantError, hom.DimensionError) as exc:
        print(f"mcgwords: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
