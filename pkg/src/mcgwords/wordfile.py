"""Word files: a small text format for factorizations.

::

    surface genus=3 boundary=0
    from I@g=3 subs 1:2
    equals bdelta1 bdelta2          # lifted words only
    c1 c2 c7^5 [phi^-1:dbar6] [c2 c3^-1:c4]^2

Body tokens are positive letters: a bare curve name, a run ``name^n`` with
``n >= 1``, or a conjugated letter ``[conj:name]`` (optionally ``^n``).
Inside a conjugator, ``name^k`` may have any nonzero integer exponent.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .catalog import Atom, Catalog, CatalogError, catalog_for, free_reduce
from .words import Factorization, Letter, WordError, compress_tokens, format_conjugator


class ParseError(WordError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass
class Provenance:
    base: str
    subs: dict[int, int] = field(default_factory=dict)

    def __str__(self) -> str:
        parts = ",".join(f"{p}:{n}" for p, n in sorted(self.subs.items()))
        return f"from {self.base} subs {parts}" if parts else f"from {self.base}"


_NAME = re.compile(r"[a-z]+\d*")
_HEADER = re.compile(r"surface\s+genus=(\d+)\s+boundary=(\d+)\s*$")
_FROM = re.compile(r"from\s+(\S+)(?:\s+subs\s+(\S+))?\s*$")


def _check_name(name: str, cat: Catalog, line: int = 0, col: int = 0) -> str:
    if name not in cat.entries:
        raise ParseError(f"unknown curve {name!r} for genus {cat.genus}", line, col)
    return name


def parse_conjugator(text: str, cat: Catalog, line: int = 0, col: int = 0) -> tuple[Atom, ...]:
    """``phi^-1 c3 c2^2`` -> atoms; aliases (phi, h) stay unexpanded."""
    out: list[Atom] = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        tm = re.fullmatch(r"([a-z]+\d*)(?:\^(-?\d+))?", tok)
        if not tm:
            raise ParseError(f"bad conjugator token {tok!r}", line, col + m.start())
        name, exp = tm.group(1), int(tm.group(2) or 1)
        if exp == 0:
            raise ParseError("zero exponent", line, col + m.start())
        if name not in cat:
            raise ParseError(f"unknown curve {name!r} for genus {cat.genus}", line, col + m.start())
        out.extend([(name, 1 if exp > 0 else -1)] * abs(exp))
    return free_reduce(out)


def parse_letter_token(token: str, cat: Catalog, line: int = 0, col: int = 0) -> Letter:
    letters = _parse_token(token, cat, line, col)
    if len(letters) != 1:
        raise ParseError(f"expected a single letter, got {token!r}", line, col)
    return letters[0]


def _parse_token(token: str, cat: Catalog, line: int, col: int) -> list[Letter]:
    m = re.fullmatch(r"\[([^\[\]:]*):([a-z]+\d*)\](?:\^(-?\d+))?", token)
    if m:
        conj = parse_conjugator(m.group(1), cat, line, col + 1)
        base = _check_name(m.group(2), cat, line, col + m.start(2))
        n = m.group(3)
    else:
        m = re.fullmatch(r"([a-z]+\d*)(?:\^(-?\d+))?", token)
        if not m:
            raise ParseError(f"bad token {token!r}", line, col)
        conj = ()
        base = _check_name(m.group(1), cat, line, col)
        n = m.group(2)
    count = int(n) if n is not None else 1
    if count < 1:
        raise ParseError(f"non-positive power in {token!r} (positive relators only)", line, col)
    return [Letter(conj, base)] * count


def _tokens(text: str, line: int):
    """Split a body line into tokens, keeping bracketed letters whole."""
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        start = i
        if text[i] == "[":
            j = text.find("]", i)
            if j < 0:
                raise ParseError("unclosed '['", line, i + 1)
            i = j + 1
            while i < len(text) and not text[i].isspace():
                i += 1
        else:
            while i < len(text) and not text[i].isspace():
                if text[i] == "[":
                    raise ParseError("unexpected '['", line, i + 1)
                i += 1
        yield start + 1, text[start:i]


def parse_wordfile(text: str) -> tuple[Factorization, Provenance | None]:
    lines = text.splitlines()
    header = None
    prov = None
    rhs: tuple[str, ...] = ()
    letters: list[Letter] = []
    cat = None
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        if header is None:
            m = _HEADER.match(body.strip())
            if not m:
                raise ParseError("expected 'surface genus=<int> boundary=<int>'", lineno, 1)
            g, n = int(m.group(1)), int(m.group(2))
            try:
                cat = catalog_for(g, n)
            except CatalogError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            header = (g, n)
            continue
        stripped = body.strip()
        if stripped.startswith("from ") and not letters and prov is None:
            prov = _parse_from(stripped, lineno)
            continue
        if stripped.startswith("equals ") and not letters:
            if not cat.lifted:
                raise ParseError("'equals' is only allowed on surfaces with boundary", lineno, 1)
            rhs = tuple(_check_name(t, cat, lineno, 1) for t in stripped.split()[1:])
            continue
        for col, tok in _tokens(body, lineno):
            letters.extend(_parse_token(tok, cat, lineno, col))
    if header is None:
        raise ParseError("empty word file", 1, 1)
    g, n = header
    if n > 0 and not rhs:
        rhs = ("delta",) if n == 1 else tuple(f"bdelta{i}" for i in range(1, n + 1))
    return Factorization(g, tuple(letters), boundary=n, rhs=rhs, lifted=n > 0), prov


def _parse_from(line: str, lineno: int) -> Provenance:
    m = _FROM.match(line)
    if not m:
        raise ParseError("expected 'from <word-id> subs <p>:<count>[,...]'", lineno, 1)
    subs: dict[int, int] = {}
    if m.group(2):
        for part in m.group(2).split(","):
            pm = re.fullmatch(r"(\d+):(\d+)", part)
            if not pm:
                raise ParseError(f"bad substitution record {part!r}", lineno, line.find(part) + 1)
            p, c = int(pm.group(1)), int(pm.group(2))
            subs[p] = subs.get(p, 0) + c
    return Provenance(m.group(1), subs)


def letter_token(x: Letter) -> str:
    if not x.conjugator:
        return x.base
    return f"[{format_conjugator(x.conjugator)}:{x.base}]"


def serialize_wordfile(w: Factorization, prov: Provenance | None = None, width: int = 72) -> str:
    out = [f"surface genus={w.genus} boundary={w.boundary}"]
    if prov is not None:
        out.append(str(prov))
    if w.lifted and w.rhs:
        out.append("equals " + " ".join(w.rhs))
    line = ""
    for tok in compress_tokens([letter_token(x) for x in w.letters]):
        if line and len(line) + 1 + len(tok) > width:
            out.append(line)
            line = tok
        else:
            line = f"{line} {tok}" if line else tok
    if line:
        out.append(line)
    return "\n".join(out) + "\n"
