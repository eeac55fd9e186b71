"""Derivations transcribed from the written proofs.

Each function takes a :class:`ScriptBuilder` and a 1-based position and
rewrites the block found there, emitting only engine steps.  The chain is
written a_1, a_2, ...; ``Chain`` maps it to catalog names (c_i on the closed
surface, alpha_i on the bounded one) together with b_i = a_{i+1}(a_i) and
bbar_i = a_{i+1}^{-1}(a_i).
"""
from __future__ import annotations

from dataclasses import dataclass

from .builder import PlanError, ScriptBuilder, c_left, c_right


@dataclass(frozen=True)
class Chain:
    """Names for the chain a_i = c_{i+shift} (or alpha_{i+shift})."""

    lifted: bool = False
    shift: int = 0

    def a(self, i: int) -> str:
        i += self.shift
        return f"alpha{i}" if self.lifted else f"c{i}"

    def b(self, i: int) -> str:
        i += self.shift
        return f"beta{i}" if self.lifted else f"d{i}"

    def bbar(self, i: int) -> str:
        i += self.shift
        return f"betabar{i}" if self.lifted else f"dbar{i}"

    def e(self, i: int) -> str:
        i += self.shift
        return f"gamma{i}" if self.lifted else f"e{i}"

    def ebar(self, i: int) -> str:
        i += self.shift
        return f"gammabar{i}" if self.lifted else f"ebar{i}"

    def fact(self, kind: str, lo: int, hi: int, i: int) -> str:
        s = self.shift
        return f"{kind}:{lo + s}:{hi + s}:{i + s}"


def desc(ch: Chain, hi: int, lo: int = 1) -> list[str]:
    return [ch.a(i) for i in range(hi, lo - 1, -1)]


def asc(ch: Chain, hi: int, lo: int = 1) -> list[str]:
    return [ch.a(i) for i in range(lo, hi + 1)]


# ---------------------------------------------------------------------------
# Lemma 4.1


def lemma41a(b: ScriptBuilder, lo: int, k: int, ch: Chain) -> None:
    """(a_{k-1} .. a_1)(a_k .. a_1) ~ a_k^k bbar_{k-1} .. bbar_1 at ``lo``."""
    b.expect(desc(ch, k - 1) + desc(ch, k), lo)
    if k == 1:
        return
    j = k - 1
    # a_k commutes with a_{j-1} .. a_1
    for p in range(lo + j - 1, lo, -1):
        b.do("COMM", p)
    lemma41a(b, lo + 2, j, ch)
    for p in range(lo, lo + j):
        b.do("FACT", ch.fact("asc", j, k, j), p)
    b.do("HL", lo + j)
    b.expect([ch.a(k)] * k + [ch.bbar(i) for i in range(k - 1, 0, -1)], lo)


def lemma41b(b: ScriptBuilder, lo: int, k: int, ch: Chain) -> None:
    """(a_1 .. a_k)(a_1 .. a_{k-1}) ~ b_1 .. b_{k-1} a_k^k at ``lo``."""
    b.expect(asc(ch, k) + asc(ch, k - 1), lo)
    if k == 1:
        return
    j = k - 1
    for p in range(lo + j, lo + 2 * j - 1):
        b.do("COMM", p)
    lemma41b(b, lo, j, ch)
    for p in range(lo + 2 * j - 2, lo + j - 2, -1):
        b.do("FACT", ch.fact("desc", j, k, j), p)
    b.do("HR", lo + j - 1)
    b.expect([ch.b(i) for i in range(1, k)] + [ch.a(k)] * k, lo)


# ---------------------------------------------------------------------------
# Lemma 4.2: phi_l = a_{2l+1}^{l+1} a_{2l-1}^l ... a_3^2 a_1


def _comm_right(b: ScriptBuilder, q: int, steps: int) -> None:
    for p in range(q, q + steps):
        b.do("COMM", p)


def _comm_left(b: ScriptBuilder, q: int, steps: int) -> None:
    for p in range(q - 1, q - 1 - steps, -1):
        b.do("COMM", p)


def lemma42a_core(b: ScriptBuilder, lo: int, l: int, ch: Chain) -> None:
    """(a_{2l} .. a_1)(a_{2l+1} .. a_1) ~ (a_{2l} .. a_1)(b_{2l} .. b_2) a_{2l+1}^{l+1},
    all other letters conjugated by phi_{l-1}."""
    a = ch.a
    b.expect(desc(ch, 2 * l) + desc(ch, 2 * l + 1), lo)
    if l == 1:
        c_left(b, lo + 4, lo)
        b.move_right(lo, lo + 4)
        b.expect([a(2), a(1), a(3), a(2), a(3)], lo)
        b.do("HR", lo + 2)
    else:
        j = l - 1
        _comm_left(b, lo + 2 * j + 2, 2 * j)
        _comm_left(b, lo + 2 * j + 3, 2 * j)
        b.expect([a(2 * j + 2), a(2 * j + 1), a(2 * j + 3), a(2 * j + 2)], lo)
        lemma42a_core(b, lo + 4, j, ch)
        end = lo + 4 * j + 4
        for _ in range(j + 1):
            c_left(b, end, lo)
        s = lo + j + 1
        _comm_right(b, s + 3, 2 * j)
        _comm_right(b, s + 2, 2 * j)
        for t in range(j + 1):
            b.move_right(lo + j - t, lo + 3 * j + 4 - t)
        b.expect(desc(ch, 2 * j + 2) + [a(2 * j + 3), a(2 * j + 2)] + [a(2 * j + 3)] * (j + 1), lo)
        b.do("HR", lo + 2 * j + 2)
        run = lo + 2 * j + 3
        for t in range(j + 2):
            _comm_right(b, run + j + 1 - t, j)
    b.expect(desc(ch, 2 * l) + [ch.b(i) for i in range(2 * l, 0, -2)] + [a(2 * l + 1)] * (l + 1), lo)


def lemma42a(b: ScriptBuilder, lo: int, l: int, ch: Chain) -> None:
    """D (a_{2l} .. a_1)(a_{2l+1} .. a_1) E ~_C phi_l(D) a_{2l+1}^{l+1} (a_{2l} .. a_1)(b_{2l} .. b_2) phi_l(E)."""
    if l == 0:
        b.expect([ch.a(1)], lo)
        b.do("CONJ", ch.a(1))
        return
    lemma42a_core(b, lo, l, ch)
    end = lo + 4 * l
    for _ in range(l + 1):
        c_left(b, end, lo)
    b.expect([ch.a(2 * l + 1)] * (l + 1) + desc(ch, 2 * l) + [ch.b(i) for i in range(2 * l, 0, -2)], lo)


def lemma42b_core(b: ScriptBuilder, lo: int, l: int, ch: Chain) -> None:
    """(a_1 .. a_{2l+1})(a_1 .. a_{2l}) ~ a_{2l+1}^{l+1} (bbar_2 .. bbar_{2l})(a_1 .. a_{2l}),
    all other letters conjugated by phi_{l-1}^{-1}."""
    a = ch.a
    b.expect(asc(ch, 2 * l + 1) + asc(ch, 2 * l), lo)
    if l == 1:
        c_right(b, lo, lo + 4)
        b.move_left(lo + 4, lo)
        b.expect([a(3), a(2), a(3), a(1), a(2)], lo)
        b.do("HL", lo + 1)
    else:
        j = l - 1
        _comm_right(b, lo + 2 * j + 2, 2 * j)
        _comm_right(b, lo + 2 * j + 1, 2 * j)
        lemma42b_core(b, lo, j, ch)
        b.expect([a(2 * j + 2), a(2 * j + 3), a(2 * j + 1), a(2 * j + 2)], lo + 4 * j + 1)
        for _ in range(j + 1):
            c_right(b, lo, lo + 4 * j + 4)
        _comm_left(b, lo + 3 * j, 2 * j)
        _comm_left(b, lo + 3 * j + 1, 2 * j)
        for t in range(j + 1):
            b.move_left(lo + 3 * j + 4 + t, lo + j + t)
        b.do("HL", lo + 2 * j + 1)
        for t in range(j + 2):
            _comm_left(b, lo + j + t, j)
    b.expect([a(2 * l + 1)] * (l + 1) + [ch.bbar(i) for i in range(2, 2 * l + 1, 2)] + asc(ch, 2 * l), lo)


def lemma42b(b: ScriptBuilder, lo: int, l: int, ch: Chain) -> None:
    """D (a_1 .. a_{2l+1})(a_1 .. a_{2l}) E ~_C phi_l^{-1}(D) (bbar_2 .. bbar_{2l})(a_1 .. a_{2l} a_{2l+1}^{l+1}) phi_l^{-1}(E)."""
    if l == 0:
        b.expect([ch.a(1)], lo)
        b.do("CONJ", f"{ch.a(1)}^-1")
        return
    lemma42b_core(b, lo, l, ch)
    end = lo + 4 * l
    for _ in range(l + 1):
        c_right(b, lo, end)
    b.expect([ch.bbar(i) for i in range(2, 2 * l + 1, 2)] + asc(ch, 2 * l) + [ch.a(2 * l + 1)] * (l + 1), lo)


# ---------------------------------------------------------------------------
# Lemmas 5.1 - 5.3 on the surface with boundary


def lemma51(b: ScriptBuilder, lo: int, g: int, ch: Chain) -> None:
    """(a_1 .. a_{2g})^{2g+1} = (a_1 .. a_{2g-1})^{2g} (a_{2g} .. a_1)(a_1 .. a_{2g}).

    By induction on k: (a_1 .. a_n)^k = (a_1 .. a_{n-1})^k (a_n .. a_{n-k+1}).
    """
    n = 2 * g
    b.expect(asc(ch, n) * (n + 1), lo)
    for k in range(1, n):
        # word: P_{n-1}^k R_k P_n ..., R_k = a_n .. a_{n-k+1}
        r = lo + k * (n - 1)
        s = r + k
        for i in range(n - k - 1):
            _comm_left(b, s + i, k)
        r += n - k - 1
        # R_k a_{n-k} is a_n .. a_{n-k}; pass a_{n-k+1} .. a_n to the left
        for t, j in enumerate(range(n - k + 1, n + 1)):
            b.do("FACT", ch.fact("desc", n - k, n, j - 1), r + t)
    b.expect(asc(ch, n - 1) * n + desc(ch, n) + asc(ch, n), lo)


def lemma52(b: ScriptBuilder, g: int, ch: Chain) -> None:
    """delta = (a_1 .. a_{2g})^{4g+2} ~ (a_{2g+1} a_{2g} .. a_1 a_1 .. a_{2g} a')^2."""
    n = 2 * g
    half = n * (n + 1)
    top = ch.a(n + 1)
    # second half first so positions in the first half stay put
    lemma51(b, 1 + half, g, ch)
    b.do("SUB", "chain_lift", 1 + half)
    lemma51(b, 1, g, ch)
    b.do("SUB", "chain_lift", 1)
    # a_{2g+1} a' X a_{2g+1} a' X with X of length 4g
    m = 2 * n + 2
    b.do("COMM", 1)
    b.rotate(1)
    b.do("COMM", m)
    turn = desc(ch, n) + asc(ch, n)
    b.expect(([top] + turn + ["alphap"]) * 2)


def lemma53(b: ScriptBuilder, g: int, ch: Chain) -> None:
    """(a_{2g+1} T a')^2 ~ (a_{2g+1} a_{2g} .. a_1)^2 (a_1 .. a_{2g} a_{2g+1})(a_1 .. a_{2g} a'),
    T = a_{2g} .. a_1 a_1 .. a_{2g}, using the turn facts (turn-top, then turn-fix)."""
    n = 2 * g
    top = ch.a(n + 1)
    turn = desc(ch, n) + asc(ch, n)
    b.expect(([top] + turn + ["alphap"]) * 2)
    b.do("FACT", "turn-top", 2)
    # a_{2g+1} [a_{2g+1} T a_{2g+1}] (a_{2g} .. a_1)(a_1 .. a_{2g} a')
    for t, i in enumerate(range(n, 0, -1)):
        b.do("FACT", f"turn-fix:{i}", 2 + t)
    b.expect([top] + desc(ch, n) + [top] + desc(ch, n) + asc(ch, n + 1) + asc(ch, n) + ["alphap"])


# ---------------------------------------------------------------------------
# Theorems 4.1 and 4.2 on the surface with boundary


def split_chain(b: ScriptBuilder, s: int, g: int, ch: Chain) -> None:
    """a_1 .. a_{2g} ~ (e_2 e_4 .. e_{2g})(a_1 a_3 .. a_{2g-1}) at s."""
    b.expect(asc(ch, 2 * g), s)
    for i in range(1, g + 1):
        b.do("HR", s + 2 * i - 2)
        _comm_left(b, s + 2 * i - 2, i - 1)
    b.expect([ch.e(2 * i) for i in range(1, g + 1)] + [ch.a(2 * i - 1) for i in range(1, g + 1)], s)


def theorem41_lifted(b: ScriptBuilder, g: int) -> None:
    """delta = (a_1 .. a_{2g})^{4g+2} rewritten into the relation of H(g,1)
    lifted to the surface with 2g+6 boundary components."""
    ch = Chain(True)
    b.comment("Lemma 5.2")
    lemma52(b, g, ch)
    b.comment("Lemma 5.3")
    lemma53(b, g, ch)
    theorem41_lifted_tail(b, g)


def theorem41_lifted_tail(b: ScriptBuilder, g: int) -> None:
    """Theorem 4.1 from the word of Lemma 5.3 on."""
    ch = Chain(True)
    n = 2 * g
    top = ch.a(n + 1)
    b.comment("Lemma 4.1 (a), k = 2g+1")
    lemma41a(b, 2, n + 1, ch)
    b.comment("Lemma 4.2 (b), l = g")
    lemma42b(b, 4 * g + 3, g, ch)
    b.expect([f"[phi^-1:{ch.bbar(i)}]" for i in range(n, 0, -1)], 2 * g + 3)
    b.expect([ch.bbar(i) for i in range(2, n + 1, 2)] + asc(ch, n) + [top] * (g + 1) + ["alphap"], 4 * g + 3)
    b.comment("conjugation")
    b.rotate(n + 2)
    a_p = 6 * g + 2
    for t in range(n + 2):
        b.do("COMM", a_p + t)
    b.comment("split the chain")
    split_chain(b, 3 * g + 1, g, ch)
    b.comment("daisy substitution")
    b.do("SUB", "D", 4 * g + 1)
    b.comment("boundary daisy relation")
    b.do("CAP", 5 * g + 1)


def split_chain_desc(b: ScriptBuilder, s: int, g: int, ch: Chain) -> None:
    """a_{2g} .. a_1 ~ (a_{2g-1} .. a_3 a_1)(ebar_{2g} .. ebar_2) at s."""
    b.expect(desc(ch, 2 * g), s)
    for t in range(1, g + 1):
        b.do("HL", s + 2 * t - 2)
        _comm_left(b, s + 2 * t - 2, t - 1)
    b.expect([ch.a(2 * i - 1) for i in range(g, 0, -1)] + [ch.ebar(2 * i) for i in range(g, 0, -1)], s)


def gather_odd_squares(b: ScriptBuilder, p: int, g: int, run: int, ch: Chain) -> None:
    """(a_1 a_3 .. a_{2g-1}) a_{2g+1}^run (a_{2g-1} .. a_3 a_1) at p
    ~ a_1^2 a_3^2 .. a_{2g-1}^2 a_{2g+1}^run by commutations."""
    for t in range(g):
        _comm_left(b, p + g + run + t, run + 2 * t)
    b.expect([ch.a(2 * i - 1) for i in range(1, g + 1) for _ in range(2)] + [ch.a(2 * g + 1)] * run, p)


def theorem42_lifted(b: ScriptBuilder, g: int, daisy: bool = True) -> None:
    """delta = (a_1 .. a_{2g})^{4g+2} rewritten into the odd-squares form and, with
    ``daisy``, into the lift of H(g,2) on the surface with 8 boundary components."""
    ch = Chain(True)
    b.comment("Lemma 5.2")
    lemma52(b, g, ch)
    b.comment("Lemma 5.3")
    lemma53(b, g, ch)
    theorem42_lifted_tail(b, g)
    if daisy:
        theorem42_daisy(b, g)


def theorem42_lifted_tail(b: ScriptBuilder, g: int, daisy: bool = False) -> None:
    """From the word of Lemma 5.3 to the odd-squares form
    a_1^2 a_3^2 .. a_{2g-1}^2 a_{2g+1}^{2g+3} a'."""
    ch = Chain(True)
    n = 2 * g
    top = ch.a(n + 1)
    b.comment("Lemma 4.2 (a), l = g")
    lemma42a(b, 2, g, ch)
    b.expect([top] * (g + 2) + desc(ch, n) + [ch.b(i) for i in range(n, 0, -2)])
    b.comment("split the descending chain")
    split_chain_desc(b, g + 3, g, ch)
    b.comment("conjugation by phi^-1")
    b.do("CONJ", "phi^-1")
    b.expect(asc(ch, n + 1) + asc(ch, n) + ["alphap"], 4 * g + 3)
    b.comment("Lemma 4.2 (b), l = g")
    lemma42b(b, 4 * g + 3, g, ch)
    b.expect([f"[phi^-2:{ch.ebar(i)}]" for i in range(n, 0, -2)]
             + [f"[phi^-2:{ch.b(i)}]" for i in range(n, 0, -2)], 2 * g + 3)
    b.comment("split the chain")
    split_chain(b, 5 * g + 3, g, ch)
    b.comment("conjugation")
    b.rotate(2 * g + 2)
    # ... (a_1 a_3 .. a_{2g-1}) top^{g+1} a' top^{g+2} (a_{2g-1} .. a_3 a_1)
    p = 4 * g + 1
    a_p = p + g + g + 1
    for t in range(2 * g + 2):
        b.do("COMM", a_p + t)
    gather_odd_squares(b, p, g, 2 * g + 3, ch)
    b.expect([top] * (2 * g + 3) + ["alphap"], p + 2 * g)
    if daisy:
        theorem42_daisy(b, g)


def theorem42_daisy(b: ScriptBuilder, g: int) -> None:
    """Odd-squares form -> the lift of H(g,2): two D substitutions, then the
    boundary daisy relation with 8 boundary components."""
    ch = Chain(True)
    p = 4 * g + 1
    b.expect([ch.a(2 * i - 1) for i in range(1, g + 1) for _ in range(2)], p)
    b.comment("two daisy substitutions")
    # a_1^2 .. a_{2g-1}^2 top^{2g+3} -> (a_1 a_3 .. a_{2g-1} top^{g-2})^2 top^7
    for t in range(1, g):
        _comm_left(b, p + 2 * t, t)
    for t in range(g - 2):
        _comm_left(b, p + 2 * g + t, g)
    b.do("SUB", "D", p)
    b.do("SUB", "D", p + g)
    b.comment("boundary daisy relation")
    b.do("CAP", p + 2 * g)


# ---------------------------------------------------------------------------
# Theorems 4.3 and 4.4 on the closed surface


def square_split(b: ScriptBuilder, s: int, n: int, ch: Chain) -> None:
    """(a_1 .. a_n)^2 ~ (a_m^2 ...)(f-letters)(bbar-letters), m running over
    n, n-2, ... in increasing order (odd and even n).

    Each front letter a_m passes a_{m-1} (giving bbar_{m-1}); then the
    second block's front letters pass the first block's bbar letters,
    which turns them into the f curves."""
    front = [m for m in range(1, n + 1) if (n - m) % 2 == 0]
    b.expect(asc(ch, n) * 2, s)
    for start in (s + n, s):
        nf = nb = 0
        for m in front:
            if m == 1:
                nf = 1
                continue
            b.do("HL", start + nf + nb)
            _comm_left(b, start + nf + nb, nb)
            nf += 1
            nb += 1
    nf, nb = len(front), n - len(front)
    for t in range(nf):
        b.move_left(s + n + t, s + nf + t, keep=True)
    for i in range(nf):
        _comm_left(b, s + nf + i, nf - 1 - i)
    backs = [ch.bbar(m - 1) for m in front if m > 1]
    b.expect([ch.a(m) for m in front for _ in range(2)], s)
    b.expect(backs, s + 2 * nf + nb)


def theorem43i(b: ScriptBuilder, g: int, k: int) -> None:
    """I(g) = (c_1 .. c_{2g+1})^{2g+2} with k daisy substitutions of type g-1,
    the k-th one D'."""
    ch = Chain()
    n = 2 * g + 1
    blk = 2 * n
    b.expect(asc(ch, n) * (2 * g + 2))
    for j in range(g + 1):
        b.comment(f"block {j + 1}: Lemma 4.2 (b)")
        lemma42b(b, 1 + j * blk, g, ch)
        if j < g:
            b.do("CONJ", "phi")
    for j in range(g + 1):
        b.comment(f"block {j + 1}: split the chain")
        s = 1 + j * blk
        b.expect([ch.bbar(i) for i in range(2, 2 * g + 1, 2)] + asc(ch, 2 * g) + [ch.a(n)] * (g + 2), s)
        split_chain(b, s + g, g, ch)
    width = g - 2
    for j in range(k):
        s = 1 + j * (blk - width) + 2 * g
        b.do("SUB", "Dp" if j == k - 1 else "D", s)


def theorem43ii(b: ScriptBuilder, g: int) -> None:
    """I(g) with one daisy substitution of type 2(g-1) per (..)^4 block."""
    ch = Chain()
    n = 2 * g + 1
    blocks = (g + 1) // 2
    b.expect(asc(ch, n) * (2 * g + 2))
    shrink = 2 * g - 3
    for j in range(blocks):
        s = 1 + j * (4 * n - shrink)
        b.comment(f"block {j + 1}: Lemma 4.1 (b)")
        lemma41b(b, s, n, ch)
        b.comment(f"block {j + 1}: split the square")
        square_split(b, s + 2 * n, n, ch)
        # (d_1 .. d_{2g}) c^{2g+2} (c_1^2 .. c_{2g-1}^2) c^2 ...
        for t in range(2 * g):
            _comm_left(b, s + 4 * g + 2 + t, 2 * g + 2)
        b.expect([ch.a(i) for i in range(1, n, 2) for _ in range(2)] + [ch.a(n)] * (2 * g + 4), s + 2 * g)
        b.do("SUB", "D2", s + 2 * g + 2)


def theorem44(b: ScriptBuilder, g: int) -> None:
    """G(g) = (c_1 .. c_{2g})^{4g+2} with g daisy substitutions of type 2(g-1),
    after conjugating by h so that the chain becomes c_2 .. c_{2g+1}."""
    n = 2 * g
    b.expect(asc(Chain(), n) * (4 * g + 2))
    b.do("CONJ", "h")
    ch = Chain(shift=1)
    shrink = 2 * g - 3
    for j in range(g):
        s = 1 + j * (4 * n - shrink)
        b.comment(f"block {j + 1}")
        lemma41b(b, s, n, ch)
        square_split(b, s + 2 * n, n, ch)
        # (d .. ) a_n^{2g+1} (a_2^2 .. a_{2g-2}^2) a_n^2 ...
        for t in range(2 * g - 2):
            _comm_left(b, s + 4 * g + t, 2 * g + 1)
        b.expect([ch.a(i) for i in range(2, n, 2) for _ in range(2)] + [ch.a(n)] * (2 * g + 3), s + 2 * g - 1)
        b.do("SUB", "D2", s + 2 * g - 1)
