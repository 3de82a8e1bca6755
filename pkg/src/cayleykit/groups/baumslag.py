"""Baumslag-Solitar groups BS(p,q) = <a, t | t a^p t^-1 = a^q>, 1 <= p < q.

Elements are stored structurally as a freely reduced form

    w_l t^(eps_l) ... w_1 t^(eps_1) a^k

where each w_i is a^(e_i) with 0 <= e_i <= q-1 when eps_i = +1 and
0 <= e_i <= p-1 when eps_i = -1, e_i = 0 forces eps_{i+1} = eps_i, and
the tail exponent k is any integer.  Words render the syllables left to
right followed by the tail in unary (a' for negative).  Right
multiplication rewrites only the tail and the innermost syllable, using
a^q t = t a^p and its inverse, which splits ×t and ×t' into four cases
each; together with ×a and ×a' that is ten rules.  The tail can grow by
a factor of q/p per t-step, so this representation is polynomial-time
without a quasigeodesic bound (|t^n a t^-n| grows like 2^n for BS(1,2)).
"""

from dataclasses import dataclass
from typing import List, Tuple

from ..automata import Dfa
from ..errors import DomainError
from ..pftm import TimeBudget
from ..representation import (POLYNOMIAL, CayleyRep, GeneratorSet,
                              native_multiplier, regular_language)
from ..words import Alphabet

SYMBOLS = ("a", "a'", "t", "t'")


def bs_alphabet() -> Alphabet:
    return Alphabet(SYMBOLS)


@dataclass(frozen=True)
class BsNormalForm:
    """Syllables stored innermost (rightmost) first; tail is a^k."""

    p: int
    q: int
    syllables: Tuple[Tuple[int, int], ...]
    tail: int

    def __post_init__(self):
        if not (1 <= self.p < self.q):
            raise ValueError("need 1 <= p < q")
        bound = {1: self.q - 1, -1: self.p - 1}
        prev = None
        for e, eps in self.syllables:
            if eps not in (1, -1) or not (0 <= e <= bound[eps]):
                raise ValueError(f"syllable ({e},{eps}) out of range")
            if prev is not None and prev[0] == 0 and prev[1] != eps:
                raise ValueError("not freely reduced")
            prev = (e, eps)

    def render(self) -> Tuple[str, ...]:
        out: List[str] = []
        for e, eps in reversed(self.syllables):
            out.extend(["a"] * e)
            out.append("t" if eps == 1 else "t'")
        out.extend(["a"] * self.tail if self.tail >= 0 else ["a'"] * (-self.tail))
        return tuple(out)


def bs_parse(p: int, q: int, letters) -> BsNormalForm:
    """Parse a normal-form word; DomainError on anything else."""
    letters = tuple(letters)
    syllables: List[Tuple[int, int]] = []
    run = 0
    for i, s in enumerate(letters):
        if s == "a":
            run += 1
        elif s in ("t", "t'"):
            eps = 1 if s == "t" else -1
            syllables.append((run, eps))
            run = 0
        elif s == "a'":
            neg = len(letters) - i
            if run or any(x != "a'" for x in letters[i:]):
                raise DomainError("a' is only valid as a negative tail")
            run = -neg
            break
        else:
            raise DomainError(f"unexpected symbol {s!r}")
    try:
        nf = BsNormalForm(p, q, tuple(reversed(syllables)), run)
    except ValueError as exc:
        raise DomainError(str(exc))
    if nf.render() != letters:
        raise DomainError("word is not in normal form")
    return nf


def _times_t(nf: BsNormalForm) -> BsNormalForm:
    m, r = divmod(nf.tail, nf.q)
    s = nf.syllables
    if r != 0:
        return BsNormalForm(nf.p, nf.q, ((r, 1),) + s, m * nf.p)
    if s and s[0][1] == -1:
        return BsNormalForm(nf.p, nf.q, s[1:], s[0][0] + m * nf.p)
    return BsNormalForm(nf.p, nf.q, ((0, 1),) + s, m * nf.p)


def _times_t_inv(nf: BsNormalForm) -> BsNormalForm:
    n, s_rem = divmod(nf.tail, nf.p)
    s = nf.syllables
    if s_rem != 0:
        return BsNormalForm(nf.p, nf.q, ((s_rem, -1),) + s, n * nf.q)
    if s and s[0][1] == 1:
        return BsNormalForm(nf.p, nf.q, s[1:], s[0][0] + n * nf.q)
    return BsNormalForm(nf.p, nf.q, ((0, -1),) + s, n * nf.q)


def bs_multiply(nf: BsNormalForm, symbol: str) -> BsNormalForm:
    if symbol == "a":
        return BsNormalForm(nf.p, nf.q, nf.syllables, nf.tail + 1)
    if symbol == "a'":
        return BsNormalForm(nf.p, nf.q, nf.syllables, nf.tail - 1)
    if symbol == "t":
        return _times_t(nf)
    if symbol == "t'":
        return _times_t_inv(nf)
    raise DomainError(f"unknown generator {symbol!r}")


def bs_language_dfa(p: int, q: int) -> Dfa:
    """Normal-form words: every state is accepting, the transitions carry
    the syllable-range and free-reduction constraints."""
    cap = q  # runs this long can only be tail
    states = {("neg",)} | {(last, c) for last in ("S", "+", "-") for c in range(cap + 1)}
    t = {}
    for last in ("S", "+", "-"):
        for c in range(cap + 1):
            src = (last, c)
            t[(src, "a")] = (last, min(c + 1, cap))
            if c <= q - 1 and not (last == "-" and c == 0):
                t[(src, "t")] = ("+", 0)
            if c <= p - 1 and not (last == "+" and c == 0):
                t[(src, "t'")] = ("-", 0)
            if c == 0:
                t[(src, "a'")] = ("neg",)
    t[(("neg",), "a'")] = ("neg",)
    return Dfa(SYMBOLS, frozenset(states), ("S", 0), frozenset(states), t)


def bs_rep(p: int, q: int) -> CayleyRep:
    if not (1 <= p < q):
        raise ValueError("need 1 <= p < q")

    def mult(symbol):
        def fn(letters):
            nf = bs_parse(p, q, letters)
            out = bs_multiply(nf, symbol).render()
            return out, len(letters) + len(out) + 1
        return fn

    budget = TimeBudget.pf_linear(q + 2, 8)
    multipliers = {
        s: native_multiplier(s, mult(s), budget) for s in SYMBOLS
    }
    return CayleyRep(
        name=f"bs:{p}:{q}",
        alphabet=bs_alphabet(),
        language=regular_language(bs_language_dfa(p, q)),
        identity_word=(),
        generators=GeneratorSet((("a", "a'"), ("t", "t'"))),
        multipliers=multipliers,
        time_class=POLYNOMIAL,
        constants={},
        decode=lambda letters, p=p, q=q: bs_parse(p, q, letters),
    )
