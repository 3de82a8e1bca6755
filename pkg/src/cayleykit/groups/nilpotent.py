"""Nilpotent groups presented by polynomial coordinate tables.

A rank-n representation fixes generators a_1 ... a_n and writes every
element as a_1^x_1 ... a_n^x_n.  Right multiplication by a generator maps
the exponent vector through per-generator polynomials, so the group is
carried entirely by a table symbol -> (p_1, ..., p_n).  Coordinates are
encoded as n signed base-2 integer tracks, least significant bit first,
convolved into one word; the identity is the empty word.

The built-in instance is the integer Heisenberg group, whose coordinate
tables come from multiplying unitriangular matrices:

    x a = (x+1, y, z)    x b = (x, y+1, z+x)    x c = (x, y, z+1)
"""

import itertools
from typing import Callable, Dict, Sequence, Tuple

from ..automata import Dfa
from ..errors import DomainError, ParseError
from ..pftm import TimeBudget
from ..representation import (POLYNOMIAL, CayleyRep, GeneratorSet,
                              native_multiplier, regular_language)
from ..words import PAD, Alphabet, multi_convolve, multi_deconvolve

_TRACK_SYMBOLS = ("-", "0", "1")


def encode_int2(x: int) -> Tuple[str, ...]:
    """Signed binary, LSB first, no leading zeros; zero is the empty track."""
    out = ["-"] if x < 0 else []
    n = abs(x)
    while n:
        out.append(str(n & 1))
        n >>= 1
    return tuple(out)


def decode_int2(track: Sequence[str]) -> int:
    track = tuple(track)
    sign = 1
    if track and track[0] == "-":
        sign, track = -1, track[1:]
        if not track:
            raise ParseError("sign with no digits", 0)
    n = 0
    for i, d in enumerate(track):
        if d not in ("0", "1"):
            raise ParseError(f"bad digit {d!r}", i)
        n |= int(d) << i
    if track and track[-1] != "1":
        raise ParseError("most significant digit must be 1", len(track) - 1)
    if sign < 0 and n == 0:
        raise ParseError("negative zero", 0)
    return sign * n


def encode_coords(values: Sequence[int]) -> Tuple[str, ...]:
    return multi_convolve(tuple(encode_int2(v) for v in values))


def decode_coords(letters: Sequence[str], rank: int) -> Tuple[int, ...]:
    tracks = multi_deconvolve(tuple(letters), rank)
    return tuple(decode_int2(t) for t in tracks)


def coords_alphabet(rank: int) -> Alphabet:
    symbols = []
    for combo in itertools.product(_TRACK_SYMBOLS + (PAD,), repeat=rank):
        if any(c != PAD for c in combo):
            symbols.append(":".join(combo))
    return Alphabet(tuple(symbols))


def coords_language_dfa(rank: int) -> Dfa:
    """Product of per-track signed-binary automata over the token alphabet.

    Track states: S start (ok: zero), G sign seen, Z last digit 0, O last
    digit 1, P padded.  A track may end at S or O; pads only afterwards.
    """
    step = {("S", "-"): "G", ("S", "0"): "Z", ("S", "1"): "O",
            ("G", "0"): "Z", ("G", "1"): "O",
            ("Z", "0"): "Z", ("Z", "1"): "O",
            ("O", "0"): "Z", ("O", "1"): "O"}
    for st in ("S", "O"):
        step[(st, PAD)] = "P"
    step[("P", PAD)] = "P"

    alphabet = coords_alphabet(rank)
    states = set(itertools.product("SGZOP", repeat=rank))
    start = ("S",) * rank
    accepting = {s for s in states if all(c in "SOP" for c in s)}
    transitions = {}
    for src in states:
        for tok in alphabet.symbols:
            parts = tok.split(":")
            dst = []
            for st, c in zip(src, parts):
                nxt = step.get((st, c))
                if nxt is None:
                    break
                dst.append(nxt)
            else:
                transitions[(src, tok)] = tuple(dst)
    return Dfa(alphabet.symbols, frozenset(states), start, frozenset(accepting),
               transitions)


PolyTable = Dict[str, Tuple[Callable[..., int], ...]]


def nilpotent_rep(name: str, rank: int, pairs: Tuple[Tuple[str, str], ...],
                  table: PolyTable, grid: int = 3) -> CayleyRep:
    """Build a rep from coordinate update polynomials.

    table maps every generator symbol to rank callables giving the new
    exponents.  Integer-valuedness and s-then-inverse cancellation are
    checked on the grid {-grid..grid}^rank up front.
    """
    gens = GeneratorSet(pairs)
    for sym in gens.symbols:
        if sym not in table:
            raise ValueError(f"table missing generator {sym!r}")
    probe = list(itertools.product(range(-grid, grid + 1), repeat=rank))
    for sym in gens.symbols:
        polys = table[sym]
        inv_polys = table[gens.inverse(sym)]
        for x in probe:
            y = tuple(f(*x) for f in polys)
            if any(int(v) != v for v in y):
                raise ValueError(f"{sym}: non-integer update at {x}")
            back = tuple(f(*y) for f in inv_polys)
            if back != x:
                raise ValueError(f"{sym}: inverse table does not cancel at {x}")

    def mult(symbol):
        polys = table[symbol]

        def fn(letters):
            try:
                coords = decode_coords(letters, rank)
            except ParseError as exc:
                raise DomainError(str(exc))
            new = tuple(int(f(*coords)) for f in polys)
            out = encode_coords(new)
            return out, len(letters) + len(out) + rank
        return fn

    budget = TimeBudget.quadratic(4 * rank + 4)
    multipliers = {s: native_multiplier(s, mult(s), budget) for s in gens.symbols}
    return CayleyRep(
        name=name,
        alphabet=coords_alphabet(rank),
        language=regular_language(coords_language_dfa(rank)),
        identity_word=(),
        generators=gens,
        multipliers=multipliers,
        time_class=POLYNOMIAL,
        constants={},
        decode=lambda letters, rank=rank: decode_coords(letters, rank),
    )


HEISENBERG_TABLE: PolyTable = {
    "a": (lambda x, y, z: x + 1, lambda x, y, z: y, lambda x, y, z: z),
    "a'": (lambda x, y, z: x - 1, lambda x, y, z: y, lambda x, y, z: z),
    "b": (lambda x, y, z: x, lambda x, y, z: y + 1, lambda x, y, z: z + x),
    "b'": (lambda x, y, z: x, lambda x, y, z: y - 1, lambda x, y, z: z - x),
    "c": (lambda x, y, z: x, lambda x, y, z: y, lambda x, y, z: z + 1),
    "c'": (lambda x, y, z: x, lambda x, y, z: y, lambda x, y, z: z - 1),
}


def heisenberg_rep() -> CayleyRep:
    return nilpotent_rep("heisenberg", 3,
                         (("a", "a'"), ("b", "b'"), ("c", "c'")),
                         HEISENBERG_TABLE)
