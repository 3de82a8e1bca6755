"""Alphabets, words, and the padded convolution of word pairs.

Symbols are opaque string tokens, not single characters, because group
alphabets routinely need names like "a'", "↑" or multi-track tuples joined
into one token.  The padding marker used to align convolution tracks is a
reserved token that no user alphabet may contain.
"""

from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import AlphabetError, ParseError

# Reserved tokens.  PAD aligns convolution tracks; the two tape markers
# belong to the machine model and are likewise banned from user alphabets.
PAD = "_"
LEFT_MARKER = "⊞"
BLANK = "⊡"
_RESERVED = frozenset({PAD, LEFT_MARKER, BLANK})

EPSILON_TOKEN = "eps"


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of distinct symbol tokens."""

    symbols: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError("alphabet symbols must be pairwise distinct")
        bad = _RESERVED.intersection(self.symbols)
        if bad:
            raise AlphabetError(f"reserved tokens not allowed in alphabet: {sorted(bad)}")
        if EPSILON_TOKEN in self.symbols:
            raise AlphabetError(f"token {EPSILON_TOKEN!r} is reserved for the empty word")

    def __contains__(self, symbol):
        return symbol in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)


def alphabet(*symbols: str) -> Alphabet:
    return Alphabet(tuple(symbols))


@dataclass(frozen=True)
class TrackAlphabet(Alphabet):
    """Token alphabet of n-track convolution cells, held structurally.

    Tokens are ':'-joined component symbols with PAD marking exhausted
    tracks (never all of them).  Multi-track matrix encodings would need
    (c+1)^n explicit tokens, so membership is decided by splitting the
    token instead of enumerating.
    """

    components: Tuple[str, ...] = ()
    tracks: int = 1

    def __post_init__(self):
        Alphabet(self.components)  # reuse the reserved-token checks
        if self.symbols != ():
            raise AlphabetError("TrackAlphabet enumerates tokens lazily")
        if self.tracks < 1:
            raise AlphabetError("need at least one track")

    def __contains__(self, symbol):
        parts = symbol.split(":") if isinstance(symbol, str) else None
        if not parts or len(parts) != self.tracks:
            return False
        allowed = set(self.components) | {PAD}
        return all(p in allowed for p in parts) and any(p != PAD for p in parts)

    def __iter__(self):
        from itertools import product
        for combo in product(self.components + (PAD,), repeat=self.tracks):
            if any(c != PAD for c in combo):
                yield ":".join(combo)

    def __len__(self):
        return (len(self.components) + 1) ** self.tracks - 1


@dataclass(frozen=True)
class Word:
    """A finite sequence of symbols from a declared alphabet.

    The empty sequence represents the empty word.
    """

    alphabet: Alphabet
    letters: Tuple[str, ...]

    def __post_init__(self):
        for letter in self.letters:
            if letter not in self.alphabet:
                raise AlphabetError(f"letter {letter!r} not in alphabet")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def text(self) -> str:
        """Space separated token text; the empty word renders as 'eps'."""
        return " ".join(self.letters) if self.letters else EPSILON_TOKEN

    def compact(self) -> str:
        """Tokens joined without separators, apostrophe inverses shown as ⁻¹."""
        return "".join(s[:-1] + "⁻¹" if s.endswith("'") else s for s in self.letters)


def word(alpha: Alphabet, letters: Iterable[str]) -> Word:
    return Word(alpha, tuple(letters))


def parse_word(alpha: Alphabet, text: str) -> Word:
    """Parse space separated tokens; the literal token 'eps' is the empty word.

    '^' is accepted as a keyboard-friendly alias for '↑' where the alphabet
    has the arrow symbol.
    """
    tokens = text.split()
    if tokens == [EPSILON_TOKEN]:
        return Word(alpha, ())
    out = []
    for pos, tok in enumerate(tokens):
        if tok == "^" and "↑" in alpha and "^" not in alpha:
            tok = "↑"
        if tok not in alpha:
            raise ParseError(f"unknown symbol {tok!r}", position=pos)
        out.append(tok)
    return Word(alpha, tuple(out))


@dataclass(frozen=True)
class ConvolutionWord:
    """The padded pairing u ⊗ v of two words over one alphabet.

    Cell i is (u_i or PAD, v_i or PAD); the shorter track is padded at the
    end, never in the middle, and no cell is (PAD, PAD).
    """

    alphabet: Alphabet
    cells: Tuple[Tuple[str, str], ...]

    def __len__(self):
        return len(self.cells)

    def track(self, index: int) -> Word:
        letters = tuple(cell[index] for cell in self.cells if cell[index] != PAD)
        return Word(self.alphabet, letters)


def convolve(u: Word, v: Word) -> ConvolutionWord:
    if u.alphabet != v.alphabet:
        raise AlphabetError("convolution requires both words over the same alphabet")
    n = max(len(u), len(v))
    cells = tuple(
        (u.letters[i] if i < len(u) else PAD, v.letters[i] if i < len(v) else PAD)
        for i in range(n)
    )
    return ConvolutionWord(u.alphabet, cells)


def deconvolve(cw: ConvolutionWord) -> Tuple[Word, Word]:
    return cw.track(0), cw.track(1)


def convolve_cells(u: Tuple[str, ...], v: Tuple[str, ...]) -> Tuple[Tuple[str, str], ...]:
    """Cell sequence of u ⊗ v on raw letter tuples (no alphabet checks)."""
    n = max(len(u), len(v))
    return tuple((u[i] if i < len(u) else PAD, v[i] if i < len(v) else PAD) for i in range(n))


def multi_convolve(tracks: Tuple[Tuple[str, ...], ...]) -> Tuple[str, ...]:
    """n-track convolution by iterated pairing, one token per cell.

    Track components are joined with ':'; exhausted tracks contribute PAD.
    Used by the matrix and nilpotent encodings, which need more than two
    tracks per element.
    """
    n = max((len(t) for t in tracks), default=0)
    out = []
    for i in range(n):
        out.append(":".join(t[i] if i < len(t) else PAD for t in tracks))
    return tuple(out)


def multi_deconvolve(letters: Tuple[str, ...], ntracks: int) -> Tuple[Tuple[str, ...], ...]:
    tracks = [[] for _ in range(ntracks)]
    for tok in letters:
        parts = tok.split(":")
        if len(parts) != ntracks:
            raise ParseError(f"cell {tok!r} does not have {ntracks} components")
        for t, part in enumerate(parts):
            if part != PAD:
                tracks[t].append(part)
    return tuple(tuple(t) for t in tracks)
