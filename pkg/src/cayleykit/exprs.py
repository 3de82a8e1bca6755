"""The group-expression language used by the CLI and service.

    expr := atom | dp(expr, expr) | fp(expr, expr)
          | ext(expr, table.json) | sub(expr, name=word, ...)

Atoms are registry names (lamplighter, bs:1:2, zn:2, matrix:gens.json, ...).
parse_expr gives a small AST; elaborate turns it into a CayleyRep paired
with a matching exact oracle, so every expression can be both computed
and independently verified.  Parse errors carry the offending position.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

from .combinators import (direct_product, disjoint_tagging, extension_oracle,
                          finite_extension, free_product, load_extension_table,
                          subgroup)
from .errors import ParseError, UnsupportedError
from .groups import registry
from .oracle import (GroupOracle, direct_product_oracle, free_product_oracle,
                     subgroup_oracle)
from .representation import CayleyRep
from .words import EPSILON_TOKEN

_STOP_CHARS = set("(),= \t")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Dp:
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class Fp:
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class Ext:
    base: "GroupExpr"
    table_path: str


@dataclass(frozen=True)
class Sub:
    base: "GroupExpr"
    bindings: Tuple[Tuple[str, str], ...]


GroupExpr = Union[Atom, Dp, Fp, Ext, Sub]


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(f"{message} (at position {self.pos})", self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def token(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _STOP_CHARS:
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a name")
        return self.text[start:self.pos]


def parse_expr(text: str) -> GroupExpr:
    scanner = _Scanner(text)
    expr = _parse(scanner)
    scanner.skip_ws()
    if scanner.pos != len(text):
        raise scanner.error("trailing input after expression")
    return expr


def _parse(sc: _Scanner) -> GroupExpr:
    tok = sc.token()
    sc.skip_ws()
    if sc.peek() != "(":
        return Atom(tok)
    if tok not in ("dp", "fp", "ext", "sub"):
        raise sc.error(f"unknown combinator {tok!r}")
    sc.expect("(")
    if tok in ("dp", "fp"):
        left = _parse(sc)
        sc.expect(",")
        right = _parse(sc)
        sc.expect(")")
        return Dp(left, right) if tok == "dp" else Fp(left, right)
    if tok == "ext":
        base = _parse(sc)
        sc.expect(",")
        path = sc.token()
        sc.expect(")")
        return Ext(base, path)
    base = _parse(sc)
    bindings = []
    sc.skip_ws()
    while sc.peek() == ",":
        sc.expect(",")
        name = sc.token()
        sc.expect("=")
        word = sc.token()
        bindings.append((name, word))
    sc.expect(")")
    if not bindings:
        raise sc.error("sub() needs at least one generator binding")
    return Sub(base, tuple(bindings))


# ---------------------------------------------------------------------------
# Word tokenization


def tokenize_word(symbols: Sequence[str], text: str) -> Tuple[str, ...]:
    """Split input text into generator symbols.

    Whitespace-separated chunks are matched against the symbol set; a chunk
    that is not itself a symbol is scanned greedily longest-match, so
    compact words like aa'b parse without spaces.  'eps' is the empty word.
    """
    text = text.strip()
    if text in ("", EPSILON_TOKEN):
        return ()
    known = set(symbols)
    by_length = sorted(known, key=len, reverse=True)
    out = []
    offset = 0
    for chunk in text.split():
        start = text.index(chunk, offset)
        offset = start + len(chunk)
        if chunk in known:
            out.append(chunk)
            continue
        i = 0
        while i < len(chunk):
            for sym in by_length:
                if chunk.startswith(sym, i):
                    out.append(sym)
                    i += len(sym)
                    break
            else:
                raise ParseError(
                    f"cannot read a generator at {chunk[i:]!r}", start + i)
    return tuple(out)


def parse_language_word(rep: CayleyRep, text: str) -> Tuple[str, ...]:
    """Normal-form word input: whitespace-separated alphabet tokens."""
    text = text.strip()
    if text in ("", EPSILON_TOKEN):
        return ()
    letters = tuple(text.split())
    for i, letter in enumerate(letters):
        if letter not in rep.alphabet:
            raise ParseError(f"token {letter!r} is not in the alphabet of "
                             f"{rep.name}", i)
    return letters


# ---------------------------------------------------------------------------
# Elaboration


def _product_symbol_map(rep1: CayleyRep, rep2: CayleyRep) -> Dict[str, Tuple[int, str]]:
    mapping = disjoint_tagging(rep1, rep2)
    sym_map = {s: (0, s) for s in rep1.generators.symbols}
    for s in rep2.generators.symbols:
        sym_map[mapping.get(s, s)] = (1, s)
    return sym_map


def elaborate(expr: GroupExpr) -> Tuple[CayleyRep, GroupOracle]:
    """Expression -> (rep, matching oracle)."""
    if isinstance(expr, Atom):
        return registry.resolve(expr.name)
    if isinstance(expr, (Dp, Fp)):
        rep1, o1 = elaborate(expr.left)
        rep2, o2 = elaborate(expr.right)
        sym_map = _product_symbol_map(rep1, rep2)
        if isinstance(expr, Dp):
            rep = direct_product(rep1, rep2)
            return rep, direct_product_oracle(rep.name, (o1, o2), sym_map)
        if o1.multiply is None or o2.multiply is None:
            raise UnsupportedError("free products need factor oracles that multiply")
        rep = free_product(rep1, rep2)
        return rep, free_product_oracle(rep.name, (o1, o2), sym_map)
    if isinstance(expr, Ext):
        rep, oracle = elaborate(expr.base)
        table = load_extension_table(expr.table_path)
        ext_rep = finite_extension(rep, table)
        return ext_rep, extension_oracle(oracle, table, rep.generators.symbols)
    if isinstance(expr, Sub):
        rep, oracle = elaborate(expr.base)
        bindings = {name: tokenize_word(rep.generators.symbols, word)
                    for name, word in expr.bindings}
        return subgroup(rep, bindings), subgroup_oracle(oracle, bindings)
    raise TypeError(f"not a group expression: {expr!r}")


def resolve_expr(text: str) -> Tuple[CayleyRep, GroupOracle]:
    return elaborate(parse_expr(text))
