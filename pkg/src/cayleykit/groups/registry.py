"""Named built-in representations, each paired with an exact oracle.

resolve() understands:

    lamplighter     Z2 wr Z
    bs:p:q          Baumslag-Solitar BS(p,q), 1 <= p < q
    heisenberg      3x3 unitriangular integer matrices
    zk:k            Z[1/k] under addition, k >= 2
    zn:n            Z^n (direct products of the unary Z rep), n >= 1
    matrix:<file>   f.g. subgroup of GL(n,Q) from a JSON generator file
"""

from dataclasses import replace
from typing import Dict, Tuple

from ..combinators import direct_product, disjoint_tagging
from ..errors import ParseError
from ..oracle import (GroupOracle, RationalMatrix, britton_oracle,
                      direct_product_oracle, heisenberg_oracle,
                      int_oracle, lamplighter_oracle, matrix_oracle,
                      zk_oracle)
from ..representation import CayleyRep
from .baumslag import bs_rep
from .lamplighter import lamplighter_rep
from .matrices import matrix_rep, parse_matrix_file
from .nilpotent import heisenberg_rep
from .zk import zk_rep
from .zn import zn_rep

REGISTRY_PATTERNS = (
    ("lamplighter", "wreath product Z2 wr Z (lamplighter group)"),
    ("bs:p:q", "Baumslag-Solitar group BS(p,q) with 1 <= p < q"),
    ("heisenberg", "discrete Heisenberg group H3(Z)"),
    ("zk:k", "Z[1/k], base-k digit strings, k >= 2"),
    ("zn:n", "free abelian group Z^n, n >= 1"),
    ("matrix:<file>", "matrix group from a JSON generator file"),
)

_cache: Dict[str, Tuple[CayleyRep, GroupOracle]] = {}


def _int_arg(name: str, text: str, minimum: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"{name}: expected an integer, got {text!r}") from None
    if value < minimum:
        raise ParseError(f"{name}: argument must be >= {minimum}")
    return value


def _zn(n: int) -> Tuple[CayleyRep, GroupOracle]:
    rep, oracle = zn_rep(), int_oracle()
    for i in range(1, n):
        nxt_rep, nxt_oracle = zn_rep(), int_oracle()
        mapping = disjoint_tagging(rep, nxt_rep)
        sym_map = {s: (0, s) for s in rep.generators.symbols}
        for s in nxt_rep.generators.symbols:
            sym_map[mapping.get(s, s)] = (1, s)
        rep = direct_product(rep, nxt_rep)
        oracle = direct_product_oracle(f"zn-{i + 1}", (oracle, nxt_oracle), sym_map)
    if n > 1:
        rep = replace(rep, name=f"zn:{n}")
    return rep, oracle


def _matrix(path: str) -> Tuple[CayleyRep, GroupOracle]:
    label, mats, pairs = parse_matrix_file(path)
    rep = matrix_rep(f"matrix:{label}", mats, pairs)
    gens = {sym: RationalMatrix.from_rows(rows) for sym, rows in mats.items()}
    return rep, matrix_oracle(f"matrix-{label}", gens)


def _build(name: str) -> Tuple[CayleyRep, GroupOracle]:
    if name == "lamplighter":
        return lamplighter_rep(), lamplighter_oracle()
    if name == "heisenberg":
        return heisenberg_rep(), heisenberg_oracle()
    if name.startswith("bs:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise ParseError(f"bad group name {name!r}: expected bs:p:q")
        p = _int_arg(name, parts[1], 1)
        q = _int_arg(name, parts[2], 1)
        if not p < q:
            raise ParseError(f"{name}: need p < q")
        return bs_rep(p, q), britton_oracle(p, q)
    if name.startswith("zk:"):
        k = _int_arg(name, name[3:], 2)
        return zk_rep(k), zk_oracle(k)
    if name.startswith("zn:"):
        n = _int_arg(name, name[3:], 1)
        return _zn(n)
    if name.startswith("matrix:"):
        return _matrix(name[len("matrix:"):])
    known = ", ".join(pattern for pattern, _ in REGISTRY_PATTERNS)
    raise ParseError(f"unknown group {name!r} (known: {known})")


def resolve(name: str) -> Tuple[CayleyRep, GroupOracle]:
    """Group name -> (representation, exact oracle), cached per name."""
    if name not in _cache:
        _cache[name] = _build(name)
    return _cache[name]


def resolve_rep(name: str) -> CayleyRep:
    return resolve(name)[0]
