"""Independent brute-force group oracles.

Each oracle carries exact group arithmetic in a representation that shares
no code with the Cayley representations being tested: lamplighter elements
as (lamp set, position) pairs, matrix groups as exact rational matrices,
Baumslag-Solitar groups as Britton-reduced letter sequences, Z[1/k] as
Fraction values.  Product and free-product oracles are composed from these.
"""

from dataclasses import dataclass, field
from collections import deque
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from .errors import AlphabetError, CapExceededError


@dataclass(frozen=True)
class GroupOracle:
    """Exact arithmetic for one group: identity, right generator actions,
    and (where available) full multiplication and inversion."""

    name: str
    identity: object
    actions: Dict[str, Callable]
    multiply: Optional[Callable] = None
    invert: Optional[Callable] = None
    hashable: bool = True

    def act(self, element, symbol):
        fn = self.actions.get(symbol)
        if fn is None:
            raise AlphabetError(f"oracle {self.name}: unknown generator {symbol!r}")
        return fn(element)

    def evaluate(self, letters):
        """Left-to-right fold of generator actions from the identity."""
        g = self.identity
        for sym in letters:
            g = self.act(g, sym)
        return g


def evaluate_word(oracle: GroupOracle, letters) -> object:
    return oracle.evaluate(letters)


def bfs_ball(oracle: GroupOracle, radius: int, cap: Optional[int] = None) -> Dict[object, int]:
    """Breadth-first ball: element -> word-metric distance, up to radius.

    Requires hashable oracle elements.  Raises CapExceededError if the ball
    grows past cap.
    """
    dist = {oracle.identity: 0}
    queue = deque([oracle.identity])
    while queue:
        g = queue.popleft()
        d = dist[g]
        if d == radius:
            continue
        for sym in oracle.actions:
            h = oracle.act(g, sym)
            if h not in dist:
                if cap is not None and len(dist) >= cap:
                    raise CapExceededError(
                        f"oracle {oracle.name}: ball exceeded cap {cap} at radius {d + 1}"
                    )
                dist[h] = d + 1
                queue.append(h)
    return dist


# ---------------------------------------------------------------------------
# Lamplighter Z2 wr Z


@dataclass(frozen=True)
class LamplighterElement:
    """(f, z): finitely many lit lamps (integer positions) and a position."""

    lamps: FrozenSet[int]
    pos: int

    @staticmethod
    def identity() -> "LamplighterElement":
        return LamplighterElement(frozenset(), 0)

    def move(self, delta: int) -> "LamplighterElement":
        return LamplighterElement(self.lamps, self.pos + delta)

    def toggle(self) -> "LamplighterElement":
        return LamplighterElement(self.lamps ^ {self.pos}, self.pos)

    def product(self, other: "LamplighterElement") -> "LamplighterElement":
        shifted = frozenset(i + self.pos for i in other.lamps)
        return LamplighterElement(self.lamps ^ shifted, self.pos + other.pos)

    def inverse(self) -> "LamplighterElement":
        return LamplighterElement(frozenset(i - self.pos for i in self.lamps), -self.pos)


def lamplighter_oracle() -> GroupOracle:
    return GroupOracle(
        name="lamplighter",
        identity=LamplighterElement.identity(),
        actions={
            "a": lambda g: g.move(1),
            "a'": lambda g: g.move(-1),
            "b": lambda g: g.toggle(),
        },
        multiply=lambda g, h: g.product(h),
        invert=lambda g: g.inverse(),
    )


# ---------------------------------------------------------------------------
# Exact rational matrices


@dataclass(frozen=True)
class RationalMatrix:
    entries: Tuple[Tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(sum(self.entries[i][l] * other.entries[l][j] for l in range(n)))
            rows.append(tuple(row))
        return RationalMatrix(tuple(rows))

    def inverse(self) -> "RationalMatrix":
        """Gauss-Jordan over Q; raises ZeroDivisionError on singular input."""
        n = self.n
        aug = [list(self.entries[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if aug[r][col] != 0:
                    pivot = r
                    break
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = Fraction(1, 1) / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return RationalMatrix(tuple(tuple(row[n:]) for row in aug))


def matrix_oracle(name: str, generators: Dict[str, RationalMatrix]) -> GroupOracle:
    """Oracle acting by exact right matrix multiplication.

    generators maps each semigroup symbol (inverses included) to its matrix.
    """
    n = next(iter(generators.values())).n
    actions = {sym: (lambda g, m=m: g @ m) for sym, m in generators.items()}
    return GroupOracle(
        name=name,
        identity=RationalMatrix.identity(n),
        actions=actions,
        multiply=lambda g, h: g @ h,
        invert=lambda g: g.inverse(),
    )


def heisenberg_oracle() -> GroupOracle:
    """Integer Heisenberg group as 3x3 unitriangular matrices."""
    a = RationalMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = RationalMatrix.from_rows([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    c = RationalMatrix.from_rows([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    gens = {"a": a, "b": b, "c": c,
            "a'": a.inverse(), "b'": b.inverse(), "c'": c.inverse()}
    return matrix_oracle("heisenberg-matrix", gens)


def bs_matrix_oracle(q: int) -> GroupOracle:
    """Faithful 2x2 rational oracle for BS(1, q): a = [[1,1],[0,1]],
    t = [[q,0],[0,1]], so t a t' = a^q."""
    a = RationalMatrix.from_rows([[1, 1], [0, 1]])
    t = RationalMatrix.from_rows([[q, 0], [0, 1]])
    gens = {"a": a, "t": t, "a'": a.inverse(), "t'": t.inverse()}
    return matrix_oracle(f"bs-matrix-1-{q}", gens)


# ---------------------------------------------------------------------------
# Baumslag-Solitar via Britton reduction


def britton_reduce(p: int, q: int, letters) -> Tuple:
    """Reduce a word over {a, a', t, t'} in BS(p,q) = <a,t | t a^p t' = a^q>.

    Returns a pinch-free syllable sequence of ('a', k) and ('t', e) items.
    By Britton's lemma the word represents the identity iff the result is
    empty.  The reduced sequence itself is not canonical, so equality of two
    words is tested by reducing u v^-1, not by comparing sequences.
    """
    stack = []

    def push_a(k):
        if k == 0:
            return
        if stack and stack[-1][0] == "a":
            merged = stack[-1][1] + k
            stack.pop()
            if merged != 0:
                stack.append(("a", merged))
        else:
            stack.append(("a", k))

    def push_t(e):
        if stack and stack[-1] == ("t", -e):
            stack.pop()
            return
        if len(stack) >= 2 and stack[-1][0] == "a" and stack[-2] == ("t", -e):
            k = stack[-1][1]
            if e == -1 and k % p == 0:
                stack.pop()
                stack.pop()
                push_a(k // p * q)
                return
            if e == 1 and k % q == 0:
                stack.pop()
                stack.pop()
                push_a(k // q * p)
                return
        stack.append(("t", e))

    for sym in letters:
        if sym == "a":
            push_a(1)
        elif sym == "a'":
            push_a(-1)
        elif sym == "t":
            push_t(1)
        elif sym == "t'":
            push_t(-1)
        else:
            raise AlphabetError(f"britton_reduce: unknown letter {sym!r}")
    return tuple(stack)


def _britton_concat(p, q, g, h):
    letters = []
    for kind, val in g + h:
        if kind == "a":
            letters.extend(["a" if val > 0 else "a'"] * abs(val))
        else:
            letters.append("t" if val > 0 else "t'")
    return britton_reduce(p, q, letters)


def _britton_invert(g):
    return tuple(("a", -v) if kind == "a" else ("t", -v) for kind, v in reversed(g))


def britton_oracle(p: int, q: int) -> GroupOracle:
    """BS(p,q) oracle on Britton-reduced sequences.

    Identity testing is exact; elements are not canonical forms, so the
    oracle is flagged non-hashable and equality of g, h must be checked as
    emptiness of g h^-1.
    """
    def act(sym):
        return lambda g: _britton_concat(p, q, g, britton_reduce(p, q, [sym]))

    return GroupOracle(
        name=f"britton-{p}-{q}",
        identity=(),
        actions={sym: act(sym) for sym in ("a", "a'", "t", "t'")},
        multiply=lambda g, h: _britton_concat(p, q, g, h),
        invert=_britton_invert,
        hashable=False,
    )


def britton_is_identity(element) -> bool:
    return element == ()


# ---------------------------------------------------------------------------
# Z[1/k], Z, and compositions


def zk_oracle(k: int) -> GroupOracle:
    unit = Fraction(1, k)
    return GroupOracle(
        name=f"zk-{k}",
        identity=Fraction(0),
        actions={
            "1": lambda x: x + 1,
            "1'": lambda x: x - 1,
            f"1/{k}": lambda x: x + unit,
            f"1/{k}'": lambda x: x - unit,
        },
        multiply=lambda x, y: x + y,
        invert=lambda x: -x,
    )


def int_oracle() -> GroupOracle:
    return GroupOracle(
        name="zn-1",
        identity=0,
        actions={"a": lambda x: x + 1, "a'": lambda x: x - 1},
        multiply=lambda x, y: x + y,
        invert=lambda x: -x,
    )


def direct_product_oracle(name: str, factors, symbol_map) -> GroupOracle:
    """Componentwise product.  symbol_map: tagged symbol -> (index, base symbol)."""
    factors = tuple(factors)

    def act(i, base):
        return lambda g: g[:i] + (factors[i].act(g[i], base),) + g[i + 1:]

    actions = {sym: act(i, base) for sym, (i, base) in symbol_map.items()}
    multiply = None
    if all(o.multiply for o in factors):
        multiply = lambda g, h: tuple(o.multiply(a, b) for o, a, b in zip(factors, g, h))
    invert = None
    if all(o.invert for o in factors):
        invert = lambda g: tuple(o.invert(a) for o, a in zip(factors, g))
    return GroupOracle(
        name=name,
        identity=tuple(o.identity for o in factors),
        actions=actions,
        multiply=multiply,
        invert=invert,
        hashable=all(o.hashable for o in factors),
    )


def free_product_oracle(name: str, factors, symbol_map) -> GroupOracle:
    """Free product on alternating nontrivial blocks (index, element).

    Every factor must supply multiply (for seam merging) and invert.
    """
    factors = tuple(factors)

    def push(blocks, i, elem):
        if blocks and blocks[-1][0] == i:
            merged = factors[i].multiply(blocks[-1][1], elem)
            blocks = blocks[:-1]
            if merged != factors[i].identity:
                blocks = blocks + ((i, merged),)
            return blocks
        if elem == factors[i].identity:
            return blocks
        return blocks + ((i, elem),)

    def act(i, base):
        def step(g):
            elem = factors[i].act(factors[i].identity, base)
            return push(g, i, elem)
        return step

    def multiply(g, h):
        out = g
        for i, elem in h:
            out = push(out, i, elem)
        return out

    def invert(g):
        return tuple((i, factors[i].invert(elem)) for i, elem in reversed(g))

    actions = {sym: act(i, base) for sym, (i, base) in symbol_map.items()}
    return GroupOracle(
        name=name,
        identity=(),
        actions=actions,
        multiply=multiply,
        invert=invert,
        hashable=all(o.hashable for o in factors),
    )


def subgroup_oracle(parent: GroupOracle, bindings: Dict[str, object]) -> GroupOracle:
    """Oracle over new generator names defined by words in the parent.

    A name without an explicit primed partner gets one via parent.invert.
    """
    if parent.multiply is None or parent.invert is None:
        raise AlphabetError(f"oracle {parent.name} must multiply and invert")
    table = {}
    for name, defining in bindings.items():
        letters = tuple(defining.split() if isinstance(defining, str) else defining)
        table[name] = parent.evaluate(letters)
    for name in list(table):
        partner = name[:-1] if name.endswith("'") else name + "'"
        if partner not in table:
            table[partner] = parent.invert(table[name])
    actions = {name: (lambda g, e=e: parent.multiply(g, e))
               for name, e in table.items()}
    return GroupOracle(
        name=f"{parent.name}-sub",
        identity=parent.identity,
        actions=actions,
        multiply=parent.multiply,
        invert=parent.invert,
        hashable=parent.hashable,
    )


def dihedral_matrix_oracle() -> GroupOracle:
    """Infinite dihedral group: translation a and reflection k as 2x2
    integer matrices."""
    a = RationalMatrix.from_rows([[1, 1], [0, 1]])
    refl = RationalMatrix.from_rows([[-1, 0], [0, 1]])
    gens = {"a": a, "a'": a.inverse(), "k": refl, "k'": refl.inverse()}
    return matrix_oracle("dihedral-matrix", gens)
