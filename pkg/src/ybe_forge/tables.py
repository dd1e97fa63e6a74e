"""Finite carriers, Cayley tables, permutations and small groups.

Every structure in the package lives on a carrier ``{0, ..., n-1}``.  A binary
operation is an ``n x n`` table of indices, a self-map is a tuple of ``n``
images.  All checks are exhaustive scans over those tables.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

Map = tuple[int, ...]
Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Failure:
    """A named axiom that does not hold, with the tuple that breaks it."""

    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.axiom} fails at {self.witness}"
        return f"{text}: {self.detail}" if self.detail else text

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


class AxiomError(ValueError):
    """Raised by verifying constructors when an axiom fails."""

    def __init__(self, failure: Failure):
        super().__init__(str(failure))
        self.failure = failure


class InconsistencyError(AssertionError):
    """An identity that must follow from verified axioms did not hold.

    Distinct from :class:`AxiomError`: this signals a contradiction between
    two independent computations, never bad user input.
    """


def ensure(condition: bool, message: str) -> None:
    if not condition:
        raise InconsistencyError(message)


# -- self-maps and permutations ------------------------------------------------

def identity_map(n: int) -> Map:
    return tuple(range(n))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def inverse(p: Sequence[int]) -> Map:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> Map:
    """``p o q``: apply ``q`` first, then ``p``."""
    return tuple(map(p.__getitem__, q))


def map_power(p: Sequence[int], k: int) -> Map:
    """``p^k`` for ``k >= 0``; negative ``k`` requires a permutation."""
    if k < 0:
        p, k = inverse(p), -k
    result = identity_map(len(p))
    base = tuple(p)
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def permutation_order(p: Sequence[int]) -> int:
    if not is_permutation(p):
        raise ValueError("not a permutation")
    return math.lcm(*cycle_type(p)) if len(p) else 1


def map_order(f: Sequence[int], bound: int) -> Optional[int]:
    """Least ``k >= 1`` with ``f^k = id``, or ``None`` when ``k > bound``.

    Works on arbitrary self-maps; a non-injective map never returns to the
    identity and always yields ``None``.
    """
    ident = identity_map(len(f))
    current = tuple(f)
    for k in range(1, bound + 1):
        if current == ident:
            return k
        current = compose(f, current)
    return None


# -- binary operations ---------------------------------------------------------

@dataclass(frozen=True)
class BinOpTable:
    """An ``n x n`` Cayley table; ``table[a][b]`` is ``a * b``."""

    table: Table

    def __post_init__(self) -> None:
        n = len(self.table)
        if n < 1:
            raise ValueError("carrier must be non-empty")
        rows = tuple(tuple(int(x) for x in row) for row in self.table)
        for row in rows:
            if len(row) != n:
                raise ValueError("table must be square")
            for x in row:
                if not 0 <= x < n:
                    raise ValueError(f"entry {x} out of range for carrier of size {n}")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], int]) -> "BinOpTable":
        return cls(tuple(tuple(fn(a, b) for b in range(n)) for a in range(n)))

    @property
    def n(self) -> int:
        return len(self.table)

    def __call__(self, a: int, b: int) -> int:
        return self.table[a][b]

    def row(self, a: int) -> Map:
        """Left translation ``x -> a * x``."""
        return self.table[a]

    def column(self, b: int) -> Map:
        """Right translation ``x -> x * b``."""
        return tuple(self.table[x][b] for x in range(self.n))

    def opposite(self) -> "BinOpTable":
        return BinOpTable(tuple(zip(*self.table)))

    def relabel(self, perm: Sequence[int]) -> "BinOpTable":
        """Transport along the bijection ``x -> perm[x]``."""
        inv = inverse(perm)
        n = self.n
        return BinOpTable.from_function(n, lambda a, b: perm[self.table[inv[a]][inv[b]]])

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.table]


def triples(n: int) -> Iterator[tuple[int, int, int]]:
    return itertools.product(range(n), repeat=3)


def associativity_failure(op: BinOpTable) -> Optional[Failure]:
    t = op.table
    for a, b, c in triples(op.n):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return Failure("associativity", (a, b, c), f"({a}{b}){c}={t[t[a][b]][c]} but {a}({b}{c})={t[a][t[b][c]]}")
    return None


def is_associative(op: BinOpTable) -> bool:
    return associativity_failure(op) is None


def is_right_group(op: BinOpTable) -> bool:
    """Associative and every left translation is a bijection."""
    failure = associativity_failure(op)
    if failure is not None:
        raise AxiomError(failure)
    return all(is_permutation(row) for row in op.table)


def is_left_group(op: BinOpTable) -> bool:
    failure = associativity_failure(op)
    if failure is not None:
        raise AxiomError(failure)
    return all(is_permutation(op.column(b)) for b in range(op.n))


def idempotents(op: BinOpTable) -> frozenset[int]:
    return frozenset(a for a in range(op.n) if op(a, a) == a)


# -- groups --------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    op: BinOpTable
    identity: int
    inverse: Map
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.op.n

    def mul(self, *xs: int) -> int:
        t = self.op.table
        result = self.identity
        for x in xs:
            result = t[result][x]
        return result

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result = self.identity
        for _ in range(k):
            result = self.op.table[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.op.table[x][a]
            k += 1
        return k

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def index(self, name: str) -> int:
        if self.names is None:
            return int(name)
        return self.names.index(name)

    def is_abelian(self) -> bool:
        t = self.op.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a))

    def is_endomorphism(self, f: Sequence[int]) -> bool:
        t = self.op.table
        return all(f[t[a][b]] == t[f[a]][f[b]] for a in range(self.n) for b in range(self.n))

    def subgroup_elements(self, gens: Iterable[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = list(gens)
        while frontier:
            x = frontier.pop()
            if x in elems:
                continue
            elems.add(x)
            frontier.extend(self.op.table[x][y] for y in list(elems))
            frontier.extend(self.op.table[y][x] for y in list(elems))
        return frozenset(elems)


def group_failure(op: BinOpTable) -> Optional[Failure]:
    failure = associativity_failure(op)
    if failure is not None:
        return failure
    n = op.n
    units = [e for e in range(n) if all(op(e, a) == a == op(a, e) for a in range(n))]
    if not units:
        return Failure("identity", (), "no two-sided identity")
    e = units[0]
    for a in range(n):
        if not any(op(a, b) == e == op(b, a) for b in range(n)):
            return Failure("inverse", (a,), f"{a} has no two-sided inverse")
    return None


def is_group(op: BinOpTable) -> Optional[GroupTable]:
    if not is_associative(op):
        return None
    n = op.n
    units = [e for e in range(n) if all(op(e, a) == a == op(a, e) for a in range(n))]
    if not units:
        return None
    e = units[0]
    inv = []
    for a in range(n):
        candidates = [b for b in range(n) if op(a, b) == e == op(b, a)]
        if not candidates:
            return None
        inv.append(candidates[0])
    return GroupTable(op, e, tuple(inv))


def make_group(op: BinOpTable, names: Optional[Sequence[str]] = None) -> GroupTable:
    failure = group_failure(op)
    if failure is not None:
        raise AxiomError(failure)
    group = is_group(op)
    if names is not None:
        group = GroupTable(group.op, group.identity, group.inverse, tuple(names))
    return group


def center(G: GroupTable) -> frozenset[int]:
    t = G.op.table
    return frozenset(z for z in range(G.n) if all(t[z][a] == t[a][z] for a in range(G.n)))


def exponent(G: GroupTable) -> int:
    return math.lcm(*(G.element_order(a) for a in range(G.n)))


def quotient_group(G: GroupTable, normal: frozenset[int]) -> GroupTable:
    """Coset table of ``G/N`` for a normal subgroup ``N``."""
    cosets: list[frozenset[int]] = []
    coset_of = [0] * G.n
    for a in range(G.n):
        if any(a in c for c in cosets):
            continue
        coset = frozenset(G.mul(a, z) for z in normal)
        for x in coset:
            coset_of[x] = len(cosets)
        cosets.append(coset)
    reps = [min(c) for c in cosets]
    k = len(cosets)
    table = BinOpTable.from_function(k, lambda i, j: coset_of[G.mul(reps[i], reps[j])])
    return make_group(table)


def quotient_exponent(G: GroupTable) -> int:
    """Exponent of ``G / Z(G)``, computed on the coset table."""
    return exponent(quotient_group(G, center(G)))


def restrict_group(op: BinOpTable, elements: Sequence[int]) -> tuple[GroupTable, tuple[int, ...]]:
    """The group carried by ``elements`` under ``op``, reindexed ``0..k-1``.

    Returns the group and the list mapping new indices to old ones.
    """
    elements = tuple(sorted(elements))
    position = {x: i for i, x in enumerate(elements)}
    try:
        table = BinOpTable.from_function(len(elements), lambda i, j: position[op(elements[i], elements[j])])
    except KeyError as exc:
        raise AxiomError(Failure("closure", (int(exc.args[0]),), "subset not closed")) from None
    return make_group(table), elements


# -- structure isomorphism -----------------------------------------------------

def find_isomorphism(
    ops1: Sequence[BinOpTable],
    ops2: Sequence[BinOpTable],
    colour1: Optional[Sequence] = None,
    colour2: Optional[Sequence] = None,
) -> Optional[Map]:
    """Bijection ``f`` with ``f(x *_i y) = f(x) *'_i f(y)`` for every operation.

    ``colour1``/``colour2`` are per-element invariants; only elements of equal
    colour may be matched.  Backtracking assigns images in order and checks
    each operation on the already-assigned square.
    """
    if len(ops1) != len(ops2):
        raise ValueError("operation lists differ in length")
    n = ops1[0].n
    if any(op.n != n for op in (*ops1, *ops2)):
        return None
    colour1 = list(colour1) if colour1 is not None else [0] * n
    colour2 = list(colour2) if colour2 is not None else [0] * n
    if sorted(map(repr, colour1)) != sorted(map(repr, colour2)):
        return None
    t1 = [op.table for op in ops1]
    t2 = [op.table for op in ops2]
    image = [-1] * n
    used = [False] * n
    order: list[int] = []

    def consistent(x: int) -> bool:
        # ``order`` already contains x, so (x, x) is covered
        for a in order:
            for b, c in ((a, x), (x, a)):
                fb, fc = image[b], image[c]
                for s, t in zip(t1, t2):
                    target = s[b][c]
                    if image[target] >= 0:
                        if image[target] != t[fb][fc]:
                            return False
                    elif used[t[fb][fc]]:
                        return False
        return True

    def search(i: int) -> bool:
        if i == n:
            return True
        for y in range(n):
            if used[y] or colour2[y] != colour1[i]:
                continue
            image[i] = y
            used[y] = True
            order.append(i)
            if consistent(i) and search(i + 1):
                return True
            order.pop()
            used[y] = False
            image[i] = -1
        return False

    if not search(0):
        return None
    f = tuple(image)
    for s, t in zip(t1, t2):
        ensure(all(f[s[a][b]] == t[f[a]][f[b]] for a in range(n) for b in range(n)), "isomorphism search returned a non-homomorphism")
    return f
