"""Named small groups used throughout the examples and tests."""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .tables import BinOpTable, GroupTable, make_group


def cyclic(n: int) -> GroupTable:
    return make_group(BinOpTable.from_function(n, lambda a, b: (a + b) % n), [str(k) for k in range(n)])


def klein() -> GroupTable:
    """``V4 = {1, a, b, ab}`` with index ``x + 2y`` for ``a^x b^y``."""
    return make_group(BinOpTable.from_function(4, lambda x, y: x ^ y), ["1", "a", "b", "ab"])


def _cycle_name(p: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(str(x + 1))
            x = p[x]
        parts.append("(" + "".join(cycle) + ")")
    return "".join(parts) or "id"


def from_permutations(perms: Sequence[Sequence[int]]) -> GroupTable:
    """Group of permutations with product ``(pq)(x) = p(q(x))``."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    op = BinOpTable.from_function(len(perms), lambda i, j: index[tuple(perms[i][x] for x in perms[j])])
    return make_group(op, [_cycle_name(p) for p in perms])


def symmetric(k: int) -> GroupTable:
    return from_permutations(sorted(itertools.permutations(range(k))))


def s3() -> GroupTable:
    """``Sym_3`` on ``{1,2,3}``; index 0 is the identity."""
    return symmetric(3)


def dihedral(m: int) -> GroupTable:
    """Symmetries of the regular ``m``-gon, order ``2m``."""
    rot = tuple((x + 1) % m for x in range(m))
    ref = tuple((-x) % m for x in range(m))
    elems = {tuple(range(m))}
    frontier = [rot, ref]
    while frontier:
        p = frontier.pop()
        if p in elems:
            continue
        elems.add(p)
        frontier.extend(tuple(p[x] for x in q) for q in (rot, ref))
    return from_permutations(sorted(elems))


def quaternion() -> GroupTable:
    """``Q8 = {±1, ±i, ±j, ±k}``; index ``2u + s`` with unit ``u`` and sign bit ``s``."""
    # unit products: (u, v) -> (w, sign)
    units = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }

    def mul(a: int, b: int) -> int:
        w, s = units[(a // 2, b // 2)]
        return 2 * w + ((a % 2) ^ (b % 2) ^ s)

    names = [sign + u for u in ("1", "i", "j", "k") for sign in ("", "-")]
    return make_group(BinOpTable.from_function(8, mul), names)


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    m = H.n

    def mul(a: int, b: int) -> int:
        return G.mul(a // m, b // m) * m + H.mul(a % m, b % m)

    names = [f"({G.name(a)},{H.name(b)})" for a in range(G.n) for b in range(H.n)]
    return make_group(BinOpTable.from_function(G.n * m, mul), names)


CORPUS: dict[str, Callable[[], GroupTable]] = {
    **{f"Z{n}": (lambda n=n: cyclic(n)) for n in range(2, 9)},
    "V4": klein,
    "S3": s3,
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
}


def by_name(name: str) -> GroupTable:
    key = name.upper()
    if key in CORPUS:
        return CORPUS[key]()
    if key.startswith("Z") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    if key.startswith("D") and key[1:].isdigit():
        return dihedral(int(key[1:]))
    if key.startswith("S") and key[1:].isdigit():
        return symmetric(int(key[1:]))
    raise KeyError(f"unknown group {name!r}")
