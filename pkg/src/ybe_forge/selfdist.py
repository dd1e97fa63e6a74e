"""Shelves, racks and quandles, their derived solutions and orders."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Optional

from .digroup import GDigroup
from .tables import (
    AxiomError,
    BinOpTable,
    Failure,
    GroupTable,
    Map,
    compose,
    ensure,
    exponent,
    inverse,
    is_permutation,
    map_order,
    map_power,
    quotient_exponent,
    triples,
)


def default_bound() -> int:
    return int(os.environ.get("YBE_FORGE_BOUND", "64"))


def self_distributivity_failure(tri: BinOpTable) -> Optional[Failure]:
    t = tri.table
    for a, b, c in triples(tri.n):
        if t[a][t[b][c]] != t[t[a][b]][t[a][c]]:
            return Failure("self-distributivity", (a, b, c))
    return None


@dataclass(frozen=True)
class Shelf:
    tri: BinOpTable
    is_rack: bool
    is_quandle: bool

    @property
    def n(self) -> int:
        return self.tri.n

    def __call__(self, a: int, b: int) -> int:
        return self.tri.table[a][b]

    def L(self, a: int) -> Map:
        return self.tri.table[a]

    def L_inv(self, a: int) -> Map:
        return inverse(self.tri.table[a])

    def to_json(self) -> dict:
        return {"n": self.n, "tri": self.tri.to_json()}


def make_shelf(tri: BinOpTable) -> Shelf:
    failure = self_distributivity_failure(tri)
    if failure is not None:
        raise AxiomError(failure)
    n = tri.n
    L = tri.table
    for a in range(n):
        for b in range(n):
            ensure(compose(L[a], L[b]) == compose(L[L[a][b]], L[a]), f"L_aL_b = L_(a▷b)L_a fails at {(a, b)}")
    rack = all(is_permutation(row) for row in L)
    quandle = rack and all(L[a][a] == a for a in range(n))
    return Shelf(tri, rack, quandle)


def trivial_quandle(n: int) -> Shelf:
    return make_shelf(BinOpTable.from_function(n, lambda a, b: b))


def constant_shelf(f: Map) -> Shelf:
    """``a ▷ b = f(b)``; a rack exactly when ``f`` is a bijection."""
    return make_shelf(BinOpTable.from_function(len(f), lambda a, b: f[b]))


def conj_quandle(G: GroupTable) -> Shelf:
    S = make_shelf(BinOpTable.from_function(G.n, lambda a, b: G.mul(G.inv(a), b, a)))
    ensure(S.is_quandle, "conjugation quandle is not a quandle")
    return S


def core_quandle(G: GroupTable) -> Shelf:
    S = make_shelf(BinOpTable.from_function(G.n, lambda a, b: G.mul(a, G.inv(b), a)))
    ensure(S.is_quandle, "core quandle is not a quandle")
    return S


def conjugation_rack(D: GDigroup) -> Shelf:
    """``a ▷ b = a⁻¹ ⊢ b ⊣ a`` on a g-digroup."""
    S = make_shelf(BinOpTable.from_function(D.n, D.conj))
    ensure(S.is_rack, "conjugation rack is not a rack")
    return S


def _require_rack(S: Shelf) -> None:
    if not S.is_rack:
        raise ValueError("operation requires a rack")


def power_even(S: Shelf, a: int, b: int, n: int) -> tuple[int, int]:
    """Closed form of ``r^(2n)(a, b)`` for the derived solution of a rack."""
    _require_rack(S)
    LbLa_n = map_power(compose(S.L(b), S.L(a)), n)
    return (
        LbLa_n[map_power(S.L(a), -n)[a]],
        LbLa_n[map_power(S.L(b), -n)[b]],
    )


def power_odd(S: Shelf, a: int, b: int, n: int) -> tuple[int, int]:
    """Closed form of ``r^(2n+1)(a, b)``."""
    _require_rack(S)
    LbLa = compose(S.L(b), S.L(a))
    return (
        map_power(LbLa, n)[map_power(S.L(b), -n)[b]],
        map_power(LbLa, n + 1)[map_power(S.L(a), -(n + 1))[a]],
    )


def _even_component(S: Shelf, a: int, b: int, n: int) -> int:
    """``(L_b L_a)^n L_b^-n (b)``."""
    return map_power(compose(S.L(b), S.L(a)), n)[map_power(S.L(b), -n)[b]]


def _least_n(S: Shelf, target_is_a: bool, bound: int) -> Optional[int]:
    pairs = list(itertools.product(range(S.n), repeat=2))
    for n in range(1, bound + 1):
        if all(_even_component(S, a, b, n) == (a if target_is_a else b) for a, b in pairs):
            return n
    return None


def rack_M(S: Shelf, bound: Optional[int] = None) -> Optional[int]:
    """Least ``n >= 1`` with ``(L_bL_a)^n L_b^-n (b) = a`` for all ``a, b``.

    ``None`` means no such ``n`` up to ``bound``.
    """
    _require_rack(S)
    if S.n <= 1:
        raise ValueError("M is only defined on carriers with more than one element")
    return _least_n(S, True, default_bound() if bound is None else bound)


def rack_N(S: Shelf, bound: Optional[int] = None) -> Optional[int]:
    """Least ``n >= 1`` with ``(L_bL_a)^n L_b^-n (b) = b`` for all ``a, b``."""
    _require_rack(S)
    return _least_n(S, False, default_bound() if bound is None else bound)


@dataclass(frozen=True)
class OrderReport:
    M: Optional[int]
    N: Optional[int]
    case: str
    order: Optional[int]
    iterated: Optional[int]

    @property
    def agrees(self) -> bool:
        return self.order == self.iterated


def derived_solution_map(S: Shelf) -> Map:
    """``r(a,b) = (b, b ▷ a)`` as a self-map of pair indices ``a*n + b``."""
    n = S.n
    return tuple(b * n + S(b, a) for a in range(n) for b in range(n))


def order_report(S: Shelf, bound: Optional[int] = None) -> OrderReport:
    """Order of the derived solution via ``M``/``N``, cross-checked by iteration."""
    _require_rack(S)
    if S.n <= 1:
        raise ValueError("order formula needs more than one element")
    bound = default_bound() if bound is None else bound
    M = rack_M(S, bound) if S.is_quandle else None
    N = rack_N(S, bound)
    ensure(not (M is not None and M == N), "M and N coincide")
    if not S.is_quandle:
        case, order = "non-quandle: 2N", (2 * N if N is not None else None)
    elif M is not None and (N is None or M < N):
        case, order = "quandle, M < N: 2M+1", 2 * M + 1
    elif N is not None:
        case, order = "quandle, N < M: 2N", 2 * N
    else:
        case, order = "infinite within bound", None
    iterated = map_order(derived_solution_map(S), 2 * bound + 1)
    if order is not None:
        ensure(iterated == order, f"order formula gives {order}, iteration gives {iterated}")
    return OrderReport(M, N, case, order, iterated)


def derived_order(S: Shelf, bound: Optional[int] = None) -> Optional[int]:
    return order_report(S, bound).order


def conj_order_formula(G: GroupTable) -> int:
    if G.n <= 1:
        raise ValueError("group must be non-trivial")
    return 2 * quotient_exponent(G)


def core_order_formula(G: GroupTable) -> int:
    if G.n <= 1:
        raise ValueError("group must be non-trivial")
    return exponent(G)


def enumerate_racks(n: int) -> Iterator[Shelf]:
    """All racks on ``{0..n-1}`` (labelled), by backtracking over rows.

    Each row ``L_a`` is a permutation; self-distributivity is checked on
    every triple whose rows are already fixed.
    """
    perms = list(itertools.permutations(range(n)))
    rows: list[tuple[int, ...]] = []

    def ok(k: int) -> bool:
        # triples among rows 0..k with at least one index equal to k
        for a in range(k + 1):
            for b in range(k + 1):
                if k not in (a, b):
                    continue
                La, Lb = rows[a], rows[b]
                ab = La[b]
                if ab > k:
                    continue
                Lab = rows[ab]
                if any(La[Lb[c]] != Lab[La[c]] for c in range(n)):
                    return False
        # rows already fixed whose product lands on k
        for a in range(k):
            for b in range(k):
                if rows[a][b] == k:
                    La, Lb, Lk = rows[a], rows[b], rows[k]
                    if any(La[Lb[c]] != Lk[La[c]] for c in range(n)):
                        return False
        return True

    def search(k: int) -> Iterator[Shelf]:
        if k == n:
            yield make_shelf(BinOpTable(tuple(rows)))
            return
        for p in perms:
            rows.append(p)
            if ok(k):
                yield from search(k + 1)
            rows.pop()

    yield from search(0)


def enumerate_shelves(n: int) -> Iterator[Shelf]:
    """All shelves on ``{0..n-1}`` by exhaustive filtering (small ``n`` only)."""
    if n > 3:
        raise ValueError("exhaustive shelf enumeration is capped at n = 3")
    for flat in itertools.product(range(n), repeat=n * n):
        tri = BinOpTable(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
        if self_distributivity_failure(tri) is None:
            yield make_shelf(tri)


def automorphisms(S: Shelf) -> list[Map]:
    n = S.n
    return [
        p for p in itertools.permutations(range(n))
        if all(p[S(a, b)] == S(p[a], p[b]) for a in range(n) for b in range(n))
    ]
