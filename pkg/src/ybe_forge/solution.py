"""Set-theoretic solutions ``r(a,b) = (λ_a(b), ρ_b(a))`` on a finite carrier."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .selfdist import Shelf, automorphisms, default_bound, enumerate_shelves, make_shelf
from .tables import (
    AxiomError,
    BinOpTable,
    Failure,
    Map,
    Table,
    compose,
    cycle_type,
    ensure,
    find_isomorphism,
    inverse,
    is_permutation,
    map_order,
    triples,
)


@dataclass(frozen=True)
class SolutionTable:
    """``lam[a][b] = λ_a(b)`` and ``rho[b][a] = ρ_b(a)``."""

    lam: Table
    rho: Table

    def __post_init__(self) -> None:
        n = len(self.lam)
        lam = tuple(tuple(int(x) for x in row) for row in self.lam)
        rho = tuple(tuple(int(x) for x in row) for row in self.rho)
        if n < 1 or len(rho) != n or any(len(row) != n for row in (*lam, *rho)):
            raise ValueError("lambda and rho must be n x n")
        if any(not 0 <= x < n for row in (*lam, *rho) for x in row):
            raise ValueError("entry out of range")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], tuple[int, int]]) -> "SolutionTable":
        values = {(a, b): fn(a, b) for a in range(n) for b in range(n)}
        lam = tuple(tuple(values[a, b][0] for b in range(n)) for a in range(n))
        rho = tuple(tuple(values[a, b][1] for a in range(n)) for b in range(n))
        return cls(lam, rho)

    @property
    def n(self) -> int:
        return len(self.lam)

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return self.lam[a][b], self.rho[b][a]

    def as_map(self) -> Map:
        """``r`` as a self-map of pair indices ``a*n + b``."""
        n = self.n
        return tuple(self.lam[a][b] * n + self.rho[b][a] for a in range(n) for b in range(n))

    def relabel(self, perm: Sequence[int]) -> "SolutionTable":
        inv = inverse(perm)
        return SolutionTable.from_function(
            self.n, lambda a, b: tuple(perm[x] for x in self(inv[a], inv[b]))
        )

    def to_json(self) -> dict:
        return {"n": self.n, "lambda": [list(r) for r in self.lam], "rho": [list(r) for r in self.rho]}


def flip(n: int) -> SolutionTable:
    return SolutionTable.from_function(n, lambda a, b: (b, a))


def mirror(r: SolutionTable) -> SolutionTable:
    """``τ r τ`` with ``τ`` the flip; swaps the roles of ``λ`` and ``ρ``."""
    return SolutionTable.from_function(r.n, lambda a, b: r(b, a)[::-1])


def derived_solution(S: Shelf) -> SolutionTable:
    """``r(a,b) = (b, b ▷ a)``."""
    r = SolutionTable.from_function(S.n, lambda a, b: (b, S(b, a)))
    ensure(is_bijective(r) == S.is_rack and all(nondegeneracy(r)) == S.is_rack,
           "derived solution bijective and non-degenerate exactly for racks")
    return r


# -- Yang-Baxter equation ------------------------------------------------------

def _braid_failure(r: SolutionTable) -> Optional[tuple[int, int, int]]:
    for a, b, c in triples(r.n):
        x, y = r(a, b)
        y, z = r(y, c)
        x, y = r(x, y)
        u, v = r(b, c)
        p, u = r(a, u)
        u, v = r(u, v)
        if (x, y, z) != (p, u, v):
            return a, b, c
    return None


def _componentwise_failure(r: SolutionTable) -> Optional[Failure]:
    lam, rho = r.lam, r.rho
    for a, b, c in triples(r.n):
        la_b, rb_a = lam[a][b], rho[b][a]
        lb_c, rc_b = lam[b][c], rho[c][b]
        if lam[a][lam[b][c]] != lam[la_b][lam[rb_a][c]]:
            return Failure("Y1", (a, b, c))
        if lam[rho[lb_c][a]][rc_b] != rho[lam[rb_a][c]][la_b]:
            return Failure("Y2", (a, b, c))
        if rho[c][rb_a] != rho[rc_b][rho[lb_c][a]]:
            return Failure("Y3", (a, b, c))
    return None


def ybe_failure(r: SolutionTable) -> Optional[Failure]:
    """First failing triple, named by the component identity it breaks.

    The braid identity and the three component identities are computed
    independently and must agree.
    """
    braid = _braid_failure(r)
    parts = _componentwise_failure(r)
    ensure((braid is None) == (parts is None), "braid check and Y1-Y3 disagree")
    return parts


def verify_ybe(r: SolutionTable) -> bool:
    return ybe_failure(r) is None


def nondegeneracy(r: SolutionTable) -> tuple[bool, bool]:
    return all(is_permutation(row) for row in r.lam), all(is_permutation(row) for row in r.rho)


def is_bijective(r: SolutionTable) -> bool:
    return is_permutation(r.as_map())


def lam_inverse(r: SolutionTable, a: int) -> Map:
    if not is_permutation(r.lam[a]):
        raise ValueError("solution is left degenerate")
    return inverse(r.lam[a])


def derived_shelf(r: SolutionTable) -> Shelf:
    """``a ▷_r b = λ_a ρ_{λ_b⁻¹(a)} (b)``; every ``λ_a`` is checked to be an automorphism."""
    if not nondegeneracy(r)[0]:
        raise ValueError("derived shelf needs a left non-degenerate solution")
    n = r.n
    lam_inv = [inverse(row) for row in r.lam]
    S = make_shelf(BinOpTable.from_function(n, lambda a, b: r.lam[a][r.rho[lam_inv[b][a]][b]]))
    for a in range(n):
        La = r.lam[a]
        for b in range(n):
            for c in range(n):
                ensure(La[S(b, c)] == S(La[b], La[c]), f"λ_{a} is not a shelf automorphism at {(b, c)}")
    return S


def square_map(r: SolutionTable) -> Map:
    """``q(a) = λ_a⁻¹(a)``."""
    if not nondegeneracy(r)[0]:
        raise ValueError("square map needs a left non-degenerate solution")
    return tuple(inverse(r.lam[a])[a] for a in range(r.n))


def dual_square_map(r: SolutionTable) -> Map:
    """``q̄(a) = ρ_a⁻¹(a)``."""
    if not nondegeneracy(r)[1]:
        raise ValueError("dual square map needs a right non-degenerate solution")
    return tuple(inverse(r.rho[a])[a] for a in range(r.n))


def right_nd_via_square(r: SolutionTable) -> bool:
    if not is_bijective(r) or not nondegeneracy(r)[0]:
        raise ValueError("criterion needs a bijective left non-degenerate solution")
    verdict = is_permutation(square_map(r))
    ensure(verdict == nondegeneracy(r)[1], "square-map criterion disagrees with direct right non-degeneracy")
    return verdict


def left_nd_via_dual_square(r: SolutionTable) -> bool:
    if not is_bijective(r) or not nondegeneracy(r)[1]:
        raise ValueError("criterion needs a bijective right non-degenerate solution")
    verdict = is_permutation(dual_square_map(r))
    ensure(verdict == nondegeneracy(r)[0], "dual square-map criterion disagrees with direct left non-degeneracy")
    return verdict


# -- twists --------------------------------------------------------------------

@dataclass(frozen=True)
class Twist:
    shelf: Shelf
    phi: tuple[Map, ...]

    @property
    def n(self) -> int:
        return self.shelf.n

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.phi]


def _twist_identity_failure(S: Shelf, phi: Sequence[Map]) -> Optional[Failure]:
    n = S.n
    phi_inv = [inverse(p) for p in phi]
    for a in range(n):
        for b in range(n):
            x = phi[a][b]
            lhs = compose(phi[a], phi[b])
            rhs = compose(phi[x], phi[phi_inv[x][S(x, a)]])
            if lhs != rhs:
                return Failure("twist identity", (a, b))
    return None


def _inverted_twist_failure(S: Shelf, phi: Sequence[Map]) -> Optional[Failure]:
    n = S.n
    phi_inv = [inverse(p) for p in phi]
    for a in range(n):
        for b in range(n):
            lhs = compose(phi_inv[phi_inv[a][b]], phi_inv[a])
            rhs = compose(phi_inv[phi_inv[b][S(b, a)]], phi_inv[b])
            if lhs != rhs:
                return Failure("inverted twist identity", (a, b))
    return None


def twist_failure(T: Twist) -> Optional[Failure]:
    S, phi = T.shelf, T.phi
    n = S.n
    if len(phi) != n:
        raise ValueError("twist must assign a map to every element")
    for a, p in enumerate(phi):
        if not is_permutation(p):
            return Failure("bijectivity", (a,), "φ_a is not a permutation")
        for b in range(n):
            for c in range(n):
                if p[S(b, c)] != S(p[b], p[c]):
                    return Failure("automorphism", (a, b, c))
    direct = _twist_identity_failure(S, phi)
    inverted = _inverted_twist_failure(S, phi)
    ensure((direct is None) == (inverted is None), "twist identity and its inverted form disagree")
    return direct


def verify_twist(T: Twist) -> bool:
    return twist_failure(T) is None


def solution_from_twist(T: Twist, check: bool = True) -> SolutionTable:
    """``r(a,b) = (φ_a(b), φ⁻¹_{φ_a(b)}(φ_a(b) ▷ a))``."""
    S, phi = T.shelf, T.phi
    phi_inv = [inverse(p) for p in phi]

    def r(a: int, b: int) -> tuple[int, int]:
        x = phi[a][b]
        return x, phi_inv[x][S(x, a)]

    sol = SolutionTable.from_function(S.n, r)
    if check:
        failure = twist_failure(T)
        if failure is not None:
            raise AxiomError(failure)
        ensure(verify_ybe(sol), "twist solution fails the Yang-Baxter equation")
        ensure(derived_shelf(sol).tri == S.tri, "derived shelf of a twist solution differs from the twisted shelf")
    return sol


def twist_of(r: SolutionTable) -> Twist:
    """Recover ``(▷_r, λ)`` from a left non-degenerate solution."""
    return Twist(derived_shelf(r), r.lam)


def enumerate_twists(S: Shelf) -> Iterator[Twist]:
    auts = automorphisms(S)
    for phi in itertools.product(auts, repeat=S.n):
        T = Twist(S, tuple(phi))
        if _twist_identity_failure(S, T.phi) is None:
            yield T


def enumerate_left_nd_solutions(n: int) -> Iterator[SolutionTable]:
    """Every left non-degenerate solution on ``{0..n-1}``, as shelf + twist."""
    for S in enumerate_shelves(n):
        for T in enumerate_twists(S):
            yield solution_from_twist(T, check=False)


# -- comparisons ---------------------------------------------------------------

def _lam_op(r: SolutionTable) -> BinOpTable:
    return BinOpTable(r.lam)


def _rho_op(r: SolutionTable) -> BinOpTable:
    """``(a, b) -> ρ_b(a)``."""
    return BinOpTable(tuple(zip(*r.rho)))


def equivalence_search(r: SolutionTable, s: SolutionTable) -> Optional[Map]:
    """A bijection ``f`` with ``(f×f) r = s (f×f)``, or ``None``.

    For left non-degenerate inputs the derived shelf operation is added as a
    further operation that ``f`` must preserve, which prunes the search.
    """
    if r.n != s.n:
        return None
    ops_r = [_lam_op(r), _rho_op(r)]
    ops_s = [_lam_op(s), _rho_op(s)]
    if nondegeneracy(r)[0] and nondegeneracy(s)[0]:
        ops_r.append(derived_shelf(r).tri)
        ops_s.append(derived_shelf(s).tri)
    colour = lambda t: [(cycle_type(t.lam[a]), cycle_type(t.rho[a]), t(a, a)[0] == a) for a in range(t.n)]
    f = find_isomorphism(ops_r, ops_s, colour(r), colour(s))
    if f is not None:
        for a in range(r.n):
            for b in range(r.n):
                x, y = r(a, b)
                ensure(s(f[a], f[b]) == (f[x], f[y]), "equivalence search returned a non-equivalence")
    return f


@dataclass(frozen=True)
class DIsoInvariants:
    order: Optional[int]
    cycle_type: Optional[tuple[int, ...]]


def d_iso_invariants(r: SolutionTable, bound: Optional[int] = None) -> DIsoInvariants:
    """Conjugacy invariants of ``r`` inside ``Sym(D×D)``."""
    bound = default_bound() if bound is None else bound
    m = r.as_map()
    if not is_permutation(m):
        return DIsoInvariants(None, None)
    ct = cycle_type(m)
    order = math.lcm(*ct)
    return DIsoInvariants(order if order <= bound else None, ct)


def d_iso_refute(r: SolutionTable, s: SolutionTable) -> bool:
    """True when ``r`` and ``s`` are certainly not D-isomorphic."""
    if r.n != s.n:
        return True
    if is_bijective(r) != is_bijective(s):
        return True
    return d_iso_invariants(r, bound=10**9) != d_iso_invariants(s, bound=10**9)


def solution_order(r: SolutionTable, bound: Optional[int] = None) -> Optional[int]:
    return map_order(r.as_map(), default_bound() if bound is None else bound)


def lyz_values(r: SolutionTable, circ: BinOpTable, a: int, b: int) -> tuple[int, int]:
    """``(λ_a(b) ∘ ρ_b(a), a ∘ b)``."""
    x, y = r(a, b)
    return circ(x, y), circ(a, b)


def lyz_failure(r: SolutionTable, circ: BinOpTable) -> Optional[Failure]:
    for a in range(r.n):
        for b in range(r.n):
            lhs, rhs = lyz_values(r, circ, a, b)
            if lhs != rhs:
                return Failure("Lu-Yan-Zhu condition", (a, b), f"λ_a(b)∘ρ_b(a) = {lhs} but a∘b = {rhs}")
    return None


def lyz_condition(r: SolutionTable, circ: BinOpTable) -> bool:
    return lyz_failure(r, circ) is None


def random_relabel(r: SolutionTable, rng: random.Random) -> tuple[SolutionTable, Map]:
    perm = list(range(r.n))
    rng.shuffle(perm)
    return r.relabel(perm), tuple(perm)
