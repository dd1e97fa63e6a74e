"""Generalized digroups: two associative operations ``vdash`` and ``dashv``
with a non-empty halo of bar-units and unique unilateral inverses.

Throughout, ``a⁻¹ ⊢ x`` and ``x ⊣ a⁻¹`` are evaluated with ``I_e(a)`` for the
smallest bar-unit ``e``; :func:`check_digroup_identities` is what guarantees
that any other choice of side or bar-unit gives the same value.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .tables import (
    AxiomError,
    BinOpTable,
    Failure,
    GroupTable,
    Map,
    associativity_failure,
    cycle_type,
    ensure,
    find_isomorphism,
    idempotents,
    is_left_group,
    is_permutation,
    is_right_group,
    triples,
)


def disemigroup_failure(vdash: BinOpTable, dashv: BinOpTable) -> Optional[Failure]:
    """First disemigroup axiom that fails, checked in a fixed order."""
    if vdash.n != dashv.n:
        raise ValueError("operations live on different carriers")
    for name, op in (("vdash associativity", vdash), ("dashv associativity", dashv)):
        failure = associativity_failure(op)
        if failure is not None:
            return Failure(name, failure.witness, failure.detail)
    L, R = vdash.table, dashv.table
    for a, b, c in triples(vdash.n):
        if L[a][R[b][c]] != R[L[a][b]][c]:
            return Failure("inner associativity", (a, b, c))
        if R[a][L[b][c]] != R[a][R[b][c]]:
            return Failure("right bar-side irrelevance", (a, b, c))
        if L[L[a][b]][c] != L[R[a][b]][c]:
            return Failure("left bar-side irrelevance", (a, b, c))
    return None


def verify_disemigroup(vdash: BinOpTable, dashv: BinOpTable) -> bool:
    return disemigroup_failure(vdash, dashv) is None


def halo_of(vdash: BinOpTable, dashv: BinOpTable) -> tuple[int, ...]:
    n = vdash.n
    return tuple(e for e in range(n) if all(vdash(e, a) == a == dashv(a, e) for a in range(n)))


def g_digroup_failure(vdash: BinOpTable, dashv: BinOpTable) -> Optional[Failure]:
    failure = disemigroup_failure(vdash, dashv)
    if failure is not None:
        return failure
    halo = halo_of(vdash, dashv)
    if not halo:
        return Failure("bar-unit", (), "halo is empty")
    n = vdash.n
    for e in halo:
        for a in range(n):
            xs = [x for x in range(n) if dashv(x, a) == e]
            if len(xs) != 1:
                return Failure("unique I-inverse", (e, a), f"{len(xs)} solutions of x ⊣ a = e")
            ys = [y for y in range(n) if vdash(a, y) == e]
            if len(ys) != 1:
                return Failure("unique J-inverse", (e, a), f"{len(ys)} solutions of a ⊢ y = e")
    return None


@dataclass(frozen=True)
class GDigroup:
    vdash: BinOpTable
    dashv: BinOpTable
    halo: tuple[int, ...] = field(compare=False)
    inv_I: dict = field(compare=False, repr=False)  # bar-unit -> tuple of I_e(a)
    inv_J: dict = field(compare=False, repr=False)

    @classmethod
    def verify(cls, vdash: BinOpTable, dashv: BinOpTable) -> "GDigroup":
        failure = g_digroup_failure(vdash, dashv)
        if failure is not None:
            raise AxiomError(failure)
        D = cls.unchecked(vdash, dashv)
        failure = digroup_identities_failure(D)
        ensure(failure is None, f"g-digroup identities: {failure}")
        return D

    @classmethod
    def unchecked(cls, vdash: BinOpTable, dashv: BinOpTable) -> "GDigroup":
        """Build without verification; inverses default to the first solution."""
        n = vdash.n
        halo = halo_of(vdash, dashv)
        inv_I, inv_J = {}, {}
        for e in halo:
            inv_I[e] = tuple(next((x for x in range(n) if dashv(x, a) == e), -1) for a in range(n))
            inv_J[e] = tuple(next((y for y in range(n) if vdash(a, y) == e), -1) for a in range(n))
        return cls(vdash, dashv, halo, inv_I, inv_J)

    @classmethod
    def from_group(cls, G: GroupTable) -> "GDigroup":
        return cls.verify(G.op, G.op)

    @property
    def n(self) -> int:
        return self.vdash.n

    @property
    def unit(self) -> int:
        """The bar-unit used for the ``a⁻¹`` convention."""
        return self.halo[0]

    def l(self, *xs: int) -> int:
        """Left-nested ``x0 ⊢ x1 ⊢ ...`` (associative)."""
        t = self.vdash.table
        result = xs[0]
        for x in xs[1:]:
            result = t[result][x]
        return result

    def r(self, *xs: int) -> int:
        t = self.dashv.table
        result = xs[0]
        for x in xs[1:]:
            result = t[result][x]
        return result

    def inv(self, a: int) -> int:
        return self.inv_I[self.unit][a]

    def conj(self, a: int, b: int) -> int:
        """``a⁻¹ ⊢ b ⊣ a``."""
        return self.dashv(self.vdash(self.inv(a), b), a)

    def to_json(self) -> dict:
        return {"n": self.n, "vdash": self.vdash.to_json(), "dashv": self.dashv.to_json()}


def halo(D: GDigroup) -> frozenset[int]:
    return frozenset(D.halo)


def verify_g_digroup(D: GDigroup) -> bool:
    return g_digroup_failure(D.vdash, D.dashv) is None


def inverse_I(D: GDigroup, e: int, a: int) -> int:
    if e not in D.inv_I:
        raise ValueError(f"{e} is not a bar-unit")
    return D.inv_I[e][a]


def inverse_J(D: GDigroup, e: int, a: int) -> int:
    if e not in D.inv_J:
        raise ValueError(f"{e} is not a bar-unit")
    return D.inv_J[e][a]


def digroup_identities_failure(D: GDigroup) -> Optional[Failure]:
    """Involution, side-irrelevance and anti-multiplicativity of the inverses."""
    n, L, R = D.n, D.vdash.table, D.dashv.table
    for e in D.halo:
        I, J = D.inv_I[e], D.inv_J[e]
        for a in range(n):
            if not (I[I[a]] == R[e][a] == I[J[a]]):
                return Failure("I-involution", (e, a))
            if not (J[J[a]] == L[a][e] == J[I[a]]):
                return Failure("J-involution", (e, a))
            for b in range(n):
                if not (I[L[a][b]] == R[I[b]][I[a]] == I[R[a][b]]):
                    return Failure("I anti-multiplicative", (e, a, b))
                if not (J[L[a][b]] == L[J[b]][J[a]] == J[R[a][b]]):
                    return Failure("J anti-multiplicative", (e, a, b))
        for xi in D.halo:
            Jx = D.inv_J[xi]
            for a in range(n):
                for b in range(n):
                    if L[I[a]][b] != L[Jx[a]][b]:
                        return Failure("inverse side-irrelevance (vdash)", (e, xi, a, b))
                    if R[a][I[b]] != R[a][Jx[b]]:
                        return Failure("inverse side-irrelevance (dashv)", (e, xi, a, b))
    return None


def check_digroup_identities(D: GDigroup) -> bool:
    return digroup_identities_failure(D) is None


def semigroup_sides_ok(D: GDigroup) -> bool:
    """(D,⊢) a right group, (D,⊣) a left group, bar-units the only idempotents."""
    return (
        is_right_group(D.vdash)
        and is_left_group(D.dashv)
        and idempotents(D.vdash) == frozenset(D.halo) == idempotents(D.dashv)
    )


def from_group_action(G: GroupTable, e_size: int, psi: Sequence[Sequence[int]]) -> GDigroup:
    """Digroup on ``G x E`` with ``(g,e)⊢(h,f) = (gh,f)`` and
    ``(g,e)⊣(h,f) = (gh, psi_h(e))``.  Pair ``(g, e)`` has index ``g*|E| + e``.

    ``psi`` must be a right action: ``psi_{gh} = psi_h o psi_g``.
    """
    psi = [tuple(p) for p in psi]
    if len(psi) != G.n or any(len(p) != e_size or not is_permutation(p) for p in psi):
        raise ValueError("psi must assign a permutation of E to every group element")
    for g in range(G.n):
        for h in range(G.n):
            gh = G.mul(g, h)
            if any(psi[gh][e] != psi[h][psi[g][e]] for e in range(e_size)):
                raise AxiomError(Failure("right action", (g, h)))
    m = e_size
    n = G.n * m
    vdash = BinOpTable.from_function(n, lambda a, b: G.mul(a // m, b // m) * m + b % m)
    dashv = BinOpTable.from_function(n, lambda a, b: G.mul(a // m, b // m) * m + psi[b // m][a % m])
    return GDigroup.verify(vdash, dashv)


# -- decomposition -------------------------------------------------------------

@dataclass(frozen=True)
class BarDecomposition:
    base_unit: int
    g: Map  # left groupal component, in D ⊢ ξ
    e: Map  # left idempotent component
    f: Map  # right idempotent component
    h: Map  # right groupal component, in ξ ⊣ D

    @property
    def G(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.g)))

    @property
    def H(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.h)))


def _group_inverse_in(D: GDigroup, op: BinOpTable, subgroup: Sequence[int], xi: int, a: int) -> int:
    xs = [x for x in subgroup if op(a, x) == xi and op(x, a) == xi]
    ensure(len(xs) == 1, f"{a} has {len(xs)} inverses in its groupal component")
    return xs[0]


def decompose(D: GDigroup, xi: Optional[int] = None) -> BarDecomposition:
    """Split every ``a`` as ``g_a ⊢ e_a = a = f_a ⊣ h_a`` relative to ``xi``."""
    if xi is None:
        xi = D.unit
    if xi not in D.halo:
        raise ValueError(f"{xi} is not a bar-unit")
    n = D.n
    G = sorted({D.vdash(a, xi) for a in range(n)})
    H = sorted({D.dashv(xi, a) for a in range(n)})
    g, e, f, h = [], [], [], []
    for a in range(n):
        lefts = [(x, u) for x in G for u in D.halo if D.vdash(x, u) == a]
        rights = [(u, y) for u in D.halo for y in H if D.dashv(u, y) == a]
        ensure(len(lefts) == 1, f"left decomposition of {a} is not unique: {lefts}")
        ensure(len(rights) == 1, f"right decomposition of {a} is not unique: {rights}")
        g.append(lefts[0][0])
        e.append(lefts[0][1])
        f.append(rights[0][0])
        h.append(rights[0][1])
    dec = BarDecomposition(xi, tuple(g), tuple(e), tuple(f), tuple(h))
    for a in range(n):
        ga, ea, fa, ha = dec.g[a], dec.e[a], dec.f[a], dec.h[a]
        ensure(ga == D.vdash(ha, xi), f"g_a = h_a ⊢ ξ fails at {a}")
        ensure(ha == D.dashv(xi, ga), f"h_a = ξ ⊣ g_a fails at {a}")
        ensure(ea == D.r(D.l(D.inv(ha), fa), ha), f"e_a = h_a⁻¹ ⊢ f_a ⊣ h_a fails at {a}")
        ensure(fa == D.r(D.l(ga, ea), D.inv(ga)), f"f_a = g_a ⊢ e_a ⊣ g_a⁻¹ fails at {a}")
    return dec


def groupal_inverse(D: GDigroup, dec: BarDecomposition, a: int) -> int:
    """Inverse of ``a`` inside the group ``(D ⊢ ξ, ⊢)``."""
    return _group_inverse_in(D, D.vdash, dec.G, dec.base_unit, a)


def anti_isomorphism(D: GDigroup, xi: Optional[int] = None) -> Map:
    """``a -> g_a⁻¹ ⊢ f_a``, checked to be an anti-isomorphism ``(D,⊢) -> (D,⊣)``."""
    dec = decompose(D, xi)
    psi = tuple(D.vdash(D.inv(dec.g[a]), dec.f[a]) for a in range(D.n))
    ensure(is_permutation(psi), "anti-isomorphism is not bijective")
    for a in range(D.n):
        for b in range(D.n):
            ensure(psi[D.vdash(a, b)] == D.dashv(psi[b], psi[a]), f"anti-homomorphism fails at {(a, b)}")
    return psi


def is_abelian_digroup(D: GDigroup) -> bool:
    return all(D.vdash(a, b) == D.dashv(b, a) for a in range(D.n) for b in range(D.n))


def element_invariants(D: GDigroup) -> list[tuple]:
    halo_set = set(D.halo)
    return [
        (a in halo_set, cycle_type(D.vdash.row(a)), cycle_type(D.dashv.column(a)), D.vdash(a, a) == a)
        for a in range(D.n)
    ]


def digroup_isomorphism(D1: GDigroup, D2: GDigroup) -> Optional[Map]:
    """Isomorphism ``D1 -> D2`` or ``None``; pruned by per-element invariants."""
    if D1.n != D2.n or len(D1.halo) != len(D2.halo):
        return None
    f = find_isomorphism(
        (D1.vdash, D1.dashv), (D2.vdash, D2.dashv), element_invariants(D1), element_invariants(D2)
    )
    if f is None:
        return None
    ensure(set(f[e] for e in D1.halo) == set(D2.halo), "isomorphism does not preserve bar-units")
    for e in D1.halo:
        for a in range(D1.n):
            ensure(f[D1.inv_I[e][a]] == D2.inv_I[f[e]][f[a]], "isomorphism does not preserve I-inverses")
            ensure(f[D1.inv_J[e][a]] == D2.inv_J[f[e]][f[a]], "isomorphism does not preserve J-inverses")
    return f


def relabel(D: GDigroup, perm: Sequence[int]) -> GDigroup:
    return GDigroup.verify(D.vdash.relabel(perm), D.dashv.relabel(perm))


def random_relabel(D: GDigroup, rng: random.Random) -> tuple[GDigroup, Map]:
    perm = list(range(D.n))
    rng.shuffle(perm)
    return relabel(D, perm), tuple(perm)
