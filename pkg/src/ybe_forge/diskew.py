"""Di-skew braces: a g-digroup ``(D,⊢,⊣)`` with a right-group operation ``∘``."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .digroup import (
    BarDecomposition,
    GDigroup,
    decompose,
    g_digroup_failure,
    groupal_inverse,
    inverse_I,
    inverse_J,
    is_abelian_digroup,
)
from .selfdist import conjugation_rack
from .solution import (
    SolutionTable,
    Twist,
    derived_shelf,
    is_bijective,
    nondegeneracy,
    solution_from_twist,
    square_map,
    twist_failure,
    verify_ybe,
)
from .tables import (
    AxiomError,
    BinOpTable,
    Failure,
    Map,
    compose,
    ensure,
    idempotents,
    inverse,
    is_permutation,
    is_right_group,
    triples,
)


@dataclass(frozen=True)
class DiSkewBrace:
    digroup: GDigroup
    circ: BinOpTable
    zero: int

    @property
    def n(self) -> int:
        return self.digroup.n

    @property
    def E(self) -> tuple[int, ...]:
        return self.digroup.halo

    def inv(self, a: int) -> int:
        """``a⁻¹`` taken as ``I_0(a)``."""
        return inverse_I(self.digroup, self.zero, a)

    def to_json(self) -> dict:
        return {"digroup": self.digroup.to_json(), "circ": self.circ.to_json(), "zero": self.zero}


@dataclass(frozen=True)
class MultDecomposition:
    m: Map  # groupal component in M = D ∘ 0
    u: Map  # idempotent component
    M: tuple[int, ...]


def _check_inverse_independence(D: GDigroup, zero: int) -> None:
    """``a⁻¹ ⊢ x`` and ``x ⊣ a⁻¹`` do not depend on the bar-unit or on I versus J."""
    n = D.n
    for e in D.halo:
        for a in range(n):
            i0, ie, je = inverse_I(D, zero, a), inverse_I(D, e, a), inverse_J(D, e, a)
            for x in range(n):
                ensure(D.vdash(i0, x) == D.vdash(ie, x) == D.vdash(je, x), f"a⁻¹ ⊢ x depends on the inverse chosen at {(e, a, x)}")
                ensure(D.dashv(x, i0) == D.dashv(x, ie) == D.dashv(x, je), f"x ⊣ a⁻¹ depends on the inverse chosen at {(e, a, x)}")


def diskew_failure(D: GDigroup, circ: BinOpTable, zero: Optional[int] = None) -> Optional[Failure]:
    """First violated axiom, or ``None``."""
    failure = g_digroup_failure(D.vdash, D.dashv)
    if failure is not None:
        return failure
    if circ.n != D.n:
        raise ValueError("∘ and the g-digroup live on carriers of different size")
    try:
        if not is_right_group(circ):
            bad = next(a for a in range(circ.n) if not is_permutation(circ.row(a)))
            return Failure("right group", (bad,), "left translation by a is not a bijection")
    except AxiomError as exc:
        return Failure("right group", exc.failure.witness, "∘ is not associative")
    zero = D.halo[0] if zero is None else zero
    inv = D.inv_I[zero]
    l, r, o = D.vdash.table, D.dashv.table, circ.table
    for a, b, c in triples(D.n):
        ai = inv[a]
        if o[a][l[b][c]] != l[l[o[a][b]][ai]][o[a][c]]:
            return Failure("D1", (a, b, c), "a∘(b⊢c) ≠ a∘b ⊢ a⁻¹ ⊢ a∘c")
        if o[a][r[b][c]] != r[r[o[a][b]][ai]][o[a][c]]:
            return Failure("D2", (a, b, c), "a∘(b⊣c) ≠ a∘b ⊣ a⁻¹ ⊣ a∘c")
        if o[l[a][b]][c] != o[r[a][b]][c]:
            return Failure("D3", (a, b, c), "(a⊢b)∘c ≠ (a⊣b)∘c")
    return None


def verify_diskew(D: GDigroup, circ: BinOpTable, zero: Optional[int] = None) -> DiSkewBrace:
    zero = D.halo[0] if zero is None else zero
    if zero not in D.halo:
        raise ValueError(f"{zero} is not a bar-unit")
    failure = diskew_failure(D, circ, zero)
    if failure is not None:
        raise AxiomError(failure)
    _check_inverse_independence(D, zero)
    ensure(idempotents(circ) == frozenset(D.halo), "idempotents of ∘ differ from the bar-units")
    B = DiSkewBrace(D, circ, zero)
    lam = lambda_table(B)
    for a in range(B.n):
        for b in range(B.n):
            ensure(lam[D.vdash(a, b)] == lam[D.dashv(a, b)], f"λ_(a⊢b) ≠ λ_(a⊣b) at {(a, b)}")
    return B


def trivial_brace(D: GDigroup) -> DiSkewBrace:
    """``(D, ⊢, ⊣, ⊢)``."""
    return verify_diskew(D, D.vdash)


def almost_trivial_brace(D: GDigroup) -> DiSkewBrace:
    """``(D, ⊢, ⊣, ⊣ᵒᵖ)``."""
    return verify_diskew(D, D.dashv.opposite())


def is_skew_brace(B: DiSkewBrace) -> bool:
    """One bar-unit and ``⊢ = ⊣``: an ordinary skew brace."""
    return len(B.E) == 1 and B.digroup.vdash == B.digroup.dashv


def is_di_brace(B: DiSkewBrace) -> bool:
    return is_abelian_digroup(B.digroup)


# -- multiplicative structure --------------------------------------------------

def _mult_parts(B: DiSkewBrace) -> MultDecomposition:
    o = B.circ
    m = tuple(o(a, B.zero) for a in range(B.n))
    u = []
    for a in range(B.n):
        us = [e for e in B.E if o(m[a], e) == a]
        ensure(len(us) == 1, f"multiplicative decomposition of {a} is not unique: {us}")
        u.append(us[0])
    return MultDecomposition(m, tuple(u), tuple(sorted(set(m))))


def mult_decompose(B: DiSkewBrace) -> MultDecomposition:
    """``a = m_a ∘ u_a`` with ``m_a = a ∘ 0``; also checks the additive split of λ."""
    dec = _mult_parts(B)
    _check_remark_identities(B)
    return dec


def _m_inverse(B: DiSkewBrace, dec: MultDecomposition, a: int) -> int:
    """Inverse of ``m_a`` in the group ``(M, ∘)``."""
    xs = [x for x in dec.M if B.circ(dec.m[a], x) == B.zero]
    ensure(len(xs) == 1, f"m_{a} has {len(xs)} inverses in M")
    return xs[0]


def left_division(B: DiSkewBrace, a: int, b: int, dec: Optional[MultDecomposition] = None) -> int:
    """The unique ``x`` with ``a ∘ x = b``."""
    xs = [x for x in range(B.n) if B.circ(a, x) == b]
    ensure(len(xs) == 1, f"a ∘ x = b has {len(xs)} solutions for {(a, b)}")
    if dec is None:
        dec = _mult_parts(B)
    ensure(B.circ(_m_inverse(B, dec, a), b) == xs[0], "a⁻∘b differs from m_a⁻∘b")
    return xs[0]


def _left_division_table(B: DiSkewBrace) -> tuple[Map, ...]:
    return tuple(inverse(B.circ.row(a)) for a in range(B.n))


# -- λ -------------------------------------------------------------------------

def lambda_table(B: DiSkewBrace) -> tuple[Map, ...]:
    """``λ_a(b) = a⁻¹ ⊢ a ∘ b``, unchecked."""
    D, o = B.digroup, B.circ
    return tuple(tuple(D.vdash(B.inv(a), o(a, b)) for b in range(B.n)) for a in range(B.n))


@lru_cache(maxsize=512)
def lambda_map(B: DiSkewBrace) -> Twist:
    """λ as a twist of the conjugation rack, with every claimed property checked."""
    D, n = B.digroup, B.n
    lam = lambda_table(B)
    div = _left_division_table(B)
    for a in range(n):
        La = lam[a]
        ensure(is_permutation(La), f"λ_{a} is not bijective")
        ensure(inverse(La) == tuple(div[a][D.vdash(a, b)] for b in range(n)), f"λ_{a}⁻¹ ≠ a⁻∘(a⊢-)")
        for b in range(n):
            for c in range(n):
                ensure(La[D.vdash(b, c)] == D.vdash(La[b], La[c]), f"λ_{a} does not preserve ⊢ at {(b, c)}")
                ensure(La[D.dashv(b, c)] == D.dashv(La[b], La[c]), f"λ_{a} does not preserve ⊣ at {(b, c)}")
            ensure(lam[B.circ(a, b)] == compose(La, lam[b]), f"λ_(a∘b) ≠ λ_a λ_b at {(a, b)}")
    T = Twist(conjugation_rack(D), lam)
    failure = twist_failure(T)
    ensure(failure is None, f"λ is not a twist of the conjugation rack: {failure}")
    return T


@lru_cache(maxsize=512)
def diskew_solution(B: DiSkewBrace) -> SolutionTable:
    """``r(a,b) = (λ_a(b), λ_a(b)⁻ ∘ (a ⊣ λ_a(b)))``."""
    lam = lambda_table(B)
    div = _left_division_table(B)

    def r(a: int, b: int) -> tuple[int, int]:
        x = lam[a][b]
        return x, div[x][B.digroup.dashv(a, x)]

    sol = SolutionTable.from_function(B.n, r)
    T = lambda_map(B)
    ensure(sol == solution_from_twist(T, check=False), "di-skew brace solution differs from the λ-twist solution")
    ensure(verify_ybe(sol), "di-skew brace solution fails the Yang-Baxter equation")
    ensure(is_bijective(sol), "di-skew brace solution is not bijective")
    ensure(nondegeneracy(sol) == (True, True), "di-skew brace solution is degenerate")
    ensure(derived_shelf(sol).tri == T.shelf.tri, "derived shelf is not the conjugation rack")
    return sol


def _check_multiplicative_lemma(B: DiSkewBrace, add: BarDecomposition, mult: MultDecomposition) -> None:
    for a in range(B.n):
        ensure(add.g[mult.m[a]] == add.g[a], f"g_(m_a) ≠ g_a at {a}")
        ensure(mult.m[add.g[a]] == mult.m[a], f"m_(g_a) ≠ m_a at {a}")


@lru_cache(maxsize=512)
def square_inverse(B: DiSkewBrace) -> Map:
    """``𝔭(a) = (g_a⁻¹)⁻ ∘ e_a``, checked as a two-sided inverse of the square map."""
    D = B.digroup
    add = decompose(D, B.zero)
    mult = mult_decompose(B)
    _check_multiplicative_lemma(B, add, mult)
    div = _left_division_table(B)
    p = tuple(div[groupal_inverse(D, add, add.g[a])][add.e[a]] for a in range(B.n))
    q = square_map(diskew_solution(B))
    for a in range(B.n):
        closed = D.vdash(D.inv_I[B.zero][_m_inverse(B, mult, a)], mult.u[a])
        ensure(q[a] == closed, f"𝔮({a}) ≠ (m_a⁻)⁻¹ ⊢ u_a")
        ensure(q[p[a]] == a, f"𝔮𝔭 ≠ id at {a}")
        ensure(p[q[a]] == a, f"𝔭𝔮 ≠ id at {a}")
    return p


def sigma_groupal(B: DiSkewBrace, x: int, y: int, add: Optional[BarDecomposition] = None) -> int:
    """``σ_x(y) = λ_x(y) ⊢ 0`` for ``x, y`` in the groupal part ``G``."""
    add = decompose(B.digroup, B.zero) if add is None else add
    if x not in add.G or y not in add.G:
        raise ValueError("σ is defined on the groupal component only")
    return B.digroup.vdash(lambda_table(B)[x][y], B.zero)


def _check_remark_identities(B: DiSkewBrace) -> None:
    D = B.digroup
    add = decompose(D, B.zero)
    lam = lambda_table(B)
    sigma = lambda x, y: D.vdash(lam[x][y], B.zero)
    for a in range(B.n):
        for b in range(B.n):
            ga, gb = add.g[a], add.g[b]
            ensure(lam[a][b] == D.vdash(sigma(ga, gb), lam[ga][add.e[b]]), f"λ_a(b) ≠ σ_(g_a)(g_b) ⊢ λ_(g_a)(e_b) at {(a, b)}")
    for a in add.G:
        for b in add.G:
            ensure(B.circ(a, b) == D.l(a, sigma(a, b), lam[a][B.zero]), f"a∘b ≠ a ⊢ σ_a(b) ⊢ λ_a(0) at {(a, b)}")
