"""Dynamical extensions, hemi-semidirect products and the decomposition of di-skew brace solutions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .digroup import GDigroup, decompose
from .diskew import DiSkewBrace, diskew_solution, is_skew_brace, lambda_map, lambda_table, verify_diskew
from .selfdist import Shelf, conj_quandle, default_bound, make_shelf, rack_N
from .solution import SolutionTable, Twist, is_bijective, nondegeneracy, solution_from_twist, twist_failure, verify_ybe
from .tables import (
    AxiomError,
    BinOpTable,
    Failure,
    GroupTable,
    Map,
    compose,
    ensure,
    identity_map,
    inverse,
    is_permutation,
    map_power,
    permutation_order,
    quotient_exponent,
    restrict_group,
)

# alpha[a][b][s][t] = α_{a,b}(s, t)
Family = tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]


def _family(n: int, m: int, fn) -> Family:
    return tuple(
        tuple(tuple(tuple(fn(a, b, s, t) for t in range(m)) for s in range(m)) for b in range(n))
        for a in range(n)
    )


@dataclass(frozen=True)
class DynamicalPair:
    twist: Twist
    E: int
    alpha: Family
    beta: Family

    @classmethod
    def from_functions(cls, twist: Twist, E: int, alpha, beta) -> "DynamicalPair":
        return cls(twist, E, _family(twist.n, E, alpha), _family(twist.n, E, beta))

    @property
    def shelf(self) -> Shelf:
        return self.twist.shelf


def _cocycle_failure(S: Shelf, E: int, alpha: Family) -> Optional[Failure]:
    n = S.n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                bc, ab, ac = S(b, c), S(a, b), S(a, c)
                for u in range(E):
                    for s in range(E):
                        for t in range(E):
                            lhs = alpha[a][bc][u][alpha[b][c][s][t]]
                            rhs = alpha[ab][ac][alpha[a][b][u][s]][alpha[a][c][u][t]]
                            if lhs != rhs:
                                return Failure("dynamical cocycle", (a, b, c, u, s, t))
    return None


def dynamical_pair_failure(P: DynamicalPair) -> Optional[Failure]:
    S, lam, E = P.shelf, P.twist.phi, P.E
    alpha, beta = P.alpha, P.beta
    n = S.n
    for a in range(n):
        for b in range(n):
            for s in range(E):
                if not is_permutation(beta[a][b][s]):
                    return Failure("β bijectivity", (a, b, s))
    failure = _cocycle_failure(S, E, alpha)
    if failure is not None:
        return failure
    li = [inverse(p) for p in lam]
    dot = lambda x, y: li[x][y]
    for a in range(n):
        for b in range(n):
            ab = dot(a, b)
            ba = S(b, a)
            bba = dot(b, ba)
            for c in range(n):
                ac, bc = dot(a, c), dot(b, c)
                b_c = S(b, c)
                for u in range(E):
                    for s in range(E):
                        for t in range(E):
                            bu_s, bu_t = beta[a][b][u][s], beta[a][c][u][t]
                            if alpha[ab][ac][bu_s][bu_t] != beta[a][b_c][u][alpha[b][c][s][t]]:
                                return Failure("dynamical pair, mixed identity", (a, b, c, u, s, t))
                            lhs = beta[ab][ac][bu_s][bu_t]
                            rhs = beta[bba][bc][beta[b][ba][s][alpha[b][a][s][u]]][beta[b][c][s][t]]
                            if lhs != rhs:
                                return Failure("dynamical pair, β identity", (a, b, c, u, s, t))
    return None


def verify_dynamical_pair(P: DynamicalPair) -> bool:
    return dynamical_pair_failure(P) is None


def _pair_index(E: int, a: int, s: int) -> int:
    return a * E + s


def dynamical_extension(S: Shelf, E: int, alpha: Family) -> Shelf:
    """``(a,s) ▷_α (b,t) = (a ▷ b, α_{a,b}(s,t))`` on indices ``a*|E| + s``."""
    failure = _cocycle_failure(S, E, alpha)
    if failure is not None:
        raise AxiomError(failure)
    N = S.n * E
    return make_shelf(BinOpTable.from_function(
        N, lambda x, y: _pair_index(E, S(x // E, y // E), alpha[x // E][y // E][x % E][y % E])
    ))


def twist_extension(P: DynamicalPair, check: bool = True) -> Twist:
    """``Λ_{(a,s)}(b,t) = (λ_a(b), β⁻¹_{a,λ_a(b)}(s,t))`` on the dynamical extension.

    With ``check`` the pair is verified first and the result is asserted to be
    a twist whose inverse is ``Γ_{(a,u)}(b,v) = (λ_a⁻¹(b), β_{a,b}(u,v))``.
    Without it the maps are returned as they are, for probing broken pairs.
    """
    if check:
        failure = dynamical_pair_failure(P)
        if failure is not None:
            raise AxiomError(failure)
    S, lam, E = P.shelf, P.twist.phi, P.E
    ext = dynamical_extension(S, E, P.alpha) if check else Shelf(
        BinOpTable.from_function(S.n * E, lambda x, y: _pair_index(E, S(x // E, y // E), P.alpha[x // E][y // E][x % E][y % E])),
        False, False,
    )
    N = S.n * E
    binv = {(a, b, s): inverse(P.beta[a][b][s]) for a in range(S.n) for b in range(S.n) for s in range(E)}
    Lam = tuple(
        tuple(_pair_index(E, lam[x // E][y // E], binv[x // E, lam[x // E][y // E], x % E][y % E]) for y in range(N))
        for x in range(N)
    )
    T = Twist(ext, Lam)
    if check:
        li = [inverse(p) for p in lam]
        for x in range(N):
            a, u = divmod(x, E)
            gamma = tuple(_pair_index(E, li[a][y // E], P.beta[a][y // E][u][y % E]) for y in range(N))
            ensure(compose(Lam[x], gamma) == identity_map(N) == compose(gamma, Lam[x]), f"Γ is not the inverse of Λ at {x}")
        failure = twist_failure(T)
        ensure(failure is None, f"twist extension of a verified dynamical pair is not a twist: {failure}")
    return T


# -- hemi-semidirect products --------------------------------------------------

def shelf_action_failure(S: Shelf, psi: Sequence[Map]) -> Optional[Failure]:
    if len(psi) != S.n:
        raise ValueError("ψ must assign a permutation to every element")
    for a, p in enumerate(psi):
        if not is_permutation(p):
            return Failure("ψ bijectivity", (a,))
    for a in range(S.n):
        for b in range(S.n):
            if compose(psi[S(a, b)], psi[a]) != compose(psi[a], psi[b]):
                return Failure("shelf action", (a, b), "ψ_(a▷b)ψ_a ≠ ψ_aψ_b")
    return None


def is_shelf_action(S: Shelf, psi: Sequence[Map]) -> bool:
    return shelf_action_failure(S, psi) is None


def hemi_shelf(S: Shelf, psi: Sequence[Map]) -> Shelf:
    """``(a,u) ▷_ψ (b,v) = (a ▷ b, ψ_a(v))``."""
    failure = shelf_action_failure(S, psi)
    if failure is not None:
        raise AxiomError(failure)
    E = len(psi[0])
    H = make_shelf(BinOpTable.from_function(
        S.n * E, lambda x, y: _pair_index(E, S(x // E, y // E), psi[x // E][y % E])
    ))
    alpha = _family(S.n, E, lambda a, b, s, t: psi[a][t])
    ensure(dynamical_extension(S, E, alpha).tri == H.tri, "hemi shelf differs from the ψ-induced dynamical extension")
    return H


@dataclass(frozen=True)
class HemiPair:
    twist: Twist
    psi: tuple[Map, ...]
    sigma: tuple[Map, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "psi", tuple(tuple(p) for p in self.psi))
        object.__setattr__(self, "sigma", tuple(tuple(s) for s in self.sigma))

    @property
    def shelf(self) -> Shelf:
        return self.twist.shelf

    @property
    def E(self) -> int:
        return len(self.psi[0])

    def rho(self) -> tuple[Map, ...]:
        """``ρ_b(a) = λ⁻¹_{λ_a(b)}(λ_a(b) ▷ a)``, indexed ``[b][a]``."""
        return solution_from_twist(self.twist, check=False).rho

    def to_json(self) -> dict:
        return {
            "shelf": self.shelf.to_json(),
            "twist": self.twist.to_json(),
            "E": self.E,
            "psi": [list(p) for p in self.psi],
            "sigma": [list(s) for s in self.sigma],
        }


def hemi_pair_failure(H: HemiPair) -> Optional[Failure]:
    S, lam = H.shelf, H.twist.phi
    if len(H.sigma) != S.n or any(len(p) != H.E for p in (*H.psi, *H.sigma)):
        raise ValueError("ψ and σ must be families of maps on one coefficient set, indexed by the shelf")
    failure = shelf_action_failure(S, H.psi)
    if failure is not None:
        return failure
    for a, s in enumerate(H.sigma):
        if not is_permutation(s):
            return Failure("σ bijectivity", (a,))
    rho = H.rho()
    psi, sigma = H.psi, H.sigma
    for a in range(S.n):
        for b in range(S.n):
            lab = lam[a][b]
            if compose(sigma[a], sigma[b]) != compose(sigma[lab], sigma[rho[b][a]]):
                return Failure("hemi pair, σ identity", (a, b), "σ_aσ_b ≠ σ_(λ_a(b))σ_(ρ_b(a))")
            if compose(sigma[a], psi[b]) != compose(psi[lab], sigma[a]):
                return Failure("hemi pair, σψ identity", (a, b), "σ_aψ_b ≠ ψ_(λ_a(b))σ_a")
    return None


def verify_hemi_pair(H: HemiPair) -> bool:
    return hemi_pair_failure(H) is None


def hemi_dynamical_pair(H: HemiPair) -> DynamicalPair:
    """``α_{a,b}(u,v) = ψ_a(v)`` and ``β_{a,b}(u,v) = σ_a⁻¹(v)``.

    ``Λ`` applies ``β⁻¹``, so ``β`` must be built from ``σ⁻¹`` for the twist
    extension to reproduce ``Λ_{(a,u)}(b,v) = (λ_a(b), σ_a(v))``.
    """
    sig_inv = [inverse(s) for s in H.sigma]
    return DynamicalPair.from_functions(
        H.twist, H.E, lambda a, b, s, t: H.psi[a][t], lambda a, b, s, t: sig_inv[a][t]
    )


def hemi_twist(H: HemiPair) -> Twist:
    """``Λ_{(a,u)}(b,v) = (λ_a(b), σ_a(v))`` on the hemi shelf; unchecked."""
    E, lam = H.E, H.twist.phi
    N = H.shelf.n * E
    Lam = tuple(
        tuple(_pair_index(E, lam[x // E][y // E], H.sigma[x // E][y % E]) for y in range(N)) for x in range(N)
    )
    return Twist(hemi_shelf(H.shelf, H.psi), Lam)


@lru_cache(maxsize=512)
def hemi_solution(H: HemiPair) -> SolutionTable:
    """The solution ``r_G ⊣⊢_{ψ,σ} r_E`` on indices ``a*|E| + u``."""
    failure = hemi_pair_failure(H)
    if failure is not None:
        raise AxiomError(failure)
    T = hemi_twist(H)
    ensure(twist_failure(T) is None, "Λ of a verified hemi pair is not a twist")
    P = hemi_dynamical_pair(H)
    ensure(verify_dynamical_pair(P), "hemi pair does not induce a dynamical pair")
    ensure(twist_extension(P).phi == T.phi, "twist extension of the induced dynamical pair differs from Λ")
    r = solution_from_twist(T)
    ensure(verify_ybe(r) and nondegeneracy(r)[0], "hemi solution is not a left non-degenerate solution")
    return r


def derived_hemi_pair(r: SolutionTable) -> HemiPair:
    """``(L, λ)`` for a bijective left non-degenerate ``r``, with coefficients in the carrier."""
    from .solution import twist_of

    if not (is_bijective(r) and nondegeneracy(r)[0]):
        raise ValueError("needs a bijective left non-degenerate solution")
    T = twist_of(r)
    return HemiPair(T, tuple(T.shelf.L(a) for a in range(r.n)), T.phi)


def constant_hemi_pair(T: Twist, f: Map, g: Map) -> HemiPair:
    """``ψ_a = f`` and ``σ_a = g`` for every ``a``."""
    return HemiPair(T, (tuple(f),) * T.n, (tuple(g),) * T.n)


# -- orders --------------------------------------------------------------------

def m_psi(psi: Sequence[Map], bound: Optional[int] = None) -> Optional[int]:
    """Least ``h >= 1`` with ``(ψ_bψ_a)^h ψ_b^-h = id`` for all ``a, b``; ``None`` past ``bound``."""
    bound = default_bound() if bound is None else bound
    E = len(psi[0])
    ident = identity_map(E)
    pairs = [(compose(pb, pa), pb) for pa in psi for pb in psi]
    for h in range(1, bound + 1):
        if all(compose(map_power(ba, h), map_power(pb, -h)) == ident for ba, pb in pairs):
            return h
    return None


@dataclass(frozen=True)
class HemiOrderReport:
    m_shelf: Optional[int]
    m_psi: Optional[int]
    order: Optional[int]
    iterated: Optional[int]

    @property
    def formula(self) -> str:
        return f"2·lcm({self.m_shelf},{self.m_psi})"


def _iterated_order(r: SolutionTable, bound: int) -> Optional[int]:
    m = r.as_map()
    ensure(is_permutation(m), "solution is not bijective")
    o = permutation_order(m)
    return o if o <= bound else None


def hemi_order(H: HemiPair, bound: Optional[int] = None) -> HemiOrderReport:
    """``o(r_G ⊣⊢ r_E) = 2·lcm(m_▷, m_ψ)``, checked against the permutation order."""
    bound = default_bound() if bound is None else bound
    if H.E <= 1:
        raise ValueError("the hemi order formula needs at least two coefficients")
    base = solution_from_twist(H.twist, check=False)
    if not (is_bijective(base) and nondegeneracy(base)[0]):
        raise ValueError("base solution must be bijective and left non-degenerate")
    ms = rack_N(H.shelf, bound)
    mp = m_psi(H.psi, bound)
    order = 2 * math.lcm(ms, mp) if ms is not None and mp is not None else None
    if order is not None and order > 2 * bound:
        order = None
    iterated = _iterated_order(hemi_solution(H), 2 * bound)
    if order is not None and iterated is not None:
        ensure(order == iterated, f"hemi order formula gives {order}, iteration gives {iterated}")
    return HemiOrderReport(ms, mp, order, iterated)


# -- decomposition of di-skew brace solutions ----------------------------------

@dataclass(frozen=True)
class DiskewDecomposition:
    skew_brace: DiSkewBrace  # on (G, ⊢), reindexed 0..|G|-1
    group: GroupTable
    G: tuple[int, ...]  # new index -> element of D
    E: tuple[int, ...]
    hemi: HemiPair
    F: Map  # a -> index of (g_a, e_a) in G × E
    psi_theorem: tuple[Map, ...]  # ψ_g(e) = g ⊢ e ⊣ g⁻¹
    psi_conventions_agree: bool
    theorem_psi_is_hemi_pair: bool

    def to_json(self) -> dict:
        return {
            "skew_brace": self.skew_brace.to_json(),
            "G": list(self.G),
            "E": list(self.E),
            "hemi": self.hemi.to_json(),
            "F": list(self.F),
            "psi_theorem": [list(p) for p in self.psi_theorem],
            "psi_conventions_agree": self.psi_conventions_agree,
            "theorem_psi_is_hemi_pair": self.theorem_psi_is_hemi_pair,
        }


@lru_cache(maxsize=512)
def diskew_decompose(B: DiSkewBrace) -> DiskewDecomposition:
    """Split ``r_D`` as a hemi-semidirect product over a skew brace on the groupal part.

    The hemi pair uses ``ψ_g(e) = g⁻¹ ⊢ e ⊣ g``, the action that matches the
    conjugation rack ``a ▷ b = a⁻¹ ⊢ b ⊣ a``; the mirrored convention
    ``g ⊢ e ⊣ g⁻¹`` is computed alongside and compared.
    """
    D, zero = B.digroup, B.zero
    add = decompose(D, zero)
    Gt, Gel = restrict_group(D.vdash, add.G)
    Eel = tuple(D.halo)
    gpos = {x: i for i, x in enumerate(Gel)}
    epos = {x: i for i, x in enumerate(Eel)}
    nE = len(Eel)

    def to_g(x: int) -> int:
        ensure(x in gpos, f"{x} is not in the groupal component")
        return gpos[x]

    bullet = BinOpTable.from_function(Gt.n, lambda i, j: to_g(D.vdash(B.circ(Gel[i], Gel[j]), zero)))
    SB = verify_diskew(GDigroup.from_group(Gt), bullet)
    ensure(is_skew_brace(SB), "groupal part is not a skew brace")
    phi = lambda_map(SB)
    lam = lambda_table(B)
    for i, a in enumerate(Gel):
        for j, b in enumerate(Gel):
            ensure(phi.phi[i][j] == to_g(D.vdash(lam[a][b], zero)), f"φ_a(b) ≠ λ_a(b) ⊢ 0 at {(a, b)}")
    ensure(phi.shelf.tri == conj_quandle(Gt).tri, "skew brace twist does not live on the conjugation quandle")

    def in_E(x: int) -> int:
        ensure(x in epos, f"{x} is not an idempotent")
        return epos[x]

    inv = D.inv
    psi = tuple(tuple(in_E(D.r(D.l(inv(g), e), g)) for e in Eel) for g in Gel)
    psi_thm = tuple(tuple(in_E(D.r(D.l(g, e), inv(g))) for e in Eel) for g in Gel)
    sigma = tuple(tuple(in_E(lam[g][e]) for e in Eel) for g in Gel)
    H = HemiPair(phi, psi, sigma)
    failure = hemi_pair_failure(H)
    ensure(failure is None, f"decomposition data is not a hemi pair: {failure}")
    thm_ok = hemi_pair_failure(HemiPair(phi, psi_thm, sigma)) is None

    F = tuple(gpos[add.g[a]] * nE + epos[add.e[a]] for a in range(B.n))
    ensure(is_permutation(F), "F is not a bijection")
    rD, rH = diskew_solution(B), hemi_solution(H)
    for a in range(B.n):
        for b in range(B.n):
            x, y = rD(a, b)
            ensure(rH(F[a], F[b]) == (F[x], F[y]), f"(F×F) r_D ≠ r_hemi (F×F) at {(a, b)}")
    return DiskewDecomposition(SB, Gt, Gel, Eel, H, F, psi_thm, psi_thm == psi, thm_ok)


@dataclass(frozen=True)
class DiskewOrderReport:
    exp_quotient: int
    m_psi: Optional[int]
    formula: str
    order: Optional[int]
    iterated: Optional[int]


def diskew_order(B: DiSkewBrace, bound: Optional[int] = None) -> DiskewOrderReport:
    """``o(r) = 2·lcm(exp(G/Z(G)), m_ψ)``; with one idempotent, the conjugation-quandle formula."""
    bound = default_bound() if bound is None else bound
    r = diskew_solution(B)
    iterated = _iterated_order(r, 2 * bound)
    dec = diskew_decompose(B)
    q = quotient_exponent(dec.group)
    if len(B.E) > 1:
        mp = m_psi(dec.hemi.psi, bound)
        rep = hemi_order(dec.hemi, bound)
        ensure(rep.m_shelf == q, "m_▷ of the skew brace solution differs from exp(G/Z(G))")
        order = 2 * math.lcm(q, mp) if mp is not None else None
        ensure(order == rep.order or rep.order is None, "di-skew order formula disagrees with the hemi order formula")
        formula = f"2·lcm({q},{mp})"
    elif B.n == 1:
        mp, order, formula = None, 1, "trivial carrier"
    else:
        mp, order = None, 2 * q
        formula = f"2·exp(G/Z(G)) = 2·{q}"
    if order is not None and order > 2 * bound:
        order = None
    if order is not None and iterated is not None:
        ensure(order == iterated, f"di-skew order formula gives {order}, iteration gives {iterated}")
    return DiskewOrderReport(q, mp, formula, order, iterated)
