"""Averaging operators and pairs on finite groups, and what they induce."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .digroup import GDigroup, check_digroup_identities, digroup_isomorphism, inverse_I, inverse_J
from .diskew import DiSkewBrace, diskew_failure, diskew_solution, verify_diskew
from .solution import SolutionTable
from .tables import AxiomError, BinOpTable, Failure, GroupTable, Map, ensure

ENUMERATION_LIMIT = 8
BRUTE_FORCE_LIMIT = 6  # n**n <= 46656


@dataclass(frozen=True)
class GroupEndoMap:
    """A self-map of a group; not necessarily a homomorphism."""

    group: GroupTable = field(compare=False, repr=False)
    images: Map

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if len(images) != self.group.n or any(not 0 <= x < self.group.n for x in images):
            raise ValueError("map images must cover the group and lie in range")
        object.__setattr__(self, "images", images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    @property
    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.images) if y == self.group.identity)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def is_endomorphism(self) -> bool:
        return self.group.is_endomorphism(self.images)

    def is_idempotent(self) -> bool:
        return all(self.images[y] == y for y in self.images)

    def to_json(self) -> list[int]:
        return list(self.images)


def _map(G: GroupTable, f) -> GroupEndoMap:
    return f if isinstance(f, GroupEndoMap) else GroupEndoMap(G, tuple(f))


# -- defining identities -------------------------------------------------------

def left_avg_failure(f: GroupEndoMap) -> Optional[Failure]:
    """``f(x)f(y) = f(f(x)y)``."""
    G, t = f.group, f.images
    for x in range(G.n):
        for y in range(G.n):
            if G.mul(t[x], t[y]) != t[G.mul(t[x], y)]:
                return Failure("left averaging", (x, y))
    return None


def right_avg_failure(f: GroupEndoMap) -> Optional[Failure]:
    """``f(x)f(y) = f(x f(y))``."""
    G, t = f.group, f.images
    for x in range(G.n):
        for y in range(G.n):
            if G.mul(t[x], t[y]) != t[G.mul(x, t[y])]:
                return Failure("right averaging", (x, y))
    return None


def is_left_avg(f: GroupEndoMap) -> bool:
    return left_avg_failure(f) is None


def is_right_avg(f: GroupEndoMap) -> bool:
    return right_avg_failure(f) is None


def is_avg(f: GroupEndoMap) -> bool:
    return is_left_avg(f) and is_right_avg(f)


@dataclass(frozen=True)
class AveragingPair:
    f: GroupEndoMap
    g: GroupEndoMap
    compatible: bool

    @property
    def group(self) -> GroupTable:
        return self.f.group

    @property
    def common_kernel(self) -> frozenset[int]:
        return self.f.kernel & self.g.kernel

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "g": self.g.to_json()}


def averaging_pair_failure(f: GroupEndoMap, g: GroupEndoMap) -> Optional[Failure]:
    G = f.group
    F, H = f.images, g.images
    for a in range(G.n):
        for b in range(G.n):
            fafb, gagb = G.mul(F[a], F[b]), G.mul(H[a], H[b])
            if fafb != F[G.mul(F[a], b)]:
                return Failure("f(a)f(b) = f(f(a)b)", (a, b))
            if fafb != F[G.mul(a, H[b])]:
                return Failure("f(a)f(b) = f(a g(b))", (a, b))
            if gagb != H[G.mul(a, H[b])]:
                return Failure("g(a)g(b) = g(a g(b))", (a, b))
            if gagb != H[G.mul(F[a], b)]:
                return Failure("g(a)g(b) = g(f(a)b)", (a, b))
    return None


def is_averaging_pair(f, g, G: Optional[GroupTable] = None) -> AveragingPair:
    """Check the four pair identities; raises ``AxiomError`` with a witness pair."""
    G = G if G is not None else f.group
    f, g = _map(G, f), _map(G, g)
    if f.group.op != g.group.op:
        raise ValueError("f and g act on different groups")
    failure = averaging_pair_failure(f, g)
    if failure is not None:
        raise AxiomError(failure)
    return AveragingPair(f, g, bool(f.kernel & g.kernel))


def single_pair(f: GroupEndoMap) -> AveragingPair:
    """``(f, f)`` for an averaging operator ``f``."""
    return is_averaging_pair(f, f)


# -- induced g-digroups --------------------------------------------------------

def digroup_from_pair(p: AveragingPair) -> GDigroup:
    """``a ⊢ b = f(a) b`` and ``a ⊣ b = a g(b)``."""
    if not p.compatible:
        raise ValueError("the averaging pair is not compatible: ker f ∩ ker g is empty")
    G, f, g = p.group, p.f.images, p.g.images
    D = GDigroup.verify(
        BinOpTable.from_function(G.n, lambda a, b: G.mul(f[a], b)),
        BinOpTable.from_function(G.n, lambda a, b: G.mul(a, g[b])),
    )
    ensure(frozenset(D.halo) == p.common_kernel, "bar-units differ from ker f ∩ ker g")
    ensure(check_digroup_identities(D), "pair digroup fails the g-digroup identities")
    for e in D.halo:
        for a in range(G.n):
            ensure(inverse_I(D, e, a) == G.mul(e, G.inv(g[a])), f"I_e(a) ≠ e g(a)⁻¹ at {(e, a)}")
            ensure(inverse_J(D, e, a) == G.mul(G.inv(f[a]), e), f"J_e(a) ≠ f(a)⁻¹ e at {(e, a)}")
            ensure(G.mul(f[a], f[G.mul(G.inv(f[a]), e)]) == G.identity, f"f(a)f(f(a)⁻¹e) ≠ 1 at {(e, a)}")
            ensure(G.mul(g[G.mul(e, G.inv(g[a]))], g[a]) == G.identity, f"g(e g(a)⁻¹)g(a) ≠ 1 at {(e, a)}")
    return D


def digroup_from_operator(h: GroupEndoMap) -> GDigroup:
    return digroup_from_pair(single_pair(h))


def fg_commuting_digroup(f, g, G: Optional[GroupTable] = None) -> GDigroup:
    """``a ⊢ b = f(a) fg(a)⁻¹ b`` and ``a ⊣ b = a f(b) fg(b)⁻¹``.

    Needs idempotent endomorphisms with ``fg = gf`` and ``Im f`` abelian.
    """
    G = G if G is not None else f.group
    f, g = _map(G, f), _map(G, g)
    for name, m in (("f", f), ("g", g)):
        if not (m.is_endomorphism() and m.is_idempotent()):
            raise ValueError(f"{name} is not an idempotent endomorphism")
    F, H = f.images, g.images
    fg = tuple(F[H[a]] for a in range(G.n))
    if fg != tuple(H[F[a]] for a in range(G.n)):
        raise ValueError("f and g do not commute")
    if any(G.mul(x, y) != G.mul(y, x) for x in f.image for y in f.image):
        raise ValueError("Im f is not abelian")
    k = tuple(G.mul(F[a], G.inv(fg[a])) for a in range(G.n))
    D = GDigroup.verify(
        BinOpTable.from_function(G.n, lambda a, b: G.mul(k[a], b)),
        BinOpTable.from_function(G.n, lambda a, b: G.mul(a, k[b])),
    )
    ensure(frozenset(D.halo) == frozenset(a for a in range(G.n) if F[a] == fg[a]), "bar-units differ from {f(a) = fg(a)}")
    # the operations are those of the single operator a -> f(a) fg(a)⁻¹
    same = digroup_from_operator(GroupEndoMap(G, k))
    ensure(same == D, "commuting-pair digroup differs from its single-operator form")
    return D


# -- enumeration ---------------------------------------------------------------

def _identity_checks(G: GroupTable, sides: str) -> Callable[[list[int], int], bool]:
    """Consistency test for a partial map whose entries ``0..k`` are fixed."""
    mul = G.op.table

    def ok(f: list[int], k: int) -> bool:
        for x in range(k + 1):
            fx = f[x]
            for y in range(k + 1):
                fy = f[y]
                lhs = mul[fx][fy]
                if "l" in sides:
                    z = mul[fx][y]
                    if z <= k and k in (x, y, z) and f[z] != lhs:
                        return False
                if "r" in sides:
                    z = mul[x][fy]
                    if z <= k and k in (x, y, z) and f[z] != lhs:
                        return False
        return True

    return ok


def _backtrack(G: GroupTable, sides: str) -> Iterator[Map]:
    n = G.n
    ok = _identity_checks(G, sides)
    f = [-1] * n

    def search(k: int) -> Iterator[Map]:
        if k == n:
            yield tuple(f)
            return
        for y in range(n):
            f[k] = y
            if ok(f, k):
                yield from search(k + 1)
        f[k] = -1

    yield from search(0)


def _brute_force(G: GroupTable, sides: str) -> Iterator[Map]:
    for images in itertools.product(range(G.n), repeat=G.n):
        m = GroupEndoMap(G, images)
        if ("l" not in sides or is_left_avg(m)) and ("r" not in sides or is_right_avg(m)):
            yield images


def _enumerate(G: GroupTable, sides: str, predicate, limit: int, method: str) -> list[GroupEndoMap]:
    if G.n > limit:
        raise ValueError(f"enumeration is capped at |G| <= {limit}; raise the limit explicitly")
    if method == "auto":
        method = "brute" if G.n <= BRUTE_FORCE_LIMIT else "backtrack"
    source = {"brute": _brute_force, "backtrack": _backtrack}[method]
    out = []
    for images in source(G, sides):
        m = GroupEndoMap(G, images)
        if predicate is None or predicate(m):
            out.append(m)
    return out


def enumerate_left_avg(G: GroupTable, predicate: Optional[Callable[[GroupEndoMap], bool]] = None,
                       limit: int = ENUMERATION_LIMIT, method: str = "auto") -> list[GroupEndoMap]:
    """All left averaging operators on ``G`` passing ``predicate``."""
    return _enumerate(G, "l", predicate, limit, method)


def enumerate_right_avg(G: GroupTable, predicate: Optional[Callable[[GroupEndoMap], bool]] = None,
                        limit: int = ENUMERATION_LIMIT, method: str = "auto") -> list[GroupEndoMap]:
    return _enumerate(G, "r", predicate, limit, method)


def enumerate_avg(G: GroupTable, predicate: Optional[Callable[[GroupEndoMap], bool]] = None,
                  limit: int = ENUMERATION_LIMIT, method: str = "auto") -> list[GroupEndoMap]:
    """All two-sided averaging operators on ``G`` passing ``predicate``."""
    return _enumerate(G, "lr", predicate, limit, method)


def idempotent_endomorphism(m: GroupEndoMap) -> bool:
    return m.is_endomorphism() and m.is_idempotent()


def kernel_is(kernel: Sequence[int]) -> Callable[[GroupEndoMap], bool]:
    target = frozenset(kernel)
    return lambda m: m.kernel == target


def nonempty_kernel(m: GroupEndoMap) -> bool:
    return bool(m.kernel)


# -- di-skew braces from a third operator --------------------------------------

def left_avg_brace_failure(p: AveragingPair, h: GroupEndoMap) -> Optional[Failure]:
    """First violated identity among AD1-AD3 for ``a ∘ b = h(a) b``."""
    G, f, g, t = p.group, p.f.images, p.g.images, h.images
    mul, inv = G.mul, G.inv
    for a in range(G.n):
        for b in range(G.n):
            if mul(t[a], f[b]) != mul(f[mul(t[a], b)], inv(f[a]), t[a]):
                return Failure("AD1", (a, b), "h(a)f(b) ≠ f(h(a)b) f(a)⁻¹ h(a)")
            if mul(g[a], g[b]) != g[mul(t[a], b)]:
                return Failure("AD2", (a, b), "g(a)g(b) ≠ g(h(a)b)")
            if t[mul(f[a], b)] != t[mul(a, g[b])]:
                return Failure("AD3", (a, b), "h(f(a)b) ≠ h(a g(b))")
    return None


def right_avg_brace_failure(p: AveragingPair, h: GroupEndoMap) -> Optional[Failure]:
    """First violated identity among AD1'-AD3' for ``a ∘ b = b h(a)``."""
    G, f, g, t = p.group, p.f.images, p.g.images, h.images
    mul, inv = G.mul, G.inv
    for a in range(G.n):
        for b in range(G.n):
            if mul(f[b], f[a]) != f[mul(b, t[a])]:
                return Failure("AD1'", (a, b), "f(b)f(a) ≠ f(b h(a))")
            if mul(g[b], t[a]) != mul(t[a], inv(g[a]), g[mul(b, t[a])]):
                return Failure("AD2'", (a, b), "g(b)h(a) ≠ h(a) g(a)⁻¹ g(b h(a))")
            if t[mul(f[a], b)] != t[mul(a, g[b])]:
                return Failure("AD3'", (a, b), "h(f(a)b) ≠ h(a g(b))")
    return None


def _brace_from(p: AveragingPair, circ: BinOpTable, failure: Optional[Failure]) -> DiSkewBrace:
    D = digroup_from_pair(p)
    direct = diskew_failure(D, circ)
    ensure((failure is None) == (direct is None), f"averaging identities and di-skew axioms disagree: {failure} vs {direct}")
    if failure is not None:
        raise AxiomError(failure)
    return verify_diskew(D, circ)


def diskew_from_left_avg(p: AveragingPair, h) -> DiSkewBrace:
    """``(D, ⊢, ⊣, ∘)`` with ``a ∘ b = h(a) b``; raises ``AxiomError`` naming the failing ADi."""
    G = p.group
    h = _map(G, h)
    if not is_left_avg(h):
        raise ValueError("h is not a left averaging operator")
    circ = BinOpTable.from_function(G.n, lambda a, b: G.mul(h.images[a], b))
    return _brace_from(p, circ, left_avg_brace_failure(p, h))


def diskew_from_right_avg(p: AveragingPair, h) -> DiSkewBrace:
    """``a ∘ b = b h(a)``."""
    G = p.group
    h = _map(G, h)
    if not is_right_avg(h):
        raise ValueError("h is not a right averaging operator")
    circ = BinOpTable.from_function(G.n, lambda a, b: G.mul(b, h.images[a]))
    return _brace_from(p, circ, right_avg_brace_failure(p, h))


def explicit_solution_left(p: AveragingPair, h) -> SolutionTable:
    """Closed form of the solution of the brace ``a ∘ b = h(a) b``."""
    G = p.group
    h = _map(G, h)
    f, g, t = p.f.images, p.g.images, h.images
    mul, inv = G.mul, G.inv

    def r(x: int, y: int) -> tuple[int, int]:
        u = mul(inv(f[x]), t[x], y)
        return u, mul(inv(t[u]), x, g[u])

    sol = SolutionTable.from_function(G.n, r)
    ensure(sol == diskew_solution(diskew_from_left_avg(p, h)), "explicit left formula differs from the brace solution")
    return sol


def explicit_solution_right(p: AveragingPair, h) -> SolutionTable:
    """Closed form of the solution of the brace ``a ∘ b = b h(a)``."""
    G = p.group
    h = _map(G, h)
    f, g, t = p.f.images, p.g.images, h.images
    mul, inv = G.mul, G.inv

    def r(x: int, y: int) -> tuple[int, int]:
        u = mul(inv(f[x]), y, t[x])
        return u, mul(x, g[u], inv(t[u]))

    sol = SolutionTable.from_function(G.n, r)
    ensure(sol == diskew_solution(diskew_from_right_avg(p, h)), "explicit right formula differs from the brace solution")
    return sol


@dataclass(frozen=True)
class BraceDatum:
    side: str  # "left": a ∘ b = h(a) b, "right": a ∘ b = b h(a)
    pair: AveragingPair
    h: GroupEndoMap

    def brace(self) -> DiSkewBrace:
        return (diskew_from_left_avg if self.side == "left" else diskew_from_right_avg)(self.pair, self.h)

    def explicit_solution(self) -> SolutionTable:
        return (explicit_solution_left if self.side == "left" else explicit_solution_right)(self.pair, self.h)


def compatible_pairs(G: GroupTable, limit: int = ENUMERATION_LIMIT) -> list[AveragingPair]:
    """Every compatible pair ``(f, g)`` with ``f`` left and ``g`` right averaging."""
    lops, rops = enumerate_left_avg(G, limit=limit), enumerate_right_avg(G, limit=limit)
    return [
        AveragingPair(f, g, True)
        for f in lops
        for g in rops
        if f.kernel & g.kernel and averaging_pair_failure(f, g) is None
    ]


def averaging_brace_data(G: GroupTable, limit: int = ENUMERATION_LIMIT) -> list[BraceDatum]:
    """All triples ``(f, g, h)`` on ``G`` satisfying AD1–AD3 or their right-handed versions."""
    lops, rops = enumerate_left_avg(G, limit=limit), enumerate_right_avg(G, limit=limit)
    out = []
    for p in compatible_pairs(G, limit):
        out.extend(BraceDatum("left", p, h) for h in lops if left_avg_brace_failure(p, h) is None)
        out.extend(BraceDatum("right", p, h) for h in rops if right_avg_brace_failure(p, h) is None)
    return out


# -- single-operator origin ----------------------------------------------------

@dataclass(frozen=True)
class OriginReport:
    refuted: bool
    candidates: int  # averaging operators with non-empty kernel
    prefiltered: int  # rejected by the centraliser test before any search
    witness: Optional[tuple[Map, Map]]  # (h, isomorphism) when not refuted


def single_operator_origin(D1: GDigroup, G2: GroupTable, pair: Optional[AveragingPair] = None,
                           limit: int = ENUMERATION_LIMIT) -> OriginReport:
    """Search averaging operators ``h`` on ``G2`` whose digroup is isomorphic to ``D1``.

    For a pair digroup an isomorphism ``φ`` to the ``h``-digroup forces
    ``φf(a) = h(φ(a))φ(1)`` and ``φg(a) = φ(1)h(φ(a))``, hence ``f = g`` exactly
    when ``φ(1)`` centralises ``Im h``.  With ``f ≠ g`` this rules out every
    ``h`` whose image is central; the prefilter is cross-checked against the
    full isomorphism search rather than trusted.
    """
    if D1.n != G2.n:
        return OriginReport(True, 0, 0, None)
    candidates = enumerate_avg(G2, nonempty_kernel, limit=limit)
    prefiltered = 0
    witness = None
    for h in candidates:
        D2 = digroup_from_operator(h)
        central_image = all(G2.mul(c, x) == G2.mul(x, c) for x in h.image for c in range(G2.n))
        ruled_out = pair is not None and pair.f != pair.g and central_image
        if len(D2.halo) != len(D1.halo):
            ruled_out = True
        phi = digroup_isomorphism(D1, D2)
        if ruled_out:
            prefiltered += 1
            ensure(phi is None, "prefilter rejected an operator that does yield an isomorphic digroup")
        if phi is not None:
            if pair is not None:
                G1, f, g = pair.group, pair.f.images, pair.g.images
                one = phi[G1.identity]
                for a in range(G1.n):
                    ensure(phi[f[a]] == G2.mul(h.images[phi[a]], one), "φf(a) ≠ h(φ(a))φ(1)")
                    ensure(phi[g[a]] == G2.mul(one, h.images[phi[a]]), "φg(a) ≠ φ(1)h(φ(a))")
            if witness is None:
                witness = (h.images, phi)
    return OriginReport(witness is None, len(candidates), prefiltered, witness)


def refute_single_operator_origin(D1: GDigroup, G2: GroupTable, pair: Optional[AveragingPair] = None,
                                  limit: int = ENUMERATION_LIMIT) -> bool:
    """True iff no averaging operator on ``G2`` with non-empty kernel yields a digroup isomorphic to ``D1``."""
    return single_operator_origin(D1, G2, pair, limit).refuted
