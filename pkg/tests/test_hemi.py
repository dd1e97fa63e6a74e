import collections
import math
import itertools

import pytest

from conftest import brace_corpus, group_digroup
from ybe_forge import groups
from ybe_forge.averaging import digroup_from_pair
from ybe_forge.digroup import from_group_action
from ybe_forge.diskew import almost_trivial_brace, trivial_brace
from ybe_forge.hemi import (
    DynamicalPair,
    HemiPair,
    _cocycle_failure,
    _family,
    constant_hemi_pair,
    derived_hemi_pair,
    diskew_decompose,
    diskew_order,
    dynamical_extension,
    dynamical_pair_failure,
    hemi_dynamical_pair,
    hemi_order,
    hemi_pair_failure,
    hemi_shelf,
    hemi_solution,
    is_shelf_action,
    m_psi,
    twist_extension,
    verify_dynamical_pair,
)
from ybe_forge.selfdist import conj_quandle, conjugation_rack, rack_N, trivial_quandle
from ybe_forge.solution import (
    Twist,
    derived_solution,
    enumerate_left_nd_solutions,
    is_bijective,
    solution_from_twist,
    twist_failure,
    twist_of,
    verify_ybe,
)
from ybe_forge.tables import AxiomError, identity_map, inverse, permutation_order


def _relabelled(table, F):
    """Table of a structure on D transported along the bijection F."""
    n = len(F)
    Finv = inverse(F)
    return tuple(tuple(F[table[Finv[x]][Finv[y]]] for y in range(n)) for x in range(n))


def test_theorem_on_small_family():
    """Λ is a twist exactly when (α, β) is a dynamical pair (cocycle α, trivial quandle on 2 points)."""
    S, E = trivial_quandle(2), 2
    maps = list(itertools.product(range(2), repeat=2))
    perms = [(0, 1), (1, 0)]
    tally = collections.Counter()
    for phi in [((0, 1), (0, 1)), ((1, 0), (1, 0))]:
        T = Twist(S, phi)
        for A in itertools.product(maps, repeat=4):
            alpha = _family(2, E, lambda a, b, s, t: A[2 * a + b][t])
            if _cocycle_failure(S, E, alpha):
                continue
            for B in itertools.product(perms, repeat=4):
                beta = _family(2, E, lambda a, b, s, t: B[2 * a + b][t])
                P = DynamicalPair(T, E, alpha, beta)
                pair = verify_dynamical_pair(P)
                tally[pair] += 1
                assert pair == (twist_failure(twist_extension(P, check=False)) is None)
    assert tally[True] == 528 and tally[False] == 2672


def test_projection_pair_on_trivial_quandle():
    S = trivial_quandle(2)
    T = Twist(S, (identity_map(2),) * 2)
    proj = lambda a, b, s, t: t
    assert verify_dynamical_pair(DynamicalPair.from_functions(T, 3, proj, proj))


def test_mutated_beta_fails(s3_brace):
    H = diskew_decompose(s3_brace).hemi
    P = hemi_dynamical_pair(H)
    assert verify_dynamical_pair(P)
    beta = [[[list(m) for m in row] for row in fam] for fam in P.beta]
    beta[1][0][0] = beta[1][0][0][::-1]
    bad = DynamicalPair(P.twist, P.E, P.alpha, tuple(tuple(tuple(map(tuple, r)) for r in f) for f in beta))
    failure = dynamical_pair_failure(bad)
    assert failure is not None and failure.witness
    with pytest.raises(AxiomError):
        twist_extension(bad)
    assert twist_failure(twist_extension(bad, check=False)) is not None


def test_literal_sigma_convention_fails(s3_points_digroup):
    """β = σ (rather than σ⁻¹) is not a dynamical pair once σ is non-involutive."""
    dec = diskew_decompose(almost_trivial_brace(s3_points_digroup))
    H = dec.hemi
    assert any(permutation_order(s) > 2 for s in H.sigma)
    literal = DynamicalPair.from_functions(H.twist, H.E, lambda a, b, s, t: H.psi[a][t], lambda a, b, s, t: H.sigma[a][t])
    failure = dynamical_pair_failure(literal)
    assert failure is not None and failure.axiom == "dynamical pair, mixed identity"
    assert verify_dynamical_pair(hemi_dynamical_pair(H))


def test_extensions():
    S = trivial_quandle(3)
    ext = dynamical_extension(S, 2, _family(3, 2, lambda a, b, s, t: t))
    assert ext.tri == trivial_quandle(6).tri
    G = groups.s3()
    C = conj_quandle(G)
    psi = [tuple(range(2))] * 6
    alpha = _family(6, 2, lambda a, b, s, t: psi[a][t])
    assert dynamical_extension(C, 2, alpha).tri == hemi_shelf(C, psi).tri


def test_conj_rack_as_hemi_shelf(klein_pair, s3_pair):
    for p in (klein_pair, s3_pair):
        D = digroup_from_pair(p)
        dec = diskew_decompose(trivial_brace(D))
        H = hemi_shelf(dec.hemi.shelf, dec.hemi.psi)
        assert _relabelled(conjugation_rack(D).tri.table, dec.F) == H.tri.table


def test_hemi_twist_extension(s3_brace):
    H = diskew_decompose(s3_brace).hemi
    T = twist_extension(hemi_dynamical_pair(H))
    assert twist_failure(T) is None
    assert solution_from_twist(T) == hemi_solution(H)


def test_shelf_actions():
    C = conj_quandle(groups.s3())
    assert is_shelf_action(C, [(0, 1, 2)] * 6)
    bad = [(0, 1, 2)] * 6
    bad[1] = (1, 0, 2)
    assert not is_shelf_action(C, bad)
    with pytest.raises(AxiomError):
        hemi_shelf(C, bad)


def test_derived_hemi_pairs():
    count = 0
    for r in enumerate_left_nd_solutions(3):
        if is_bijective(r):
            H = derived_hemi_pair(r)
            assert hemi_pair_failure(H) is None
            assert verify_ybe(hemi_solution(H))
            count += 1
    assert count > 0


def test_constant_pairs():
    r = derived_solution(conj_quandle(groups.s3()))
    T = twist_of(r)
    f, g = (1, 2, 0), (2, 0, 1)
    H = constant_hemi_pair(T, f, g)
    assert hemi_pair_failure(H) is None
    rep = hemi_order(H)
    assert rep.order == 2 * math.lcm(rack_N(T.shelf), permutation_order(f)) == rep.iterated
    bad = constant_hemi_pair(T, (1, 0, 2), (0, 2, 1))
    assert hemi_pair_failure(bad) is not None
    assert m_psi([(0, 1, 2)] * 6) == 1


def test_s3_orders(s3_brace):
    dec = diskew_decompose(s3_brace)
    rep = hemi_order(dec.hemi)
    assert (rep.m_shelf, rep.m_psi, rep.order, rep.iterated) == (1, 2, 4, 4)
    assert diskew_order(s3_brace).order == 4
    assert diskew_order(trivial_brace(group_digroup("S3"))).order == 12
    Z2 = groups.cyclic(2)
    product = from_group_action(Z2, 3, [(0, 1, 2)] * 2)
    rep = diskew_order(trivial_brace(product))
    assert rep.order == rep.iterated == 2


def test_decompositions(s3_brace, v4_triple, klein_pair):
    dec = diskew_decompose(s3_brace)
    assert len(dec.G) == 2 and len(dec.E) == 3
    assert len(set(dec.F)) == 6
    for B in (trivial_brace(digroup_from_pair(klein_pair)), trivial_brace(group_digroup("S3"))):
        dec = diskew_decompose(B)
        assert all(s == identity_map(len(dec.E)) for s in dec.hemi.sigma)
        D = B.digroup
        for i, g in enumerate(dec.G):
            for j, e in enumerate(dec.E):
                assert dec.E[dec.hemi.psi[i][j]] == D.r(D.l(D.inv(g), e), g)
    dec = diskew_decompose(v4_triple[2])
    assert hemi_pair_failure(dec.hemi) is None


def test_psi_conventions(s3_points_digroup):
    for name in ("V4", "S3"):
        for _, B in brace_corpus(name)[1]:
            assert diskew_decompose(B).psi_conventions_agree
    dec = diskew_decompose(almost_trivial_brace(s3_points_digroup))
    assert not dec.psi_conventions_agree and not dec.theorem_psi_is_hemi_pair


def test_hemi_order_needs_coefficients():
    r = derived_solution(trivial_quandle(2))
    H = HemiPair(twist_of(r), [(0,)] * 2, [(0,)] * 2)
    with pytest.raises(ValueError):
        hemi_order(H)
