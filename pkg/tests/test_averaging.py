import itertools

import pytest

from conftest import KLEIN_F, S3_F, brace_corpus
from ybe_forge import groups
from ybe_forge.averaging import (
    GroupEndoMap,
    averaging_pair_failure,
    compatible_pairs,
    digroup_from_operator,
    digroup_from_pair,
    diskew_from_left_avg,
    diskew_from_right_avg,
    enumerate_avg,
    enumerate_left_avg,
    enumerate_right_avg,
    explicit_solution_left,
    explicit_solution_right,
    fg_commuting_digroup,
    idempotent_endomorphism,
    is_averaging_pair,
    is_avg,
    is_left_avg,
    is_right_avg,
    kernel_is,
    left_avg_brace_failure,
    refute_single_operator_origin,
    right_avg_brace_failure,
    single_operator_origin,
    single_pair,
)
from ybe_forge.digroup import GDigroup
from ybe_forge.diskew import almost_trivial_brace, diskew_failure, trivial_brace
from ybe_forge.solution import solution_order
from ybe_forge.tables import AxiomError

# frozen brute-force oracle: averaging operators per corpus group
TWO_SIDED = {"Z2": 3, "Z3": 4, "Z4": 9, "V4": 17, "Z5": 6, "S3": 14, "Z6": 24, "Z7": 8, "Z8": 41, "D4": 51, "Q8": 19}
LEFT = {"S3": 40, "Z7": 8, "Z8": 41, "D4": 137, "Q8": 73}


def _endos(G):
    for images in itertools.product(range(G.n), repeat=G.n):
        if G.is_endomorphism(images):
            yield GroupEndoMap(G, images)


def _brute_avg(G, left=True, right=True):
    """Independent definition scan over all n^n self-maps."""
    out = []
    for f in itertools.product(range(G.n), repeat=G.n):
        ok = True
        for x in range(G.n):
            for y in range(G.n):
                fxfy = G.mul(f[x], f[y])
                if left and fxfy != f[G.mul(f[x], y)] or right and fxfy != f[G.mul(x, f[y])]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(f)
    return out


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "V4", "Z5", "S3", "Z6"])
def test_enumeration_matches_definition(name):
    G = groups.by_name(name)
    brute = _brute_avg(G)
    assert len(brute) == TWO_SIDED[name]
    for method in ("brute", "backtrack"):
        assert [m.images for m in enumerate_avg(G, method=method)] == brute
    assert [m.images for m in enumerate_left_avg(G, method="backtrack")] == _brute_avg(G, right=False)
    assert [m.images for m in enumerate_right_avg(G, method="backtrack")] == _brute_avg(G, left=False)


@pytest.mark.parametrize("name", ["Z7", "Z8", "D4", "Q8"])
def test_enumeration_counts_large(name):
    G = groups.by_name(name)
    ops = enumerate_avg(G)
    assert len(ops) == TWO_SIDED[name] and all(is_avg(m) for m in ops)
    if name in LEFT:
        assert len(enumerate_left_avg(G)) == LEFT[name]


def test_limit_is_enforced():
    with pytest.raises(ValueError):
        enumerate_avg(groups.cyclic(9))


@pytest.mark.parametrize("name", ["Z4", "V4", "S3", "Z6"])
def test_idempotent_endomorphisms_are_averaging(name):
    G = groups.by_name(name)
    idem = [m for m in _endos(G) if m.is_idempotent()]
    assert idem and all(is_avg(m) for m in idem)
    found = {m.images for m in enumerate_avg(G, idempotent_endomorphism)}
    assert found == {m.images for m in idem}


def test_v4_idempotent_endomorphisms():
    found = {m.images for m in enumerate_avg(groups.klein(), idempotent_endomorphism)}
    # trivial, identity, and six rank-one retractions (three images x two complements)
    assert len(found) == 8
    assert (0, 0, 0, 0) in found and (0, 1, 2, 3) in found
    assert sum(len(set(f)) == 2 for f in found) == 6


def test_one_sided_example():
    G = groups.s3()
    c = 2  # (12)
    f = GroupEndoMap(G, tuple(G.mul(x, c) for x in range(6)))
    assert is_left_avg(f) and not is_right_avg(f)
    assert is_avg(GroupEndoMap(G, tuple(range(6))))


def test_pairs(klein_pair, V4):
    p = single_pair(GroupEndoMap(groups.s3(), S3_F))
    assert p.compatible
    assert klein_pair.compatible
    assert klein_pair.f.kernel == klein_pair.g.kernel == {0, 1}
    Z2 = groups.cyclic(2)
    failure = averaging_pair_failure(GroupEndoMap(Z2, (0, 1)), GroupEndoMap(Z2, (0, 0)))
    assert failure is not None
    with pytest.raises(AxiomError):
        is_averaging_pair((0, 1), (0, 0), Z2)


def test_pair_digroups(klein_pair, s3_pair):
    for name in ("Z5", "S3", "Q8"):
        G = groups.by_name(name)
        D = digroup_from_operator(GroupEndoMap(G, tuple(range(G.n))))
        assert D == GDigroup.from_group(G) and D.halo == (G.identity,)
    D = digroup_from_pair(klein_pair)
    assert D.n == 4 and len(D.halo) == 2
    assert set(digroup_from_pair(s3_pair).halo) == {0, 3, 4}


def test_kernel_predicate():
    G = groups.s3()
    found = enumerate_avg(G, lambda m: idempotent_endomorphism(m) and kernel_is((0, 3, 4))(m))
    assert S3_F in {m.images for m in found}


def test_h_equal_f_gives_trivial_brace():
    for name in ("V4", "S3"):
        for p in compatible_pairs(groups.by_name(name)):
            if is_left_avg(p.f):
                B = diskew_from_left_avg(p, p.f)
                assert B.circ == trivial_brace(digroup_from_pair(p)).circ
            if is_right_avg(p.g):
                B = diskew_from_right_avg(p, p.g)
                assert B.circ == almost_trivial_brace(digroup_from_pair(p)).circ


@pytest.mark.parametrize("name", ["V4", "S3"])
def test_ad_identities_iff_diskew(name):
    G = groups.by_name(name)
    lops, rops = enumerate_left_avg(G), enumerate_right_avg(G)
    for p in compatible_pairs(G):
        D = digroup_from_pair(p)
        for h in lops:
            circ = tuple(tuple(G.mul(h.images[a], b) for b in range(G.n)) for a in range(G.n))
            from ybe_forge.tables import BinOpTable

            assert (left_avg_brace_failure(p, h) is None) == (diskew_failure(D, BinOpTable(circ)) is None)
        for h in rops:
            circ = tuple(tuple(G.mul(b, h.images[a]) for b in range(G.n)) for a in range(G.n))
            assert (right_avg_brace_failure(p, h) is None) == (diskew_failure(D, BinOpTable(circ)) is None)


def test_ad2_violation_rejected(s3_pair, S3):
    g = s3_pair.g.images
    hits = 0
    for h in enumerate_left_avg(S3):
        t = h.images
        if any(S3.mul(g[a], g[b]) != g[S3.mul(t[a], b)] for a in range(6) for b in range(6)):
            hits += 1
            with pytest.raises(AxiomError) as exc:
                diskew_from_left_avg(s3_pair, h)
            assert exc.value.failure.axiom in ("AD1", "AD2", "AD3")
    assert hits > 0


def test_side_preconditions(S3):
    p = single_pair(GroupEndoMap(S3, S3_F))
    left_only = GroupEndoMap(S3, tuple(S3.mul(x, 2) for x in range(6)))
    with pytest.raises(ValueError):
        diskew_from_right_avg(p, left_only)


def test_explicit_formulas(s3_pair, v4_triple, V4):
    p, h, B = v4_triple
    r = explicit_solution_left(p, h)
    f = g = KLEIN_F
    H = h.images
    for x in range(4):
        for y in range(4):
            assert r(x, y) == (V4.mul(V4.inv(f[x]), H[x], y), V4.mul(V4.inv(H[y]), x, g[y]))
    # dual version on V4, right operator h
    rp = explicit_solution_right(p, h)
    for x in range(4):
        for y in range(4):
            u = V4.mul(V4.inv(f[x]), y, H[x])
            assert rp(x, y) == (u, V4.mul(x, g[u], V4.inv(H[u])))
    # h = f reproduces r(a, b) = (b, b⁻¹ ⊢ a ⊣ b)
    D = digroup_from_pair(s3_pair)
    r = explicit_solution_left(s3_pair, s3_pair.f)
    assert all(r(a, b) == (b, D.r(D.l(D.inv(b), a), b)) for a in range(6) for b in range(6))
    assert solution_order(r) == 4


def test_fg_commuting(V4):
    f = GroupEndoMap(V4, KLEIN_F)
    D = fg_commuting_digroup(f, f)
    assert set(D.halo) == set(range(4))
    assert D == digroup_from_operator(GroupEndoMap(V4, (0, 0, 0, 0)))
    pa, pb = GroupEndoMap(V4, (0, 1, 0, 1)), GroupEndoMap(V4, (0, 0, 2, 2))
    D = fg_commuting_digroup(pa, pb)
    assert D.n == 4
    S3 = groups.s3()
    ident = GroupEndoMap(S3, tuple(range(6)))
    with pytest.raises(ValueError):
        fg_commuting_digroup(ident, ident)


def test_single_operator_origin(klein_pair, s3_pair, V4):
    rep = single_operator_origin(digroup_from_pair(klein_pair), V4, klein_pair)
    assert rep.refuted and rep.candidates == 17
    assert not refute_single_operator_origin(digroup_from_pair(s3_pair), groups.s3(), s3_pair)
    Q8 = groups.quaternion()
    assert not refute_single_operator_origin(GDigroup.from_group(Q8), Q8)


def test_brace_corpus_counts():
    expected = {"V4": (106, 53), "S3": (86, 85), "D4": (562, 497)}
    for name, (data, distinct) in expected.items():
        d, b = brace_corpus(name)
        assert (len(d), len(b)) == (data, distinct)
        assert len(compatible_pairs(groups.by_name(name))) == {"V4": 29, "S3": 43, "D4": 169}[name]
