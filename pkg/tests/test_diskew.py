import random

import pytest

from conftest import KLEIN_F, group_digroup
from ybe_forge import groups
from ybe_forge.averaging import digroup_from_pair
from ybe_forge.digroup import decompose
from ybe_forge.diskew import (
    almost_trivial_brace,
    diskew_failure,
    diskew_solution,
    is_di_brace,
    is_skew_brace,
    lambda_table,
    left_division,
    mult_decompose,
    square_inverse,
    trivial_brace,
    verify_diskew,
)
from ybe_forge.ledger import verification_ledger
from ybe_forge.serialize import encode
from ybe_forge.solution import solution_order, square_map
from ybe_forge.tables import AxiomError, BinOpTable, compose, identity_map


@pytest.fixture(scope="module")
def digroups(s3_pair, klein_pair, z4_action_digroup, s3_points_digroup):
    return [
        group_digroup("S3"),
        group_digroup("Z4"),
        digroup_from_pair(s3_pair),
        digroup_from_pair(klein_pair),
        z4_action_digroup,
        s3_points_digroup,
    ]


def test_trivial_and_almost_trivial(digroups):
    for D in digroups:
        for B in (trivial_brace(D), almost_trivial_brace(D)):
            assert diskew_failure(D, B.circ) is None
            assert verification_ledger(encode(B)).passed


def test_corrupted_circ_fails_with_witness(digroups):
    rng = random.Random(11)
    for D in digroups:
        B = trivial_brace(D)
        rows = [list(r) for r in B.circ.table]
        a, b = rng.randrange(D.n), rng.randrange(D.n)
        rows[a][b] = (rows[a][b] + 1) % D.n
        circ = BinOpTable(tuple(map(tuple, rows)))
        failure = diskew_failure(D, circ)
        assert failure is not None and failure.witness
        with pytest.raises(AxiomError):
            verify_diskew(D, circ)


def test_left_division(s3_brace):
    G = groups.s3()
    B = trivial_brace(group_digroup("S3"))
    for a in range(6):
        for b in range(6):
            assert left_division(B, a, b) == G.mul(G.inv(a), b)
    for a in range(6):
        for b in range(6):
            x = left_division(s3_brace, a, b)
            assert [y for y in range(6) if s3_brace.circ(a, y) == b] == [x]
        assert left_division(s3_brace, s3_brace.zero, a) == a


def test_lambda(digroups, v4_triple, V4):
    for D in digroups:
        assert lambda_table(trivial_brace(D)) == tuple(identity_map(D.n) for _ in range(D.n))
        lam = lambda_table(almost_trivial_brace(D))
        for a in range(D.n):
            for b in range(D.n):
                assert lam[a][b] == D.r(D.l(D.inv(a), b), a)
    _, h, B = v4_triple
    f = KLEIN_F
    lam = lambda_table(B)
    for x in range(4):
        for y in range(4):
            assert lam[x][y] == V4.mul(V4.inv(f[x]), h.images[x], y)


def test_solutions(digroups, s3_brace, v4_triple, V4):
    for D in digroups:
        r = diskew_solution(trivial_brace(D))
        for a in range(D.n):
            for b in range(D.n):
                assert r(a, b) == (b, D.r(D.l(D.inv(b), a), b))
    assert solution_order(diskew_solution(s3_brace)) == 4
    _, h, B = v4_triple
    f = g = KLEIN_F
    r = diskew_solution(B)
    H = h.images
    for x in range(4):
        for y in range(4):
            assert r(x, y) == (V4.mul(V4.inv(f[x]), H[x], y), V4.mul(V4.inv(H[y]), x, g[y]))


def test_square_inverse(digroups, s3_brace, v4_triple):
    braces = [trivial_brace(D) for D in digroups] + [s3_brace, v4_triple[2]]
    for B in braces:
        q, p = square_map(diskew_solution(B)), square_inverse(B)
        assert compose(p, q) == compose(q, p) == identity_map(B.n)
    for D in digroups:
        assert square_map(diskew_solution(trivial_brace(D))) == identity_map(D.n)


def test_multiplicative_decomposition(digroups, s3_brace, klein_pair):
    for B in [s3_brace] + [trivial_brace(D) for D in digroups]:
        dec = mult_decompose(B)
        add = decompose(B.digroup, B.zero)
        for a in range(B.n):
            assert B.circ(dec.m[a], dec.u[a]) == a
            assert add.g[dec.m[a]] == add.g[a]
            assert dec.m[add.g[a]] == dec.m[a]
    for D in digroups:
        B = trivial_brace(D)
        assert mult_decompose(B).m == decompose(D, B.zero).g
    Bk = trivial_brace(digroup_from_pair(klein_pair))
    assert mult_decompose(Bk).M == (0, 2)


def test_brace_flavours(digroups, s3_brace):
    assert is_skew_brace(trivial_brace(group_digroup("S3")))
    assert not is_skew_brace(s3_brace)
    assert is_di_brace(trivial_brace(group_digroup("Z4")))
    assert not is_di_brace(trivial_brace(group_digroup("S3")))


def test_bad_zero(s3_brace):
    with pytest.raises(ValueError):
        verify_diskew(s3_brace.digroup, s3_brace.circ, 1)
