import pytest

from ybe_forge import groups
from ybe_forge.tables import (
    AxiomError,
    BinOpTable,
    center,
    compose,
    exponent,
    idempotents,
    inverse,
    is_associative,
    is_group,
    is_left_group,
    is_right_group,
    make_group,
    map_order,
    map_power,
    permutation_order,
    quotient_exponent,
)


def table(rows):
    return BinOpTable(tuple(map(tuple, rows)))


def left_zero(n):
    return BinOpTable.from_function(n, lambda a, b: a)


def right_zero(n):
    return BinOpTable.from_function(n, lambda a, b: b)


def test_associativity_examples():
    assert is_associative(groups.cyclic(3).op)
    assert not is_associative(table([[1, 0], [0, 0]]))
    assert is_associative(left_zero(3))


def test_group_recognition():
    G = is_group(groups.cyclic(4).op)
    assert G is not None and G.identity == 0
    assert is_group(left_zero(2)) is None
    S3 = make_group(groups.s3().op)
    assert S3.n == 6 and not S3.is_abelian()
    with pytest.raises(AxiomError) as exc:
        make_group(left_zero(2))
    assert exc.value.failure.axiom == "identity"


def test_right_and_left_groups():
    for name in ("Z5", "S3", "Q8"):
        G = groups.by_name(name)
        assert is_right_group(G.op) and is_left_group(G.op)
    assert is_right_group(right_zero(3))
    assert not is_right_group(left_zero(2))
    assert is_left_group(left_zero(3))
    assert not is_left_group(right_zero(2))


def test_idempotents():
    assert idempotents(groups.s3().op) == {0}
    assert idempotents(right_zero(3)) == {0, 1, 2}


@pytest.mark.parametrize(
    "name, centre, exp, qexp",
    [("S3", 1, 6, 6), ("Z4", 4, 4, 1), ("Q8", 2, 4, 2), ("D4", 2, 4, 2), ("V4", 4, 2, 1)],
)
def test_center_exponent(name, centre, exp, qexp):
    G = groups.by_name(name)
    assert len(center(G)) == centre
    assert exponent(G) == exp
    assert quotient_exponent(G) == qexp


def test_permutation_orders():
    assert permutation_order(tuple(range(5))) == 1
    assert permutation_order((1, 2, 0)) == 3
    flip = tuple(b * 2 + a for a in range(2) for b in range(2))
    assert permutation_order(flip) == 2
    assert map_order((0, 0), 10) is None  # not a permutation: never returns to the identity


def test_map_algebra():
    p = (1, 2, 0, 4, 3)
    assert compose(p, inverse(p)) == tuple(range(5))
    assert map_power(p, 6) == tuple(range(5))
    assert map_power(p, -1) == inverse(p)


def test_corpus_groups():
    expected = {"Z2": 2, "Z3": 3, "Z4": 4, "Z5": 5, "Z6": 6, "Z7": 7, "Z8": 8, "V4": 4, "S3": 6, "D4": 8, "Q8": 8}
    for name, n in expected.items():
        G = groups.by_name(name)
        assert G.n == n
        assert make_group(G.op).identity == G.identity
    assert not groups.quaternion().is_abelian()
    assert groups.by_name("D4").n == 8


def test_table_validation():
    with pytest.raises(ValueError):
        table([[0, 1], [1]])
    with pytest.raises(ValueError):
        table([[0, 2], [1, 0]])
