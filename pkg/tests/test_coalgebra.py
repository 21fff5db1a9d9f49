from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corep.algebra import NonSplitError
from corep.coalgebra import (Coalgebra, coradical, coradical_filtration, group_coalgebra, is_basic,
                             is_multiplicative, is_primitive, is_subcoalgebra, make_coalgebra,
                             matrix_coalgebra, verify_coalgebra, wedge, whole)
from corep.fusion import odot_prime
from corep.hopf import element_to_vec
from corep.linalg import span
from corep.report import StructuralError
from corep.scalar import CyclotomicField


def vec(C, name):
    return {C.index(name): C.field.one}


def block_matrix(C, i):
    h = C.hopf
    return [[element_to_vec(C, x) for x in row] for row in h.simple_matrix(i)]


def test_matrix_coalgebra_passes():
    assert verify_coalgebra(matrix_coalgebra(2)).ok
    assert verify_coalgebra(matrix_coalgebra(3)).ok


def test_perturbed_matrix_coalgebra_fails_at_entry():
    M = matrix_coalgebra(2)
    rows = list(M.delta)
    j, k, _ = rows[0][0]
    rows[0] = ((j, k, M.field(2)),) + rows[0][1:]
    bad = Coalgebra(M.field, M.labels, tuple(rows), M.counit, None, "M2'")
    rep = verify_coalgebra(bad)
    assert not rep.ok
    assert "e11" in rep.first_failure().detail


def test_out_of_range_is_structural():
    M = matrix_coalgebra(2)
    rows = list(M.delta)
    rows[1] = ((9, 0, M.field.one),)
    with pytest.raises(StructuralError):
        verify_coalgebra(Coalgebra(M.field, M.labels, tuple(rows), M.counit))
    with pytest.raises(StructuralError):
        make_coalgebra(M.field, ["a"], {0: [(0, 3, 1)]}, {0: 1})


def test_truncation_passes(H2):
    assert verify_coalgebra(H2).ok


def test_json_round_trip(H2):
    D = Coalgebra.from_json(H2.to_json())
    assert D.labels == H2.labels and D.delta == H2.delta and D.counit == H2.counit


def test_multiplicative_and_basic(H2):
    C1 = block_matrix(H2, 1)
    assert is_multiplicative(C1, H2) and is_basic(C1, H2)
    g = [[{H2.index("e0"): 1, H2.index("f0"): -1}]]
    assert is_multiplicative(g, H2) and is_basic(g, H2)
    prod = odot_prime(H2, C1, C1)
    assert len(prod) == 4
    assert is_multiplicative(prod, H2)
    assert not is_basic(prod, H2)


def test_primitive_classification(H2):
    one = [[{H2.index("e0"): 1, H2.index("f0"): 1}]]
    C1 = block_matrix(H2, 1)
    h = H2.hopf
    uv = [[element_to_vec(H2, h.gen("u")), element_to_vec(H2, h.gen("v"))]]
    assert is_primitive(uv, one, C1, H2) == "non_trivial"
    assert is_primitive([[{}, {}]], one, C1, H2) == "trivial"
    ef = [[vec(H2, "e1"), vec(H2, "f1")]]
    assert is_primitive(ef, one, C1, H2) == "not_primitive"
    with pytest.raises(StructuralError):
        is_primitive([[{}]], one, C1, H2)


def test_wedge_examples(H2):
    cor = coradical(H2)
    k1, C1 = cor.block("1").space, cor.block("C1").space
    assert wedge(k1, k1, H2) == k1
    W = wedge(k1, C1, H2)
    assert W.dim == 7
    h = H2.hopf
    assert W.contains(element_to_vec(H2, h.gen("u"))) and W.contains(element_to_vec(H2, h.gen("v")))
    full = whole(H2)
    assert wedge(full, full, H2) == full


def test_wedge_rejects_non_subcoalgebra(H2):
    u = span([element_to_vec(H2, H2.hopf.gen("u"))], H2.dim)
    with pytest.raises(StructuralError):
        wedge(u, u, H2)


def test_coradical_of_H1(H1):
    cor = coradical(H1)
    assert sorted(b.space.dim for b in cor.blocks) == [1, 1, 4, 4]
    assert set(cor.labels()) == {"1", "g", "C1", "C2"}
    for b in cor.blocks:
        assert is_multiplicative(b.matrix, H1) and is_basic(b.matrix, H1)


def test_coradical_group_and_A(A4):
    G = group_coalgebra(["1", "g"])
    cor = coradical(G)
    assert cor.space.dim == 2 and len(cor.blocks) == 2
    cor = coradical(A4)
    assert sorted(cor.labels()) == ["1", "g", "g^2", "g^3"]


def test_non_split_block_raises():
    # dual of Q(i) over Q: no group-likes over Q
    Q1 = CyclotomicField(1)
    delta = {0: [(0, 0, 1), (1, 1, -1)], 1: [(0, 1, 1), (1, 0, 1)]}
    C = make_coalgebra(Q1, ["a", "b"], delta, {0: 1})
    assert verify_coalgebra(C).ok
    with pytest.raises(NonSplitError):
        coradical(C)
    # over Q(i) the same coalgebra is pointed
    C4 = make_coalgebra(CyclotomicField(4), ["a", "b"], delta, {0: 1})
    assert len(coradical(C4).blocks) == 2


def test_filtration_lengths(H2, A4):
    chain, n = coradical_filtration(H2)
    assert n == 3 and chain[-1].dim == H2.dim
    assert [S.dim for S in chain] == sorted(S.dim for S in chain)
    assert coradical_filtration(group_coalgebra(["a", "b"]))[1] == 1
    assert coradical_filtration(A4)[1] == 2


def test_wedge_is_canonical(H2):
    cor = coradical(H2)
    a, b = cor.block("g").space, cor.block("C1").space
    assert wedge(a, b, H2).rows == wedge(a, b, H2).rows


@settings(max_examples=30)
@given(st.data())
def test_wedge_contains_sum_and_is_monotone(H2, data):
    cor = coradical(H2)
    blocks = [b.space for b in cor.blocks]
    picks = data.draw(st.lists(st.sampled_from(range(len(blocks))), min_size=1, max_size=3, unique=True))
    extra = data.draw(st.sampled_from(range(len(blocks))))
    A = blocks[picks[0]]
    for p in picks[1:]:
        A = A + blocks[p]
    B = blocks[extra]
    W = wedge(A, B, H2)
    assert (A + B) <= W
    assert is_subcoalgebra(W, H2)
    assert W <= wedge(A + B, B, H2) and W <= wedge(A, A + B, H2)
