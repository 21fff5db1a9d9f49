from itertools import permutations

import pytest

from corep.coalgebra import WindowEscape, coradical, group_coalgebra
from corep.comodule import simple_comodule, trivial_comodule
from corep.fusion import (BasedRing, check_associativity, check_decomposition, cyclic_group_ring,
                          fusion_ring_from_coalgebra, grothendieck_check, group_ring, is_central,
                          tensor_decompose, verify_based_ring)

WINDOW3 = ["1", "g", "C1", "C2", "C3", "C4"]


@pytest.fixture(scope="module")
def R4(H4):
    return fusion_ring_from_coalgebra(H4)


@pytest.fixture(scope="module")
def Rw(R4):
    return R4.restrict(WINDOW3)


def test_window_ring_axioms(Rw):
    rep = verify_based_ring(Rw)
    assert rep.ok, rep.lines()
    dim_check = next(c for c in rep.checks if c.name == "dimension homomorphism")
    assert "leave the window" in dim_check.detail
    assert check_associativity(Rw).ok


def test_closed_form_rules(R4):
    assert R4.product("C1", "C1") == {"1": 1, "g": 1, "C2": 1}
    for i in (2, 3):
        assert R4.product(f"C{i}", "C1") == {f"C{i - 1}": 1, f"C{i + 1}": 1}
    assert R4.product("1", "C3") == {"C3": 1}
    assert R4.mult({"C2": 1}, {"C1": 1}) == {"C1": 1, "C3": 1}
    # C_i C_j = C_|i-j| + C_{i+j} and C_i^2 = 1 + g + C_2i
    assert R4.product("C1", "C3") == {"C2": 1, "C4": 1}
    assert R4.product("C2", "C2") == {"1": 1, "g": 1, "C4": 1}
    assert R4.product("g", "C2") == {"C2": 1}


def test_escape_names_missing_label(Rw):
    with pytest.raises(WindowEscape, match="C5"):
        Rw.mult({"C4": 1}, {"C1": 1})
    assert Rw.product("C4", "C1", partial=True) == {"C3": 1}


def test_star_fixes_every_simple(R4):
    assert all(R4.star[b] == b for b in R4.basis)


def test_group_rings():
    Z2 = cyclic_group_ring(2)
    assert verify_based_ring(Z2).ok
    broken = BasedRing(Z2.basis, Z2.unit, Z2.dims, dict(Z2.alpha), Z2.star)
    broken.alpha["g", "g"] = {"1": 2}
    rep = verify_based_ring(broken)
    assert not rep.ok
    assert "tau-condition" in {c.name for c in rep.failures}


def test_ring_from_group_coalgebra():
    G = group_coalgebra(["1", "g", "g^2", "g^3"])
    object.__setattr__(G, "product", lambda i, j: {(i + j) % 4: G.field.one})
    R = fusion_ring_from_coalgebra(G, star={"1": "1", "g": "g^3", "g^2": "g^2", "g^3": "g"})
    assert R.alpha == cyclic_group_ring(4).alpha
    assert verify_based_ring(R).ok


def test_ring_from_A(A4):
    R = fusion_ring_from_coalgebra(A4)
    Z4 = cyclic_group_ring(4)
    assert R.basis == Z4.basis and R.alpha == Z4.alpha and R.star == Z4.star


def test_centrality(Rw):
    assert is_central(Rw, "C1") and is_central(Rw, "1") and is_central(Rw, "g")
    perms = list(permutations(range(3)))
    lab = {p: "".join(map(str, p)) for p in perms}
    comp = {(lab[p], lab[q]): lab[tuple(p[q[i]] for i in range(3))] for p in perms for q in perms}
    inv = {lab[p]: lab[tuple(sorted(range(3), key=lambda i: p[i]))] for p in perms}
    S3 = group_ring([lab[p] for p in perms], lambda a, b: comp[a, b], inv.get, "012")
    assert verify_based_ring(S3).ok
    assert is_central(S3, "012")
    assert not is_central(S3, "102")


def test_tensor_decompositions(H4):
    cor = coradical(H4)
    one, C1, C2 = (cor.block(x).matrix for x in ("1", "C1", "C2"))
    d = tensor_decompose(H4, one, C1, cor)
    assert d.labels == ["C1"] and d.L == [[1, 0], [0, 1]]
    d = tensor_decompose(H4, C1, C1, cor)
    assert d.multiset == {"1": 1, "g": 1, "C2": 1}
    assert sum(len(b) for b in d.blocks) == 4
    assert check_decomposition(H4, d)
    d = tensor_decompose(H4, C2, C1, cor)
    assert d.multiset == {"C1": 1, "C3": 1}
    assert check_decomposition(H4, d)


def test_ring_json_round_trip(Rw):
    R = BasedRing.from_json(Rw.to_json())
    assert R.alpha == Rw.alpha and R.star == Rw.star and R.dims == Rw.dims and R.escaped == Rw.escaped


def test_grothendieck_on_H2(H2):
    cor = coradical(H2)
    simples = [simple_comodule(H2, b, b.label) for b in cor.blocks]
    rep = grothendieck_check(H2, simples)
    assert rep.ok
    C1 = simple_comodule(H2, cor.block("C1"), "C1")
    rep = grothendieck_check(H2, [C1])
    assert set(rep.checks[0].detail.split(" + ")) == {"1", "g", "C2"}


def test_trivial_comodule_is_neutral(H2):
    cor = coradical(H2)
    k = trivial_comodule(H2, cor.block("1").matrix[0][0])
    C1 = simple_comodule(H2, cor.block("C1"), "C1")
    rep = grothendieck_check(H2, [k, C1])
    assert rep.ok
    details = {c.name: c.detail for c in rep.checks}
    assert details["k(x)k"] == "1" and details["k(x)C1"] == "C1"
