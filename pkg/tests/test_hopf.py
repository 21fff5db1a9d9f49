import pytest

from corep.coalgebra import coradical, verify_coalgebra
from corep.hopf import (ParameterError, TruncationError, antipode, build_A, build_Anq, build_Bmn,
                        build_Hefuv, build_Hinf, canonical_coset, delta, multiply, parse_descriptor,
                        truncate_coalgebra, verify_hopf_axioms)
from corep.report import StructuralError
from corep.scalar import Scalar


def test_A_rewriting():
    h = build_A(4, 2, 1, -1)
    g, x = h.gen("g"), h.gen("x")
    assert multiply(h, x, g) == h.scale(h.mul(g, x), -1)
    assert multiply(h, x, x) == h.sub(h.unit(), h.mul(g, g))
    # (gx)(gx) = -g^2 x^2 = -g^2 + g^4 = 1 - g^2
    gx = h.mul(g, x)
    assert h.mul(gx, gx) == h.sub(h.unit(), h.mul(g, g))
    assert truncate_coalgebra(h).dim == 8


def test_hefuv_rewriting(hefuv):
    h = hefuv
    assert h.mul(h.gen("e1"), h.gen("f3")) == {}
    u, v = h.gen("u"), h.gen("v")
    assert h.mul(u, v) == h.scale(h.mul(v, u), -1)
    assert h.mul(h.gen("e2"), u) == h.mul(u, h.gen("e2"))
    assert h.mul(h.gen("e1"), u) == h.scale(h.mul(u, h.gen("e1")), -1)
    g = h.grouplike_g()
    assert h.mul(g, g) == h.unit()
    assert h.mul(u, u) == {}


def test_hinf_rewriting():
    h = build_Hinf(1, 1)
    g, x = h.gen("g"), h.gen("x")
    g2 = h.mul(g, g)
    assert h.mul(x, g) == h.add(h.mul(g, x), g, h.scale(g2, -1))


def test_hefuv_structure_maps(hefuv):
    h = hefuv
    for i in (-2, 1, 3):
        e, f = f"e{i}", f"f{i}"
        want = h.tensor_add(h.tensor(h.gen(e), h.gen(e)), h.tensor(h.gen(f), h.gen(f"f{-i}")))
        assert delta(h, h.gen(e)) == want
    u, v = h.gen("u"), h.gen("v")
    want = h.scale(h.add(h.mul(u, h.gen("f1")), h.mul(v, h.gen("e1"))), -1)
    assert antipode(h, v) == want


def test_delta_uv_hand_expansion(hefuv):
    h = hefuv
    u, v, one = h.gen("u"), h.gen("v"), h.unit()
    E = h.gen
    hand = h.tensor_add(
        h.tensor(one, h.mul(u, v)),
        h.tensor(u, h.add(h.mul(u, E("f1")), h.mul(E("e1"), v))),
        h.tensor(v, h.add(h.mul(u, E("e-1")), h.mul(E("f-1"), v))),
        h.tensor(h.mul(u, v), h.mul(E("e1"), E("e-1"))),
        h.tensor(h.mul(v, u), h.mul(E("f-1"), E("f1"))),
    )
    assert delta(h, h.mul(u, v)) == hand


def test_hefuv_axioms_pass(hefuv):
    rep = verify_hopf_axioms(hefuv)
    assert rep.ok, rep.first_failure()
    steps = {c.name.split(":")[0] for c in rep.checks}
    assert {"Step 1", "Step 2", "Step 3", "Step 4"} <= steps


def test_hefuv_named_identities(hefuv):
    h = hefuv
    u, v = h.gen("u"), h.gen("v")
    du, dv = h.delta(u), h.delta(v)
    assert h.tensor_add(h.tensor_mul(du, dv), h.tensor_mul(dv, du)) == {}
    Su = h.antipode(u)
    assert h.mul(Su, Su) == {}
    # S(u) + u S(e1) + v S(f-1) = 0 = epsilon(u)
    total = h.add(Su, h.mul(u, h.antipode(h.gen("e1"))), h.mul(v, h.antipode(h.gen("f-1"))))
    assert total == {} and h.counit(u) == 0


def test_antipode_mutation_fails_step4(hefuv):
    h = hefuv
    bad = h.with_override("antipode", "u", h.scale(h.mul(h.gen("v"), h.gen("f-1")), -1))
    rep = verify_hopf_axioms(bad)
    failed = {c.name for c in rep.failures}
    assert any(n.startswith("Step 4") for n in failed)
    step4 = [c for c in rep.failures if c.name.startswith("Step 4")]
    assert all(c.detail for c in step4)  # residual printed
    assert verify_hopf_axioms(h).ok  # original untouched


@pytest.mark.parametrize("h", [
    build_A(4, 2, 1, -1), build_A(2, 2, 1, -1), build_A(4, 4, 0, Scalar.zeta(4)), build_A(6, 3, 1, Scalar.zeta(3)),
    build_Anq(3, Scalar.zeta(3)), build_Anq(2, -1),
    build_Hinf(1, 1), build_Hinf(2, 1), build_Hinf("t", 1),
    build_Bmn(2, 0, -1, 1, 0, 0), build_Bmn(1, -1, 1, 0, 0, 1), build_Bmn(2, 2, -1, 1, 1, 0), build_Bmn(0, 0, 1, 0, 0, 0),
], ids=repr)
def test_family_axioms(h):
    assert verify_hopf_axioms(h).ok


@pytest.mark.parametrize("build, args, msg", [
    (build_A, (4, 3, 1, Scalar.zeta(4, 2)), "divide"),
    (build_A, (4, 2, 1, Scalar.zeta(4)), "order exactly"),
    (build_Anq, (3, -1), "primitive"),
    (build_Hinf, (-1, 1), "root of unity"),
    (build_Bmn, (1, 1, 1, 0, 0, 0), "differ"),
    (build_Bmn, (2, 1, 1, 0, 0, 0), "even"),
    (build_Bmn, (2, 0, 0, 0, 0, 0), "nonzero"),
    (build_Bmn, (0, 0, Scalar.zeta(4), 1, 0, 0), r"s or t nonzero requires lambda\^2"),
    (build_Bmn, (2, 0, -1, 0, 0, 1), "lambda = 1"),
])
def test_parameter_constraints(build, args, msg):
    with pytest.raises(ParameterError, match=msg):
        build(*args)


def test_hinf_transcendental_and_rational_chi():
    h = build_Hinf("t", 1)
    assert "FunctionField" in repr(h.field)
    assert verify_hopf_axioms(build_Hinf(2, 3)).ok


def test_literal_window_is_not_closed(hefuv):
    with pytest.raises(TruncationError) as exc:
        truncate_coalgebra(hefuv, basis=hefuv.literal_window(2))
    assert len(hefuv.literal_window(2)) == 44
    assert "e2*uv" in str(exc.value)


def test_closed_window_dims(hefuv, H2):
    assert H2.dim == 48
    assert verify_coalgebra(H2).ok
    assert truncate_coalgebra(hefuv, 3).dim == 64


def test_dropping_boundary_simple_names_offender(hefuv):
    basis = [m for m in hefuv.window(2) if not (m[2] == 0 and abs(m[1]) == 3)]
    with pytest.raises(TruncationError) as exc:
        truncate_coalgebra(hefuv, basis=basis)
    assert "Delta(e2*u) has term e2*u(x)e3" in str(exc.value)
    assert "e2*u" in exc.value.offenders


@pytest.mark.parametrize("desc, N, dim", [
    ("A:n=4,d=2,mu=1,q=-1", None, 8),
    ("Anq:n=2,q=-1", 2, 9),
    ("Hinf:chi=2,lambda=1", 2, 15),
    ("B:m=2,n=0,lambda=-1,s=1", 2, 36),
])
def test_family_truncations(desc, N, dim):
    C = truncate_coalgebra(parse_descriptor(desc), N)
    assert C.dim == dim
    assert verify_coalgebra(C).ok


def test_truncations_are_pointed_except_hefuv(H2):
    C = truncate_coalgebra(parse_descriptor("Hinf:chi=1,lambda=1"), 2)
    assert all(b.size == 1 for b in coradical(C).blocks)
    assert {b.size for b in coradical(H2).blocks} == {1, 2}


def test_parse_descriptor():
    h = parse_descriptor("A:n=4,d=2,mu=1,q=zeta4^2")
    assert h.family == "A" and h.descriptor == "A:n=4,d=2,mu=1,q=-1"
    assert parse_descriptor("Hefuv").family == "Hefuv"
    assert parse_descriptor("Bmn:m=0,n=2,lambda=1").family == "B"
    for bad in ("Z:n=3", "A:n=4,d=2", "A:n=four,d=2,mu=1,q=-1", "A:n=4;d=2"):
        with pytest.raises(StructuralError):
            parse_descriptor(bad)


def test_canonical_coset():
    for m, n in [(2, 0), (-2, 4), (0, -3), (3, 3), (0, 0)]:
        for a in range(-5, 6):
            for b in range(-5, 6):
                r = canonical_coset(a, b, m, n)
                assert canonical_coset(*r, m, n) == r
                da, db = a - r[0], b - r[1]
                assert da * -n == db * m  # difference lies on the line spanned by (m, -n)
                if m:
                    assert 0 <= r[0] < abs(m)
