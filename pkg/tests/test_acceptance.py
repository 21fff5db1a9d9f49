"""Acceptance gate: ten criteria, exact, each under its time budget.

A one-line [PASS]/[FAIL] summary per criterion is printed at the end of the
session (see ``pytest_terminal_summary`` in conftest).
"""
import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from corep import comodule as com
from corep.config import PROPERTIES
from corep.coalgebra import coradical, coradical_filtration
from corep.fusion import (BasedRing, fusion_ring_from_coalgebra, grothendieck_check, tensor_decompose,
                          verify_based_ring)
from corep.hopf import build_A, build_Hefuv, truncate_coalgebra, verify_hopf_axioms
from corep.quiver import (KIND_OF_SPECTRAL, Quiver, classify_ade, discreteness_check_finite_coradical,
                          graph, is_basic_cycle_union, is_schurian, link_quiver_from_coalgebra,
                          link_quiver_from_fusion, separated_quiver, spectral_class, trichotomy_classify)
from corep.scalar import Scalar, cyclotomic_poly

RESULTS: list[str] = []


def _record(k, ok, budget, elapsed, detail):
    tag = "PASS" if ok else "FAIL"
    RESULTS.append(f"[{tag}] criterion {k}: {detail} ({elapsed:.1f}s / {budget}s)")


def run_criterion(k, budget, body):
    start = time.perf_counter()
    try:
        detail = body()
    except Exception as exc:
        _record(k, False, budget, time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    _record(k, elapsed < budget, budget, elapsed, detail)
    assert elapsed < budget, f"criterion {k} took {elapsed:.1f}s (budget {budget}s)"


@pytest.fixture(scope="module")
def h():
    return build_Hefuv()


# 1 ---------------------------------------------------------------------------------

def test_criterion_1_hopf_axioms(h):
    def body():
        rep = verify_hopf_axioms(h)
        assert rep.ok, rep.first_failure()
        steps = {}
        for c in rep.checks:
            steps.setdefault(c.name.split(":")[0], []).append(c)
        assert {f"Step {i}" for i in (1, 2, 3, 4)} <= set(steps)
        u, v = h.gen("u"), h.gen("v")
        du, dv = h.delta(u), h.delta(v)
        assert h.tensor_add(h.tensor_mul(du, dv), h.tensor_mul(dv, du)) == {}
        assert h.mul(h.antipode(u), h.antipode(u)) == {}
        assert len(steps["Step 4"]) >= 8
        return f"Hefuv Steps 1-4 exact ({len(rep.checks)} identities)"
    run_criterion(1, 5, body)


# 2 ---------------------------------------------------------------------------------

def test_criterion_2_fusion_rules(h):
    def body():
        H4 = truncate_coalgebra(h, 4)
        cor = coradical(H4)
        M = {b.label: b.matrix for b in cor.blocks}
        assert tensor_decompose(H4, M["C1"], M["C1"], cor).multiset == {"1": 1, "g": 1, "C2": 1}
        for i in (2, 3):
            d = tensor_decompose(H4, M[f"C{i}"], M["C1"], cor)
            assert d.multiset == {f"C{i - 1}": 1, f"C{i + 1}": 1}
        return "C1C1 = 1+g+C2, C2C1 = C1+C3, C3C1 = C2+C4 on H^4"
    run_criterion(2, 30, body)


# 3 ---------------------------------------------------------------------------------

def hefuv_figure():
    labels = ["1", "g", "C1", "C2", "C3", "C4"]
    q = Quiver({v: (2 if v.startswith("C") else 1) for v in labels})
    for a, b in [("1", "C1"), ("g", "C1"), ("C1", "C2"), ("C2", "C3"), ("C3", "C4")]:
        q.add_arrow(a, b)
        q.add_arrow(b, a)
    return q


def test_criterion_3_link_quiver_routes(h):
    def body():
        Q = link_quiver_from_coalgebra(truncate_coalgebra(h, 3))
        R = fusion_ring_from_coalgebra(truncate_coalgebra(h, 4)).restrict(list(Q.vertices))
        Qf = link_quiver_from_fusion(R, [("C1", 1)])
        assert Q == Qf == hefuv_figure()
        assert set(Q.arrows.values()) == {1} and is_schurian(Q)
        return f"both routes give the chain with g ({len(Q.arrows)} arrows, Schurian)"
    run_criterion(3, 60, body)


# 4 ---------------------------------------------------------------------------------

A_CASES = [(n, d, q, mu) for (n, d, q) in ((2, 2, -1), (4, 2, -1), (4, 4, Scalar.zeta(4))) for mu in (0, 1)]


@pytest.mark.parametrize("n,d,q,mu", A_CASES, ids=lambda x: str(x))
def test_criterion_4_finite_coradical_pipeline(n, d, q, mu):
    def body():
        Q = link_quiver_from_coalgebra(truncate_coalgebra(build_A(n, d, mu, q)))
        assert is_basic_cycle_union(Q) and len(Q.vertices) == n and len(Q.arrows) == n
        v = discreteness_check_finite_coradical(Q)
        assert v.verdict == "discrete" and all(v.conditions[c] for c in (2, 3, 4))
        return f"A(n={n},d={d},mu={mu}): {n}-cycle, discrete"
    run_criterion(4, 30, body)


# 5 ---------------------------------------------------------------------------------

def test_criterion_5_ade_vs_spectral():
    def body():
        import numpy as np

        count, seven = 0, 0
        for G in nx.graph_atlas_g()[1:]:
            if not nx.is_connected(G):
                continue
            g = graph(sorted(G.nodes), list(G.edges))
            (cls,) = classify_ade(g)
            exact = spectral_class(g)
            assert cls.kind == KIND_OF_SPECTRAL[exact], (list(G.edges), cls.name, exact)
            # floating-point sanity check of the exact oracle
            rho = max(abs(np.linalg.eigvalsh(nx.to_numpy_array(G)))) if len(G) > 1 else 0.0
            assert exact == ("=2" if abs(rho - 2) < 1e-9 else "<2" if rho < 2 else ">2")
            count += 1
            seven += len(G) == 7
        # connected graphs on exactly 1..7 vertices: 1, 1, 2, 6, 21, 112, 853
        assert count == 996 and seven == 853
        d5 = graph(range(6), [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)])
        (c,) = classify_ade(d5)
        assert c.kind == "euclidean" and c.name == "~D_5" and spectral_class(d5) == "=2"
        return f"{count} connected graphs on <= 7 vertices ({seven} on 7) agree; ~D_5 Euclidean"
    run_criterion(5, 120, body)


# 6 ---------------------------------------------------------------------------------

def test_criterion_6_separated_quivers():
    def body():
        for n in range(1, 9):
            q = Quiver({f"v{i}" if i else "1": 1 for i in range(n)})
            names = list(q.vertices)
            for i in range(n):
                q.add_arrow(names[i], names[(i + 1) % n])
            classes = classify_ade(separated_quiver(q))
            assert len(classes) == n and all(c.name == "A_2" for c in classes)
        kinds = {}
        for mult in (2, 3):
            q = Quiver({"1": 1, "g": 1})
            q.add_arrow("1", "g", mult)
            kinds[mult] = [c for c in classify_ade(separated_quiver(q)) if c.kind != "dynkin"]
        assert [c.name for c in kinds[2]] == ["~A_1"]
        assert [c.kind for c in kinds[3]] == ["beyond"]
        return "cycles n<=8 give n x A_2; Kronecker Euclidean; triple arrows beyond"
    run_criterion(6, 5, body)


# 7 ---------------------------------------------------------------------------------

def test_criterion_7_trichotomy():
    def body():
        table = [((1, [1]), "case1"), ((2, [1, 1]), "case2"), ((1, [4]), "case3"),
                 ((3, [1]), "not_discrete"), ((3, [4]), "not_discrete"), ((1, [9]), "not_discrete")]
        for args, want in table:
            assert trichotomy_classify(*args).case == want, args
        assert "large-simple" in trichotomy_classify(1, [9]).reason
        return "table matches; (1,{9}) cites the large-simple lemma"
    run_criterion(7, 1, body)


# 8 ---------------------------------------------------------------------------------

def test_criterion_8_comodules(h):
    def body():
        H2 = truncate_coalgebra(h, 2)
        P = com.build_paper_comodules(H2, ks=(1, 2, 5))
        for name in ("U", "V", "W(1)", "W(2)"):
            assert com.verify_comodule(P[name]).ok, name
            E = com.end_analysis(P[name])
            assert E.top_dim == 1 and com.is_abs_indecomposable(P[name]), name
        for k in (1, 2, 5):
            for l in (1, 2, 5):
                F = com.are_isomorphic(P[f"W({k})"], P[f"W({l})"])
                assert F is not None and com.is_isomorphism(P[f"W({k})"], P[f"W({l})"], F)
            assert com.loewy_length(P[f"W({k})"]) == 2
        assert com.loewy_length(com.hefuv_v0(truncate_coalgebra(h, 1))) == 3
        chain, length = coradical_filtration(H2)
        assert length == 3
        return "U, V, W(1), W(2) indecomposable; W(k) ~ W(l); Loewy 2 and 3; H^2 filtration length 3"
    run_criterion(8, 60, body)


# 9 ---------------------------------------------------------------------------------

def rules_ring(top: int) -> BasedRing:
    """Ring on 1, g, C1..C_top from the closed-form Hefuv fusion rules."""
    labels = ["1", "g"] + [f"C{i}" for i in range(1, top + 1)]
    alpha, escaped = {}, {}

    def idx(x):
        return 0 if x in ("1", "g") else int(x[1:])

    for a in labels:
        for b in labels:
            i, j = idx(a), idx(b)
            if not i and not j:
                prod = {"1": 1} if a == b else {"g": 1}
            elif not i or not j:
                prod = {f"C{i or j}": 1}
            elif i == j:
                prod = {"1": 1, "g": 1, f"C{2 * i}": 1}
            else:
                prod = {f"C{abs(i - j)}": 1, f"C{i + j}": 1}
            alpha[a, b] = {t: n for t, n in prod.items() if t in labels}
            if len(alpha[a, b]) < len(prod):
                escaped[a, b] = sorted(t for t in prod if t not in labels)
    dims = {x: (2 if x.startswith("C") else 1) for x in labels}
    return BasedRing(tuple(labels), "1", dims, alpha, {x: x for x in labels}, escaped)


def test_criterion_9_grothendieck(h):
    def body():
        window = list(link_quiver_from_coalgebra(truncate_coalgebra(h, 3)).vertices)
        # coradical-only span wide enough to hold every product of window simples
        K = truncate_coalgebra(h, basis=[(c, i, 0) for c in (0, 1) for i in range(-8, 9)])
        cor = coradical(K)
        R = rules_ring(8)
        assert verify_based_ring(R).ok
        for a in window:
            for b in window:
                assert R.complete(a, b)
        computed = fusion_ring_from_coalgebra(K, cor=cor)
        assert all(computed.alpha[a, b] == R.alpha[a, b] for a in window for b in window)
        simples = [com.simple_comodule(K, cor.block(x), x) for x in window]
        rep = grothendieck_check(K, simples, R=R, cor=cor)
        assert rep.ok, rep.first_failure()
        assert len(rep.checks) == len(window) ** 2
        return f"{len(rep.checks)} ordered pairs of H^3 window simples match the ring"
    run_criterion(9, 60, body)


# 10 --------------------------------------------------------------------------------

def _scalar_axioms(samples):
    rng = random.Random(10)
    for _ in range(samples):
        n = rng.choice([1, 3, 4, 5, 8, 12])
        deg = len(cyclotomic_poly(n)) - 1

        def s():
            return Scalar([Fraction(rng.randint(-5, 5), rng.randint(1, 7)) for _ in range(deg)], n)

        a, b, c = s(), s(), s()
        assert (a + b) + c == a + (b + c) and a + b == b + a
        assert (a * b) * c == a * (b * c) and a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0 and a * 1 == a
        if a != 0:
            assert a * a.inverse() == 1


def test_criterion_10_property_suites():
    from test_properties import (ANTIPODE_SAMPLES, BIALGEBRA_PAIRS, CONFLUENCE_TRIPLES, FAMILIES,
                                 WINDOW_RINGS, random_element)

    def body():
        for name, make in FAMILIES.items():
            hh, rng = make(), random.Random(hash(name) % 1000)
            for _ in range(CONFLUENCE_TRIPLES):
                a, b, c = (hh.mono(hh.sample_monomial(rng)) for _ in range(3))
                assert hh.mul(a, hh.mul(b, c)) == hh.mul(hh.mul(a, b), c), name
            for _ in range(BIALGEBRA_PAIRS):
                a, b = random_element(hh, rng), random_element(hh, rng)
                assert hh.delta(hh.mul(a, b)) == hh.tensor_mul(hh.delta(a), hh.delta(b)), name
        hh, rng = FAMILIES["Hefuv"](), random.Random(11)
        for _ in range(ANTIPODE_SAMPLES):
            x = random_element(hh, rng)
            out = {}
            for (a, b), c in hh.delta(x).items():
                out = hh.add(out, hh.scale(hh.mul(hh.antipode(hh.mono(a)), hh.mono(b)), c))
            assert out == hh.scale(hh.unit(), hh.counit(x))
        for name, N in WINDOW_RINGS:
            assert verify_based_ring(fusion_ring_from_coalgebra(truncate_coalgebra(FAMILIES[name](), N))).ok
        _scalar_axioms(PROPERTIES.scalar_samples)
        return (f"{CONFLUENCE_TRIPLES} triples and {BIALGEBRA_PAIRS} pairs per family, "
                f"{len(WINDOW_RINGS)} window rings, 1000 scalar samples")
    run_criterion(10, 120, body)
