"""Seeded randomized suites over every presented family."""
import random

import pytest

from corep.config import PROPERTIES
from corep.fusion import cyclic_group_ring, fusion_ring_from_coalgebra, verify_based_ring
from corep.hopf import build_A, build_Anq, build_Bmn, build_Hefuv, build_Hinf, truncate_coalgebra
from corep.scalar import Scalar

FAMILIES = {
    "A": lambda: build_A(4, 2, 1, -1),
    "A6": lambda: build_A(6, 3, 1, Scalar.zeta(3)),
    "Anq": lambda: build_Anq(3, Scalar.zeta(3)),
    "Hinf": lambda: build_Hinf("t", 1),
    "B": lambda: build_Bmn(2, 0, -1, 1, 0, 0),
    "B11": lambda: build_Bmn(1, -1, 1, 0, 0, 1),
    "Hefuv": build_Hefuv,
}

CONFLUENCE_TRIPLES = PROPERTIES.confluence_triples
BIALGEBRA_PAIRS = PROPERTIES.bialgebra_pairs
ANTIPODE_SAMPLES = PROPERTIES.antipode_samples


def random_element(h, rng, terms=3):
    x = {}
    for _ in range(rng.randint(1, terms)):
        x = h.add(x, h.scale(h.mono(h.sample_monomial(rng)), rng.randint(-3, 3)))
    return x


@pytest.fixture(scope="module", params=sorted(FAMILIES))
def family(request):
    return FAMILIES[request.param]()


def test_rewriting_confluence(family):
    h, rng = family, random.Random(1)
    for _ in range(CONFLUENCE_TRIPLES):
        a, b, c = (h.mono(h.sample_monomial(rng)) for _ in range(3))
        left = h.mul(a, h.mul(b, c))
        assert left == h.mul(h.mul(a, b), c)
        # reducing the concatenated word in one pass lands on the same normal form
        word = sum((h.word(m) for x in (a, b, c) for m in x), [])
        assert h.eval_word(word) == left


def test_bialgebra_compatibility(family):
    h, rng = family, random.Random(2)
    for _ in range(BIALGEBRA_PAIRS):
        a, b = random_element(h, rng), random_element(h, rng)
        ab = h.mul(a, b)
        assert h.delta(ab) == h.tensor_mul(h.delta(a), h.delta(b))
        assert h.counit(ab) == h.counit(a) * h.counit(b)


def _convolve(h, t, left):
    out = {}
    for (a, b), c in t.items():
        x, y = h.mono(a), h.mono(b)
        out = h.add(out, h.scale(h.mul(h.antipode(x), y) if left else h.mul(x, h.antipode(y)), c))
    return out


def test_antipode_on_random_elements():
    h, rng = build_Hefuv(), random.Random(3)
    for _ in range(ANTIPODE_SAMPLES):
        x = random_element(h, rng)
        want = h.scale(h.unit(), h.counit(x))
        assert _convolve(h, h.delta(x), True) == want
        assert _convolve(h, h.delta(x), False) == want


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_antipode_all_families(name):
    h, rng = FAMILIES[name](), random.Random(4)
    for _ in range(40):
        x = random_element(h, rng)
        want = h.scale(h.unit(), h.counit(x))
        assert _convolve(h, h.delta(x), True) == want


WINDOW_RINGS = [
    ("A", None), ("A6", None), ("Anq", 2), ("Hinf", 2), ("B", 1), ("B11", 1), ("Hefuv", 2), ("Hefuv", 3),
]


@pytest.mark.parametrize("name,N", WINDOW_RINGS)
def test_based_ring_axioms_on_window_rings(name, N):
    h = FAMILIES[name]()
    R = fusion_ring_from_coalgebra(truncate_coalgebra(h, N))
    rep = verify_based_ring(R)
    assert rep.ok, rep.first_failure()


@pytest.mark.parametrize("n", [1, 2, 5, 6])
def test_based_ring_axioms_cyclic(n):
    assert verify_based_ring(cyclic_group_ring(n)).ok
