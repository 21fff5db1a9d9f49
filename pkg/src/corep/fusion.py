"""Based (fusion) rings of cosemisimple coalgebras.

The product of two simple subcoalgebras B, C with basic multiplicative
matrices is read off by block-diagonalising B (.)' C, the matrix with blocks
``B * c_kl``.  We treat that matrix as the coaction of a comodule and split it
with the coradical's matrix units (see :func:`corep.comodule.decompose_semisimple`).

Windows: for infinite families only finitely many simples are available.
Products that leave the window are recorded as escapes rather than dropped.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .coalgebra import Coalgebra, Coradical, WindowEscape, coradical, is_multiplicative
from .comodule import (Comodule, coefficient_coalgebra, conjugate, decompose_semisimple,
                       from_matrix, multiset, tensor)
from .linalg import Vec, span
from .report import Report, StructuralError


@dataclass
class BasedRing:
    basis: tuple
    unit: str
    dims: dict
    alpha: dict  # (i, j) -> {t: n}, in-window part of b_i b_j
    star: dict
    escaped: dict = field(default_factory=dict)  # (i, j) -> labels outside the window

    def known(self, i: str, j: str) -> bool:
        return (i, j) in self.alpha

    def complete(self, i: str, j: str) -> bool:
        return (i, j) in self.alpha and not self.escaped.get((i, j))

    def coeff(self, i: str, j: str, t: str) -> int:
        if (i, j) not in self.alpha:
            raise WindowEscape(f"product {i}*{j} is not available in this window")
        return self.alpha[i, j].get(t, 0)

    def product(self, i: str, j: str, partial: bool = False) -> dict:
        if (i, j) not in self.alpha:
            raise WindowEscape(f"product {i}*{j} is not available in this window")
        missing = self.escaped.get((i, j))
        if missing and not partial:
            raise WindowEscape(f"product {i}*{j} leaves the window: missing {', '.join(missing)}")
        return dict(self.alpha[i, j])

    def mult(self, a: dict, b: dict, partial: bool = False) -> dict:
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                for t, n in self.product(i, j, partial).items():
                    out[t] = out.get(t, 0) + x * y * n
        return {t: n for t, n in sorted(out.items(), key=lambda kv: self.basis.index(kv[0])) if n}

    def restrict(self, labels) -> "BasedRing":
        """The window on ``labels``; coefficients outside become escapes."""
        labels = tuple(labels)
        keep = set(labels)
        alpha, escaped = {}, {}
        for (i, j), prod in self.alpha.items():
            if i in keep and j in keep:
                alpha[i, j] = {t: n for t, n in prod.items() if t in keep}
                out = sorted(set(t for t in prod if t not in keep) | set(self.escaped.get((i, j), ())))
                if out:
                    escaped[i, j] = tuple(out)
        return BasedRing(labels, self.unit, {k: self.dims[k] for k in labels}, alpha,
                         {k: self.star[k] for k in labels}, escaped)

    def to_json(self) -> dict:
        idx = {lab: n for n, lab in enumerate(self.basis)}
        data = {
            "basis": list(self.basis),
            "unit": idx[self.unit],
            "dims": [self.dims[b] for b in self.basis],
            "alpha": [[idx[i], idx[j], idx[t], n]
                      for (i, j), prod in sorted(self.alpha.items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]]))
                      for t, n in sorted(prod.items(), key=lambda kv: idx[kv[0]])],
            "star": [idx[self.star[b]] for b in self.basis],
        }
        if self.escaped:
            data["escaped"] = [[idx[i], idx[j], list(ls)] for (i, j), ls in sorted(
                self.escaped.items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]]))]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "BasedRing":
        try:
            basis = tuple(str(b) for b in data["basis"])
            n = len(basis)

            def lab(i):
                if not (isinstance(i, int) and 0 <= i < n):
                    raise StructuralError(f"based ring index {i} out of range 0..{n - 1}")
                return basis[i]

            alpha: dict = {}
            for i, j, t, c in data["alpha"]:
                alpha.setdefault((lab(i), lab(j)), {})[lab(t)] = int(c)
            if "products" in data:
                for i, j in data["products"]:
                    alpha.setdefault((lab(i), lab(j)), {})
            escaped = {(lab(i), lab(j)): tuple(ls) for i, j, ls in data.get("escaped", [])}
            return cls(basis, lab(data["unit"]), dict(zip(basis, (int(d) for d in data["dims"]))),
                       alpha, {b: lab(s) for b, s in zip(basis, data["star"])}, escaped)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, StructuralError):
                raise
            raise StructuralError(f"malformed based ring data: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def table(self) -> list[str]:
        lines = []
        for i in self.basis:
            for j in self.basis:
                if (i, j) not in self.alpha:
                    continue
                prod = self.alpha[i, j]
                text = " + ".join((t if n == 1 else f"{n}{t}") for t, n in prod.items()) or "0"
                if self.escaped.get((i, j)):
                    text += " + [" + ", ".join(self.escaped[i, j]) + " outside window]"
                lines.append(f"{i}*{j} = {text}")
        return lines


def group_ring(elements, mul, inverse, unit) -> BasedRing:
    """Z[G] on a finite group given by its multiplication and inverse."""
    elements = tuple(elements)
    alpha = {(a, b): {mul(a, b): 1} for a in elements for b in elements}
    return BasedRing(elements, unit, {e: 1 for e in elements}, alpha, {e: inverse(e) for e in elements})


def cyclic_group_ring(n: int) -> BasedRing:
    labels = ["1"] + [("g" if k == 1 else f"g^{k}") for k in range(1, n)]
    return group_ring(labels, lambda a, b: labels[(labels.index(a) + labels.index(b)) % n],
                      lambda a: labels[(-labels.index(a)) % n], "1")


def verify_based_ring(R: BasedRing) -> Report:
    """Unit law, tau-condition, * anti-automorphism, dimension homomorphism.

    Products that leave the window are checked on their in-window part where
    that is meaningful (unit, tau, *) and flagged for the dimension count.
    """
    rep = Report("based ring axioms")
    one = R.unit
    bad = [j for j in R.basis if R.known(one, j) and R.product(one, j, True) != {j: 1}]
    bad += [j for j in R.basis if R.known(j, one) and R.product(j, one, True) != {j: 1}]
    rep.add("unit law", not bad, ", ".join(sorted(set(bad))))
    inv = [i for i in R.basis if R.star.get(R.star.get(i)) != i]
    rep.add("* is an involution", not inv, ", ".join(inv))
    bad = []
    for (i, j), prod in R.alpha.items():
        want = 1 if j == R.star[i] else 0
        if prod.get(one, 0) != want:
            bad.append(f"{i}*{j}")
    rep.add("tau-condition", not bad, ", ".join(bad[:5]))
    bad = []
    for (i, j), prod in R.alpha.items():
        key = (R.star[j], R.star[i])
        if key not in R.alpha:
            continue
        other = R.alpha[key]
        for t in R.basis:
            if prod.get(t, 0) != other.get(R.star[t], 0):
                bad.append(f"{i}*{j} at {t}")
                break
    rep.add("* anti-automorphism", not bad, ", ".join(bad[:5]))
    bad, skipped = [], 0
    for (i, j), prod in R.alpha.items():
        if R.escaped.get((i, j)):
            skipped += 1
            continue
        if sum(n * R.dims[t] for t, n in prod.items()) != R.dims[i] * R.dims[j]:
            bad.append(f"{i}*{j}")
    rep.add("dimension homomorphism", not bad,
            ", ".join(bad[:5]) or (f"{skipped} products leave the window (flagged, not checked)" if skipped else ""))
    missing = [f"{i}*{j}" for i in R.basis for j in R.basis if (i, j) not in R.alpha]
    if missing:
        rep.add("window coverage", True, f"{len(missing)} products not computable in this window")
    return rep


def check_associativity(R: BasedRing) -> Report:
    """(ab)c = a(bc) on every triple whose products stay in the window."""
    rep = Report("associativity")
    bad, checked = [], 0
    for a in R.basis:
        for b in R.basis:
            for c in R.basis:
                try:
                    left = R.mult(R.mult({a: 1}, {b: 1}), {c: 1})
                    right = R.mult({a: 1}, R.mult({b: 1}, {c: 1}))
                except WindowEscape:
                    continue
                checked += 1
                if left != right:
                    bad.append(f"({a}{b}){c}")
    rep.add("associativity", not bad, ", ".join(bad[:5]) or f"{checked} triples")
    return rep


def is_central(R: BasedRing, a: str) -> bool:
    """a*b = b*a for every basis b (in-window parts and escapes must both agree)."""
    for b in R.basis:
        if not (R.known(a, b) and R.known(b, a)):
            raise WindowEscape(f"cannot compare {a}*{b} and {b}*{a} in this window")
        if R.alpha[a, b] != R.alpha[b, a] or R.escaped.get((a, b)) != R.escaped.get((b, a)):
            return False
    return True


# -- from a coalgebra ------------------------------------------------------

def odot_prime(C: Coalgebra, A, B) -> list[list[Vec]]:
    """A (.)' B: block (k, l) is A * b_kl, i.e. entry ((k, i), (l, j)) = a_ij b_kl."""
    r, s = len(A), len(A[0])
    u, v = len(B), len(B[0])
    out = [[{} for _ in range(s * v)] for _ in range(r * u)]
    for k in range(u):
        for l in range(v):
            b = B[k][l]
            if not b:
                continue
            for i in range(r):
                for j in range(s):
                    if A[i][j]:
                        out[k * r + i][l * s + j] = C.mul(A[i][j], b)
    return out


@dataclass
class TensorDecomposition:
    labels: list
    L: list
    blocks: list
    matrix: list  # B (.)' C

    @property
    def multiset(self) -> dict:
        return multiset(self.labels)


def tensor_decompose(C: Coalgebra, Bmat, Cmat, cor: Coradical | None = None) -> TensorDecomposition:
    """Block-diagonalise B (.)' C: L (B (.)' C) L^-1 = diag(E_1, ..., E_t)."""
    cor = cor or coradical(C)
    G = odot_prime(C, Bmat, Cmat)
    M = from_matrix(C, G, "B(.)'C")
    dec = decompose_semisimple(M, cor)
    return TensorDecomposition(dec.labels, dec.L, dec.blocks, G)


def check_decomposition(C: Coalgebra, dec: TensorDecomposition) -> bool:
    """Conjugate by L and confirm the result is block diagonal with multiplicative blocks."""
    M = from_matrix(C, dec.matrix)
    from .linalg import mat_inv
    H = conjugate(M, mat_inv(dec.L))
    pos = 0
    bounds = []
    for blk in dec.blocks:
        bounds.append((pos, pos + len(blk)))
        pos += len(blk)
    owner = {}
    for n, (lo, hi) in enumerate(bounds):
        for x in range(lo, hi):
            owner[x] = n
    for a in range(len(H)):
        for b in range(len(H)):
            if H[a][b] and owner[a] != owner[b]:
                return False
    for lo, hi in bounds:
        sub = [[H[a][b] for b in range(lo, hi)] for a in range(lo, hi)]
        if not is_multiplicative(sub, C):
            return False
    return True


def antipode_permutation(C: Coalgebra, cor: Coradical | None = None) -> dict:
    """The permutation C -> S(C) of simple blocks, from the antipode of the family."""
    from .hopf import element_to_vec

    h = getattr(C, "hopf", None)
    if h is None:
        raise StructuralError("antipode permutation needs a truncation of a presented Hopf algebra")
    cor = cor or coradical(C)
    out = {}
    for b in cor.blocks:
        x = b.matrix[0][0]
        elem = {}
        for i, c in x.items():
            for m, v in h.antipode(h.mono(C.monomials[i])).items():
                elem[m] = elem.get(m, 0) + c * v
        elem = {m: c for m, c in elem.items() if c}
        out[b.label] = cor.find(element_to_vec(C, elem)).label
    return out


def fusion_ring_from_coalgebra(C: Coalgebra, star: dict | None = None, labels=None,
                               cor: Coradical | None = None) -> BasedRing:
    """Based ring of the simple blocks of C via tensor decomposition.

    ``labels`` selects the window (default: every simple block).  Products
    whose entries leave the truncation are left out; coefficients on simples
    outside ``labels`` become escapes.
    """
    cor = cor or coradical(C)
    blocks = {b.label: b for b in cor.blocks}
    labels = tuple(labels) if labels is not None else tuple(cor.labels())
    if star is None:
        star = antipode_permutation(C, cor)
    unit = next((b.label for b in cor.blocks if b.size == 1 and _is_unit(C, b)), None)
    if unit is None:
        raise StructuralError("no unit block (counit-one group-like fixed by multiplication) found")
    alpha, escaped = {}, {}
    for i in labels:
        for j in labels:
            try:
                dec = tensor_decompose(C, blocks[i].matrix, blocks[j].matrix, cor)
            except WindowEscape:
                continue
            ms = dec.multiset
            alpha[i, j] = {t: n for t, n in ms.items() if t in labels}
            out = tuple(sorted(t for t in ms if t not in labels))
            if out:
                escaped[i, j] = out
    order = sorted((lab for lab in cor.labels() if lab in labels),
                   key=lambda lab: (lab != unit, blocks[lab].size, natural_key(lab)))
    alpha = {k: dict(sorted(v.items(), key=lambda kv: order.index(kv[0]))) for k, v in alpha.items()}
    return BasedRing(tuple(order), unit, {b: blocks[b].size for b in order}, alpha,
                     {b: star[b] for b in order}, escaped)


def natural_key(label: str):
    """Sort key treating digit runs as integers (C2 < C10, g^-1 < g^2)."""
    return [(0, int(p), "") if p.lstrip("-").isdigit() else (1, 0, p)
            for p in re.split(r"(-?\d+)", label) if p]


def _is_unit(C: Coalgebra, block) -> bool:
    g = block.matrix[0][0]
    if C.product is None:
        return False
    try:
        return all(C.mul(g, {i: C.field.one}) == {i: C.field.one} for i in range(C.dim))
    except WindowEscape:
        return False


# -- Grothendieck correspondence ------------------------------------------------

def grothendieck_check(C: Coalgebra, comodules: list[Comodule], R: BasedRing | None = None,
                       cor: Coradical | None = None) -> Report:
    """cf(V_i (x) V_j) = cf(V_i) cf(V_j), with simple content matching the ring."""
    cor = cor or coradical(C)
    rep = Report("Grothendieck correspondence")
    for Vi in comodules:
        for Vj in comodules:
            name = f"{Vi.name}(x){Vj.name}"
            try:
                T = tensor(Vi, Vj)
            except WindowEscape:
                rep.add(name, True, "leaves the window (skipped)")
                continue
            cf = coefficient_coalgebra(T)
            a, b = coefficient_coalgebra(Vi), coefficient_coalgebra(Vj)
            prod = span([C.mul(x, y) for x in a.basis() for y in b.basis()], C.dim)
            ok = cf == prod
            contained = sorted(blk.label for blk in cor.blocks if cf.contains_space(blk.space))
            ms = multiset(decompose_semisimple(T, cor).labels)
            ok = ok and contained == sorted(ms)
            detail = " + ".join(f"{n}{t}" if n > 1 else t for t, n in ms.items())
            if R is not None:
                li, lj = _single_label(Vi, cor), _single_label(Vj, cor)
                if li and lj and R.complete(li, lj):
                    ok = ok and R.alpha[li, lj] == {t: n for t, n in ms.items()}
            rep.add(name, ok, detail)
    return rep


def _single_label(V: Comodule, cor: Coradical):
    cf = coefficient_coalgebra(V)
    for b in cor.blocks:
        if b.space == cf:
            return b.label
    return None
