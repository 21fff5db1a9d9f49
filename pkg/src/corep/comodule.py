"""Finite-dimensional right comodules over structure-constant coalgebras.

A comodule of dimension m is stored by its coaction matrix ``G`` (m x m,
entries are coalgebra vectors) with ``rho(m_i) = sum_j m_j (x) G[j][i]``.  The
comodule axioms are exactly the statement that ``G`` is multiplicative, though
not necessarily basic.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .algebra import Algebra
from .coalgebra import (Coalgebra, Coradical, coradical, coradical_filtration, is_subcoalgebra,
                        outer, restrict)
from .linalg import Echelon, Subspace, Vec, axpy, det, kernel, mat_inv, span
from .report import Report, StructuralError

Matrix = list  # list of rows of Vec


@dataclass(frozen=True, eq=False)
class Comodule:
    coalgebra: Coalgebra
    matrix: tuple  # matrix[j][i]: coefficient of m_j in rho(m_i)
    name: str = ""
    vectors: tuple | None = field(default=None, repr=False)  # ambient vectors when built from a coideal

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def rho(self) -> list[tuple]:
        """Coaction as ``(i, j, k, c)``: rho(m_i) contains ``c * m_j (x) b_k``."""
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in sorted(self.matrix[j][i].items()):
                    out.append((i, j, k, c))
        return out

    def to_json(self) -> dict:
        fmt = self.coalgebra.field.format
        return {
            "coalgebra": self.coalgebra.name,
            "dim": self.dim,
            "rho": [[i, j, k, fmt(c)] for i, j, k, c in self.rho()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def from_matrix(C: Coalgebra, G, name: str = "", vectors=None) -> Comodule:
    m = len(G)
    if any(len(row) != m for row in G):
        raise StructuralError("coaction matrix must be square")
    return Comodule(C, tuple(tuple(dict(x) for x in row) for row in G), name,
                    None if vectors is None else tuple(vectors))


def from_rho(C: Coalgebra, dim: int, rho, name: str = "") -> Comodule:
    G = [[{} for _ in range(dim)] for _ in range(dim)]
    for i, j, k, c in rho:
        if not (0 <= i < dim and 0 <= j < dim):
            raise StructuralError(f"comodule index out of range in ({i}, {j}, {k})")
        if not 0 <= k < C.dim:
            raise StructuralError(f"coalgebra index {k} out of range 0..{C.dim - 1}")
        axpy(G[j][i], C.field(c) if isinstance(c, str) else c, {k: C.field.one})
    return from_matrix(C, G, name)


def from_json(C: Coalgebra, data: dict, name: str = "") -> Comodule:
    try:
        return from_rho(C, int(data["dim"]), data["rho"], name)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StructuralError):
            raise
        raise StructuralError(f"malformed comodule data: {exc}") from exc


def verify_comodule(M: Comodule, C: Coalgebra | None = None) -> Report:
    C = C or M.coalgebra
    G = M.matrix
    rep = Report(f"comodule axioms for {M.name or 'M'}")
    for row in G:
        for x in row:
            if any(not 0 <= k < C.dim for k in x):
                raise StructuralError("comodule coefficient outside the coalgebra basis")
    m = M.dim
    for i in range(m):
        bad = None
        for j in range(m):
            want: dict = {}
            for t in range(m):
                for key, v in outer(G[j][t], G[t][i]).items():
                    w = want.get(key, 0) + v
                    if w:
                        want[key] = w
                    else:
                        want.pop(key, None)
            if C.coproduct(G[j][i]) != want:
                bad = j
                break
        rep.add(f"coassociativity on m{i}", bad is None, "" if bad is None else f"component m{bad}")
        ok = all(C.eps(G[j][i]) == (1 if i == j else 0) for j in range(m))
        rep.add(f"counit on m{i}", ok)
    return rep


# -- constructions -----------------------------------------------------------

def coideal_comodule(C: Coalgebra, vectors, name: str = "") -> Comodule:
    """The right coideal spanned by ``vectors`` (a basis), with rho = Delta."""
    vectors = [dict(v) for v in vectors]
    e = Echelon(track=True, one=C.field.one)
    for v in vectors:
        if e.add(v) is not None:
            raise StructuralError("coideal vectors are linearly dependent")
    m = len(vectors)
    G = [[{} for _ in range(m)] for _ in range(m)]
    for i, v in enumerate(vectors):
        # group Delta(v) = sum_k (sum_j c_jk b_j) (x) b_k by the right index
        cols: dict = {}
        for (j, k), c in C.coproduct(v).items():
            cols.setdefault(k, {})[j] = c
        for k, left in cols.items():
            rem, combo = e.reduce(left, {})
            if rem:
                raise StructuralError(f"span is not a right coideal: Delta({C.format_vec(v)}) leaves it")
            for j, c in combo.items():
                if c:
                    axpy(G[j][i], -c, {k: C.field.one})
    return from_matrix(C, G, name, vectors)


def direct_sum(M: Comodule, N: Comodule, name: str = "") -> Comodule:
    m, n = M.dim, N.dim
    G = [[{} for _ in range(m + n)] for _ in range(m + n)]
    for j in range(m):
        for i in range(m):
            G[j][i] = dict(M.matrix[j][i])
    for j in range(n):
        for i in range(n):
            G[m + j][m + i] = dict(N.matrix[j][i])
    return from_matrix(M.coalgebra, G, name or f"{M.name}+{N.name}")


def tensor(M: Comodule, N: Comodule, name: str = "") -> Comodule:
    """rho(m (x) n) = m_0 (x) n_0 (x) m_1 n_1, basis ordered (i, k) -> i*dim N + k."""
    C = M.coalgebra
    if C.product is None:
        raise StructuralError("tensor product of comodules needs a coalgebra with a product")
    m, n = M.dim, N.dim
    G = [[{} for _ in range(m * n)] for _ in range(m * n)]
    for i, j in itertools.product(range(m), repeat=2):
        a = M.matrix[i][j]
        if not a:
            continue
        for k, l in itertools.product(range(n), repeat=2):
            b = N.matrix[k][l]
            if b:
                G[i * n + k][j * n + l] = C.mul(a, b)
    return from_matrix(C, G, name or f"{M.name}(x){N.name}")


def simple_comodule(C: Coalgebra, block, name: str = "") -> Comodule:
    """The simple comodule of a coradical block: the first row of its basic matrix."""
    G = block.matrix
    return from_matrix(C, G, name or f"S[{block.label}]", [G[0][j] for j in range(len(G))])


def trivial_comodule(C: Coalgebra, one: Vec) -> Comodule:
    return from_matrix(C, [[one]], "k")


# -- coefficient coalgebra, filtrations ----------------------------------------

def coefficient_coalgebra(M: Comodule) -> Subspace:
    """Smallest subcoalgebra D with rho(M) in M (x) D: the span of the coaction entries."""
    C = M.coalgebra
    cf = span([x for row in M.matrix for x in row], C.dim)
    if not is_subcoalgebra(cf, C):  # pragma: no cover - guaranteed by the comodule axioms
        raise ArithmeticError("coefficient span is not a subcoalgebra; comodule axioms fail")
    return cf


def certify_coefficient_coalgebra(M: Comodule, cf: Subspace | None = None) -> Report:
    """Containment rho(M) in M (x) cf, minimality (entries span cf) and cf a subcoalgebra."""
    C = M.coalgebra
    cf = cf or coefficient_coalgebra(M)
    rep = Report("coefficient coalgebra")
    rep.add("contains every coaction entry", all(cf.contains(x) for row in M.matrix for x in row))
    rep.add("is a subcoalgebra", is_subcoalgebra(cf, C))
    entries = span([x for row in M.matrix for x in row], C.dim)
    rep.add("minimal (spanned by the entries)", entries == cf, f"dim {cf.dim}")
    return rep


def _local(M: Comodule):
    """Restrict M to its coefficient coalgebra; returns (D, ambient basis, local matrix)."""
    cf = coefficient_coalgebra(M)
    D, basis = restrict(M.coalgebra, cf)
    piv = cf.pivots
    G = [[{piv.index(p): x[p] for p in x if p in piv} for x in row] for row in M.matrix]
    return D, basis, G


def _coaction_into_quotient(G, m: int, space: Subspace):
    """Images of m_i under (id (x) projection onto C/space) of rho."""
    _, project = space.quotient_map()
    images = []
    for i in range(m):
        img: dict = {}
        for j in range(m):
            for k, c in project(G[j][i]).items():
                img[(j, k)] = c
        images.append(img)
    return images


def socle_filtration(M: Comodule) -> list[Subspace]:
    """M_1 < M_2 < ... = M with M_i = {x : rho(x) in M (x) H_{i-1}} (coradical filtration)."""
    D, _, G = _local(M)
    chain, _ = coradical_filtration(D)
    m = M.dim
    out = []
    for H in chain:
        layer = kernel(_coaction_into_quotient(G, m, H), m, one=D.field.one)
        out.append(layer)
        if layer.dim == m:
            break
    return out


def loewy_length(M: Comodule) -> int:
    return len(socle_filtration(M))


def _characters(M: Comodule, cor: Coradical):
    """Express the character sum_i G_ii in the traces of the simple blocks."""
    C = M.coalgebra
    chi: Vec = {}
    for i in range(M.dim):
        axpy(chi, 1, M.matrix[i][i])
    traces = []
    for b in cor.blocks:
        t: Vec = {}
        for i in range(b.size):
            axpy(t, 1, b.matrix[i][i])
        traces.append(t)
    e = Echelon(track=True, one=C.field.one)
    for t in traces:
        e.add(t)
    rem, combo = e.reduce(chi, {})
    if rem:
        raise ArithmeticError("character does not lie in the span of simple characters")
    return {cor.blocks[i].label: -c for i, c in combo.items() if c}


def dimension_vector(M: Comodule, cor: Coradical | None = None) -> dict:
    """Jordan-Hoelder multiplicities of the simple comodules, read off the character."""
    cor = cor or coradical(M.coalgebra)
    out = {}
    for label, c in _characters(M, cor).items():
        q = c.to_fraction() if hasattr(c, "to_fraction") else c
        if q.denominator != 1 or q < 0:
            raise ArithmeticError(f"non-integral multiplicity {c} for {label}")
        out[label] = int(q)
    return dict(sorted(out.items()))


# -- Hom, End --------------------------------------------------------------

def hom_space(M: Comodule, N: Comodule) -> list[list[list]]:
    """Basis of comodule maps M -> N as (dim N) x (dim M) matrices."""
    C = M.coalgebra
    m, n = M.dim, N.dim
    GM, GN = M.matrix, N.matrix
    images = []
    unknowns = [(p, q) for p in range(n) for q in range(m)]
    for p, q in unknowns:
        img: dict = {}
        # (F (x) id) rho_M(m_i): F_pq contributes G^M[q][i] at (p, i)
        for i in range(m):
            for k, c in GM[q][i].items():
                key = (p, i, k)
                img[key] = img.get(key, 0) + c
        # rho_N(F m_i): F_pq (i = q) contributes G^N[a][p] at (a, q)
        for a in range(n):
            for k, c in GN[a][p].items():
                key = (a, q, k)
                img[key] = img.get(key, 0) - c
        images.append({key: v for key, v in img.items() if v})
    ker = kernel(images, len(unknowns), one=C.field.one)
    zero = C.field.zero
    out = []
    for vec in ker.basis():
        F = [[zero] * m for _ in range(n)]
        for idx, c in vec.items():
            p, q = unknowns[idx]
            F[p][q] = c
        out.append(F)
    return out


def _flatten(F) -> Vec:
    return {(i, j): x for i, row in enumerate(F) for j, x in enumerate(row) if x}


def _compose(F, G):
    """F o G for matrices (F after G)."""
    zero = F[0][0] * 0 if F and F[0] else 0
    return [[sum((F[i][k] * G[k][j] for k in range(len(G))), zero) for j in range(len(G[0]))]
            for i in range(len(F))]


@dataclass
class EndAlgebra:
    basis: list  # matrices
    algebra: Algebra
    radical: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def top_dim(self) -> int:
        return self.dim - self.radical.dim

    def element(self, vec: Vec):
        m = len(self.basis[0])
        zero = self.basis[0][0][0] * 0
        out = [[zero] * m for _ in range(m)]
        for idx, c in vec.items():
            B = self.basis[idx]
            for i in range(m):
                for j in range(m):
                    if B[i][j]:
                        out[i][j] = out[i][j] + c * B[i][j]
        return out


def end_analysis(M: Comodule) -> EndAlgebra:
    C = M.coalgebra
    basis = hom_space(M, M)
    flat = [_flatten(F) for F in basis]
    e = Echelon(track=True, one=C.field.one)
    for v in flat:
        e.add(v)
    table: dict = {}
    for a, Fa in enumerate(basis):
        for b, Fb in enumerate(basis):
            rem, combo = e.reduce(_flatten(_compose(Fa, Fb)), {})
            if rem:
                raise ArithmeticError("endomorphisms are not closed under composition")
            prod = {i: -c for i, c in combo.items() if c}
            if prod:
                table.setdefault(a, {})[b] = prod
    ident = [[C.field.one if i == j else C.field.zero for j in range(M.dim)] for i in range(M.dim)]
    rem, combo = e.reduce(_flatten(ident), {})
    unit = {i: -c for i, c in combo.items() if c}
    alg = Algebra(len(basis), table, unit, C.field)
    return EndAlgebra(basis, alg, alg.radical())


def is_abs_indecomposable(M: Comodule) -> bool:
    """Absolutely indecomposable: End(M)/rad is one-dimensional."""
    return end_analysis(M).top_dim == 1


def indecomposability_verdict(M: Comodule) -> str:
    top = end_analysis(M).top_dim
    if top == 1:
        return "absolutely indecomposable"
    return f"decomposable or not absolutely indecomposable (dim End/rad = {top})"


def are_isomorphic(M: Comodule, N: Comodule):
    """An isomorphism M -> N as a matrix, or ``None`` when none exists.

    det(sum_i l_i F_i) is a polynomial of degree <= dim in the l_i; it is
    nonzero iff it is nonzero somewhere on the grid {0..dim}^h, which is
    scanned in order of increasing coordinate sum.
    """
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return []
    basis = hom_space(M, N)
    if not basis:
        return None
    h, d = len(basis), M.dim
    one = M.coalgebra.field.one
    for p in _grid_by_sum(h, d):
        F = [[sum((one * p[t] * basis[t][i][j] for t in range(h)), one * 0) for j in range(d)]
             for i in range(d)]
        if det(F):
            return F
    return None


def _grid_by_sum(h: int, d: int):
    """Points of {0..d}^h with positive coordinate sum, by (sum, lexicographic)."""

    def parts(total, k):
        if k == 1:
            if total <= d:
                yield (total,)
            return
        for first in range(min(d, total) + 1):
            for rest in parts(total - first, k - 1):
                yield (first,) + rest

    for total in range(1, h * d + 1):
        yield from parts(total, h)


def is_isomorphism(M: Comodule, N: Comodule, F) -> bool:
    if not F or not det(F):
        return False
    return _is_hom(M, N, F)


def _is_hom(M: Comodule, N: Comodule, F) -> bool:
    m, n = M.dim, N.dim
    for a in range(n):
        for i in range(m):
            lhs: Vec = {}
            for j in range(m):
                if F[a][j]:
                    axpy(lhs, F[a][j], M.matrix[j][i])
            for b in range(n):
                if F[b][i]:
                    axpy(lhs, -F[b][i], N.matrix[a][b])
            if lhs:
                return False
    return True


# -- semisimple decomposition ---------------------------------------------------

@dataclass
class Decomposition:
    labels: list  # one per simple summand, in basis order
    change: list  # P: columns are the new basis in old coordinates
    blocks: list  # comatrices of the summands

    @property
    def L(self):
        """L with L G L^-1 block diagonal (L = P^-1)."""
        return mat_inv(self.change)


def decompose_semisimple(M: Comodule, cor: Coradical | None = None) -> Decomposition:
    """Split a comodule whose coefficients lie in the coradical into simples.

    For a block with basic matrix c_ij, write G = sum phi_ab (x) c_ab; the phi_ab
    are matrix units on the isotypic component, and each vector w in the image
    of phi_11 spans a simple summand phi_11 w, ..., phi_r1 w whose coaction
    matrix is exactly the block's basic matrix.
    """
    C = M.coalgebra
    cor = cor or coradical(C)
    one = C.field.one
    keys, entries = [], []
    for bi, b in enumerate(cor.blocks):
        for a in range(b.size):
            for c in range(b.size):
                keys.append((bi, a, c))
                entries.append(b.matrix[a][c])
    e = Echelon(track=True, one=one)
    for v in entries:
        e.add(v)
    m = M.dim
    phi = {}
    for j in range(m):
        for i in range(m):
            x = M.matrix[j][i]
            if not x:
                continue
            rem, combo = e.reduce(x, {})
            if rem:
                raise ArithmeticError("comodule is not semisimple over the coradical blocks")
            for idx, c in combo.items():
                if c:
                    phi.setdefault(keys[idx], {})[(j, i)] = -c

    def apply(key, v: Vec) -> Vec:
        out: Vec = {}
        for (j, i), c in phi.get(key, {}).items():
            if i in v:
                axpy(out, c * v[i], {j: one})
        return out

    columns, labels, blocks = [], [], []
    for bi, b in enumerate(cor.blocks):
        images = [apply((bi, 0, 0), {i: one}) for i in range(m)]
        top = span(images, m)
        for w in top.basis():
            for a in range(b.size):
                columns.append(apply((bi, a, 0), w))
            labels.append(b.label)
            blocks.append(b.matrix)
    if len(columns) != m:
        raise ArithmeticError(f"isotypic split found {len(columns)} of {m} dimensions")
    zero = C.field.zero
    P = [[columns[c].get(r, zero) for c in range(m)] for r in range(m)]
    return Decomposition(labels, P, blocks)


def conjugate(M: Comodule, P) -> list[list[Vec]]:
    """The coaction matrix P^-1 G P in the basis given by the columns of P."""
    Pi = mat_inv(P)
    m = M.dim
    G = M.matrix
    out = [[{} for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            acc: Vec = {}
            for i in range(m):
                if not Pi[a][i]:
                    continue
                for j in range(m):
                    if P[j][b] and G[i][j]:
                        axpy(acc, Pi[a][i] * P[j][b], G[i][j])
            out[a][b] = acc
    return out


def multiset(labels) -> dict:
    out: dict = {}
    for lab in labels:
        out[lab] = out.get(lab, 0) + 1
    return dict(sorted(out.items()))


def format_multiset(ms: dict, order=None) -> str:
    keys = order or list(ms)
    parts = []
    for k in keys:
        if k in ms:
            parts.append(k if ms[k] == 1 else f"{ms[k]}{k}")
    return " + ".join(parts) if parts else "0"


# -- the comodules of H(e,f,u,v) ---------------------------------------------

def build_paper_comodules(C: Coalgebra, ks=(1,)) -> dict:
    """S, U, V and W(k) over a truncation of H(e,f,u,v) (N >= 2).

    * S = first row of C_1 = [[e1, f1], [f-1, e-1]].
    * U = span{1, u, v}: frames 1 and C_1 with the primitive (u v).
    * V = span{e1, f1, -u f1 - v e1, u f1 - v e1}: frame C_1 with
      primitives into 1 and g.
    * W(k) = span{1, g, u - k gu, v + k gv}: frames 1, g, C_1 with primitives
      (u v) from 1 and (-gu gv) from g.  The g row is scaled by 1 rather
      than k, so the middle block of the coaction reads k(-gu gv).
    """
    h = getattr(C, "hopf", None)
    if h is None or h.family != "Hefuv":
        raise StructuralError("the U, V, W(k) comodules need a truncation of H(e,f,u,v)")
    from .hopf import element_to_vec

    def vec(x):
        return element_to_vec(C, x)

    one, g = h.unit(), h.grouplike_g()
    u, v = h.gen("u"), h.gen("v")
    e1, f1 = h.gen("e1"), h.gen("f1")
    gu, gv = h.mul(g, u), h.mul(g, v)
    out = {
        "S": coideal_comodule(C, [vec(e1), vec(f1)], "S"),
        "U": coideal_comodule(C, [vec(one), vec(u), vec(v)], "U"),
        "V": coideal_comodule(C, [vec(e1), vec(f1),
                                  vec(h.scale(h.add(h.mul(u, f1), h.mul(v, e1)), -1)),
                                  vec(h.sub(h.mul(u, f1), h.mul(v, e1)))], "V"),
    }
    for k in ks:
        if not k:
            raise StructuralError("W(k) needs k != 0")
        kk = h.F(k)
        out[f"W({k})"] = coideal_comodule(
            C, [vec(one), vec(g), vec(h.sub(u, h.scale(gu, kk))), vec(h.add(v, h.scale(gv, kk)))],
            f"W({k})")
    return out


def hefuv_v0(C: Coalgebra) -> Comodule:
    """The right coideal span{1, u, v, uv}."""
    from .hopf import element_to_vec

    h = C.hopf
    u, v = h.gen("u"), h.gen("v")
    vecs = [element_to_vec(C, x) for x in (h.unit(), u, v, h.mul(u, v))]
    return coideal_comodule(C, vecs, "V0")
