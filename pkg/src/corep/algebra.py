"""Finite-dimensional associative algebras given by structure constants.

Used for the dual algebra of a coalgebra (coradical, block splitting) and for
endomorphism algebras of comodules.  Everything is exact; the only external
help is polynomial factorisation, delegated to the field object.
"""
from __future__ import annotations

from itertools import combinations

from .linalg import Echelon, Subspace, Vec, axpy, kernel, minimal_polynomial, span


class NonSplitError(ArithmeticError):
    """A simple component is not a full matrix algebra over the ground field."""


# -- polynomials over a field (lists, constant term first) -------------------

def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _trim(out)


def poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if len(a) < len(b):
        return [], a
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for j, y in enumerate(b):
            a[s + j] = a[s + j] - c * y
        a = _trim(a)
    return _trim(q), a


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def poly_bezout(a, b):
    """Return ``v`` with ``u*a + v*b = 1`` for coprime ``a``, ``b``."""
    r0, r1 = _trim(a), _trim(b)
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if len(r0) != 1:
        raise ArithmeticError("polynomials are not coprime")
    return [x / r0[0] for x in t0]


def poly_pow(p, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


class Algebra:
    """Associative algebra with basis ``0..dim-1`` and sparse structure constants.

    ``table[j][k]`` is the vector ``b_j * b_k``.
    """

    def __init__(self, dim: int, table: dict, unit: Vec, field):
        self.dim = dim
        self.table = table
        self.unit = unit
        self.field = field

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for j, a in x.items():
            row = self.table.get(j)
            if not row:
                continue
            for k, b in y.items():
                prod = row.get(k)
                if prod:
                    axpy(out, a * b, prod)
        return out

    def basis_vec(self, i: int) -> Vec:
        return {i: self.field.one}

    # -- radical -----------------------------------------------------------
    def trace_functional(self) -> Vec:
        """``tau_j = trace(L_{b_j})``."""
        tau: Vec = {}
        for j, row in self.table.items():
            acc = 0
            for k, prod in row.items():
                c = prod.get(k)
                if c:
                    acc = acc + c
            if acc:
                tau[j] = acc
        return tau

    def trace_form_rows(self) -> list[Vec]:
        tau = self.trace_functional()
        rows = [dict() for _ in range(self.dim)]
        for j, row in self.table.items():
            for k, prod in row.items():
                acc = 0
                for i, c in prod.items():
                    t = tau.get(i)
                    if t:
                        acc = acc + c * t
                if acc:
                    rows[j][k] = acc
        return rows

    def radical(self) -> Subspace:
        """Jacobson radical as the radical of the trace form (characteristic zero)."""
        return kernel(self.trace_form_rows(), self.dim, one=self.field.one)

    def center(self) -> Subspace:
        images = []
        for k in range(self.dim):
            img: Vec = {}
            bk = self.basis_vec(k)
            for j in range(self.dim):
                bj = self.basis_vec(j)
                comm = self.mul(bk, bj)
                axpy(comm, -1, self.mul(bj, bk))
                for i, c in comm.items():
                    img[(j, i)] = c
            images.append(img)
        return kernel(images, self.dim, one=self.field.one)

    # -- idempotents -------------------------------------------------------
    def eval_poly(self, p, a: Vec, one: Vec) -> Vec:
        out: Vec = {}
        for c in reversed(p):
            out = self.mul(out, a) if out else {}
            if c:
                axpy(out, c, one)
        return out

    def minpoly(self, a: Vec, one: Vec, bound: int):
        return minimal_polynomial(lambda v: self.mul(a, v), one, bound)

    def _candidates(self, basis: list[Vec], limit: int = 400):
        seen = 0
        for b in basis:
            yield b
        for mult in (1, -1, 2):
            for x, y in combinations(basis, 2):
                seen += 1
                if seen > limit:
                    return
                v = dict(x)
                axpy(v, mult, y)
                if v:
                    yield v

    def _split_by(self, a: Vec, one: Vec, bound: int):
        """Try to split ``one`` using the minimal polynomial of ``a``.

        Returns ``(kind, data)`` where kind is ``"idempotent"`` (a proper
        idempotent below ``one``), ``"nilpotent"`` (a nonzero nilpotent element)
        or ``None``.
        """
        p = self.minpoly(a, one, bound)
        if len(p) <= 2:
            return None, None
        factors = self.field.factor(p)
        if len(factors) == 1:
            f = factors[0]
            if len(f) == len(p):
                return None, None
            # p = f^m with m > 1: f(a) is nilpotent and nonzero
            return "nilpotent", self.eval_poly(f, a, one)
        first = factors[0]
        m = 0
        rest = list(p)
        while True:
            q, r = poly_divmod(rest, first)
            if r:
                break
            rest, m = q, m + 1
        block = poly_pow(first, m)
        v = poly_bezout(block, rest)
        e = self.eval_poly(poly_mul(v, rest), a, one)
        return "idempotent", e

    def central_idempotents(self, name: str = "algebra") -> list[Vec]:
        """Primitive central idempotents of a split semisimple algebra."""
        zbasis = self.center().basis()
        done: list[Vec] = []
        todo = [dict(self.unit)]
        while todo:
            e = todo.pop()
            corner = span([self.mul(z, e) for z in zbasis], self.dim)
            if corner.dim == 1:
                done.append(e)
                continue
            found = None
            for a in self._candidates(corner.basis()):
                kind, data = self._split_by(a, e, corner.dim)
                if kind == "idempotent":
                    found = data
                    break
            if found is None:
                raise NonSplitError(
                    f"non-split simple component in {name}: center of a block has dimension {corner.dim}")
            rest = dict(e)
            axpy(rest, -1, found)
            todo.extend([found, rest])
        return sorted(done, key=lambda v: sorted(v))

    def corner(self, e: Vec) -> Subspace:
        return span([self.mul(self.mul(e, self.basis_vec(j)), e) for j in range(self.dim)], self.dim)

    def left_ideal(self, x: Vec) -> Subspace:
        return span([self.mul(self.basis_vec(j), x) for j in range(self.dim)], self.dim)

    def right_unit(self, ideal: Subspace):
        """An idempotent ``f`` in the left ideal with ``x*f = x`` for all ``x`` in it."""
        basis = ideal.basis()
        images = []
        for t in basis:
            img: Vec = {}
            for s, ls in enumerate(basis):
                for i, c in self.mul(ls, t).items():
                    img[(s, i)] = c
            images.append(img)
        target: Vec = {}
        for s, ls in enumerate(basis):
            for i, c in ls.items():
                target[(s, i)] = c
        e = Echelon(track=True, one=self.field.one)
        for v in images:
            e.add(v)
        rem, combo = e.reduce(target, {})
        if rem:
            return None
        f: Vec = {}
        for idx, c in combo.items():
            axpy(f, -c, basis[idx])
        return f

    def primitive_idempotent(self, e: Vec, name: str = "block") -> Vec:
        """A primitive idempotent below the central idempotent ``e`` of a split block."""
        while True:
            cor = self.corner(e)
            if cor.dim == 1:
                return e
            nxt = None
            for a in self._candidates(cor.basis()):
                kind, data = self._split_by(a, e, cor.dim)
                if kind == "idempotent":
                    nxt = data
                elif kind == "nilpotent":
                    ideal = span([self.mul(self.mul(self.mul(e, self.basis_vec(j)), e), data)
                                  for j in range(self.dim)], self.dim)
                    nxt = self.right_unit(ideal)
                if nxt:
                    break
                nxt = None
            if nxt is None:
                raise NonSplitError(f"non-split simple component {name}: no proper idempotent found")
            # keep the smaller of the two complementary corners
            other = dict(e)
            axpy(other, -1, nxt)
            if self.corner(other).dim < self.corner(nxt).dim:
                nxt = other
            e = nxt


def nilpotency_index(alg: Algebra, ideal: Subspace, bound: int) -> int | None:
    """Smallest ``k`` with ``ideal^k = 0`` (``None`` if not reached within ``bound``)."""
    if ideal.dim == 0:
        return 0
    power, k = ideal, 1
    while power.dim and k <= bound:
        power = span([alg.mul(x, y) for x in power.basis() for y in ideal.basis()], alg.dim)
        k += 1
    return k if power.dim == 0 else None
