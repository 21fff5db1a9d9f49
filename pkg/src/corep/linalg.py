"""Sparse exact linear algebra over the fields of :mod:`corep.scalar`.

Vectors are plain dicts ``{column: value}`` with no stored zeros.  Subspaces
are kept in reduced row-echelon form so that equality is a matrix comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Vec = dict


def axpy(y: Vec, a, x: Vec) -> None:
    """In place ``y += a*x``."""
    for k, v in x.items():
        w = y.get(k)
        w = a * v if w is None else w + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scale(x: Vec, a) -> Vec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def add(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    axpy(out, 1, y)
    return out


def clean(x: Vec) -> Vec:
    return {k: v for k, v in x.items() if v}


class Echelon:
    """Incremental reduced row-echelon form.

    With ``track=True`` every stored row remembers which combination of the
    inserted vectors produced it, which is what kernels need.
    """

    def __init__(self, track: bool = False, one=Fraction(1)):
        self.pivots: dict = {}
        self.track = track
        self.one = one
        self.combos: dict = {}
        self.count = 0

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: Vec, combo: Vec | None = None):
        v = dict(v)
        for c in [c for c in v if c in self.pivots]:
            a = v.get(c)
            if a:
                axpy(v, -a, self.pivots[c])
                if combo is not None:
                    axpy(combo, -a, self.combos[c])
        return v, combo

    def add(self, v: Vec):
        """Insert ``v``; return ``None`` if independent, else the dependency combo."""
        combo = {self.count: self.one} if self.track else None
        self.count += 1
        v, combo = self.reduce(v, combo)
        if not v:
            return combo if self.track else {}
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        if self.track:
            combo = {k: x * inv for k, x in combo.items()}
        for c, row in self.pivots.items():
            a = row.get(p)
            if a:
                axpy(row, -a, v)
                if self.track:
                    axpy(self.combos[c], -a, combo)
        self.pivots[p] = v
        if self.track:
            self.combos[p] = combo
        return None

    def rows(self) -> list[Vec]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def _freeze(v: Vec) -> tuple:
    return tuple(sorted(v.items()))


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^ambient stored by its RREF basis."""

    ambient: int
    rows: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Vec]:
        return [dict(r) for r in self.rows]

    @property
    def pivots(self) -> list[int]:
        return [r[0][0] for r in self.rows]

    def _echelon(self) -> Echelon:
        e = Echelon()
        for r in self.rows:
            e.pivots[r[0][0]] = dict(r)
        return e

    def reduce(self, v: Vec) -> Vec:
        return self._echelon().reduce(v)[0]

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def contains_space(self, other: "Subspace") -> bool:
        e = self._echelon()
        return all(not e.reduce(dict(r))[0] for r in other.rows)

    def coords(self, v: Vec) -> list:
        """Coordinates of ``v`` in the RREF basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [v.get(p, 0) for p in self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        return span(list(self.basis()) + other.basis(), self.ambient)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_space(self)

    def quotient_map(self):
        """Return ``(free_columns, project)`` for the quotient k^ambient / self.

        ``project(v)`` gives coordinates on the non-pivot columns.
        """
        pivots = set(self.pivots)
        free = [c for c in range(self.ambient) if c not in pivots]
        e = self._echelon()

        def project(v: Vec) -> Vec:
            return e.reduce(v)[0]

        return free, project

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = sum a_i u_i = sum b_j w_j  <=> (a, -b) in the kernel of [U; W]
        mine, theirs = self.basis(), other.basis()
        ker = kernel(mine + [scale(w, -1) for w in theirs])
        vecs = []
        for k in ker.basis():
            v: Vec = {}
            for i, c in k.items():
                if i < len(mine):
                    axpy(v, c, mine[i])
            vecs.append(v)
        return span(vecs, self.ambient)

    def to_rows(self, fmt) -> list[list[str]]:
        out = []
        for r in self.rows:
            d = dict(r)
            out.append([fmt(d[c]) if c in d else "0" for c in range(self.ambient)])
        return out


def span(vectors: Iterable[Vec], ambient: int) -> Subspace:
    e = Echelon()
    for v in vectors:
        if v:
            e.add(v)
    return Subspace(ambient, tuple(_freeze(r) for r in e.rows()))


def zero_space(ambient: int) -> Subspace:
    return Subspace(ambient, ())


def full_space(ambient: int, one=1) -> Subspace:
    return Subspace(ambient, tuple(((i, one),) for i in range(ambient)))


def unit_like(vectors) -> object:
    """The field's one, read off from any nonzero entry (Fraction(1) if none)."""
    for v in vectors:
        for x in v.values():
            return x / x
    return Fraction(1)


def kernel(images: list[Vec], n: int | None = None, one=None) -> Subspace:
    """All coefficient vectors ``c`` (length ``n``) with ``sum c_i images[i] = 0``."""
    n = len(images) if n is None else n
    e = Echelon(track=True, one=unit_like(images) if one is None else one)
    deps = []
    for v in images:
        dep = e.add(v)
        if dep is not None:
            deps.append(dep)
    return span(deps, n)


def rank(vectors: Iterable[Vec]) -> int:
    e = Echelon()
    for v in vectors:
        if v:
            e.add(v)
    return len(e)


def express(target: Vec, vectors: list[Vec]):
    """Coefficients ``c`` with ``sum c_i vectors[i] = target`` or ``None``."""
    e = Echelon(track=True, one=unit_like(vectors))
    for v in vectors:
        e.add(v)
    rem, combo = e.reduce(target, {})
    if rem:
        return None
    return {i: -c for i, c in combo.items() if c}


def minimal_polynomial(apply, one: Vec, bound: int):
    """Minimal polynomial of an operator acting on an algebra element.

    ``apply(v)`` returns ``a*v``; starting from ``one`` the powers are reduced
    until dependent.  Coefficients are returned constant term first, monic.
    """
    e = Echelon(track=True, one=unit_like([one]))
    cur = one
    for k in range(bound + 1):
        dep = e.add(cur)
        if dep is not None:
            top = dep[k]
            return [dep.get(i, 0) / top for i in range(k + 1)]
        cur = apply(cur)
    raise ArithmeticError("minimal polynomial degree exceeds bound")


# -- small dense helpers ----------------------------------------------------

def mat_mul(a, b):
    m, inner, n = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            acc = 0
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def det(mat) -> object:
    """Determinant by exact Gaussian elimination."""
    a = [list(r) for r in mat]
    n = len(a)
    sign = 1
    result = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0 * result
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result = result * piv
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / piv
                for k in range(c, n):
                    if a[c][k]:
                        a[r][k] = a[r][k] - f * a[c][k]
    return result * sign


def mat_inv(mat):
    n = len(mat)
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(mat)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
