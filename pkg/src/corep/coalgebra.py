"""Structure-constant coalgebras and the objects built on them.

A coalgebra has basis ``b_0 .. b_{n-1}`` (with string labels), comultiplication
``Delta(b_i) = sum c * b_j (x) b_k`` stored row-sparse by ``i`` and a counit
vector.  Elements are sparse vectors ``{index: scalar}``; tensors are dicts
keyed by index pairs.

Matrices over a coalgebra (multiplicative or primitive) are lists of lists of
such vectors.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import Algebra, NonSplitError
from .linalg import Subspace, Vec, axpy, full_space, kernel, rank, span
from .report import Report, StructuralError
from .scalar import CyclotomicField, field_from_json

Tensor = dict


class WindowEscape(ArithmeticError):
    """A product or coproduct left the finite window it was computed in."""


@dataclass(frozen=True, eq=False)
class Coalgebra:
    field: object
    labels: tuple
    delta: tuple  # delta[i] = ((j, k, c), ...)
    counit: tuple  # counit[i] = scalar
    product: Optional[Callable[[int, int], Vec]] = field(default=None, repr=False)
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except AttributeError:
            object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
            return self.index(label)
        except KeyError:
            raise KeyError(f"no basis element labelled {label!r}") from None

    def vec(self, spec) -> Vec:
        """Build an element from a label, a vector, or ``{label: coeff}``."""
        if isinstance(spec, dict):
            out: Vec = {}
            for k, c in spec.items():
                i = self.index(k) if isinstance(k, str) else k
                axpy(out, self.field(c), {i: self.field.one})
            return out
        if isinstance(spec, str):
            return {self.index(spec): self.field.one}
        raise TypeError(f"cannot build an element from {spec!r}")

    def coproduct(self, v: Vec) -> Tensor:
        out: Tensor = {}
        for i, a in v.items():
            for j, k, c in self.delta[i]:
                key = (j, k)
                w = out.get(key)
                w = a * c if w is None else w + a * c
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def eps(self, v: Vec):
        acc = self.field.zero
        for i, a in v.items():
            e = self.counit[i]
            if e:
                acc = acc + a * e
        return acc

    def mul(self, x: Vec, y: Vec) -> Vec:
        if self.product is None:
            raise StructuralError(f"coalgebra {self.name or '?'} carries no product")
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.product(i, j))
        return out

    def format_vec(self, v: Vec) -> str:
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            c = v[i]
            s = self.field.format(c)
            lab = self.labels[i]
            if s == "1":
                parts.append(f"+{lab}")
            elif s == "-1":
                parts.append(f"-{lab}")
            elif s.startswith("-") and "+" not in s[1:] and "-" not in s[1:]:
                parts.append(f"{s}*{lab}")
            else:
                parts.append(f"+({s})*{lab}" if any(ch in s[1:] for ch in "+-") else f"+{s}*{lab}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "field": self.field.to_json(),
            "basis": list(self.labels),
            "delta": [[i, j, k, fmt(c)] for i, row in enumerate(self.delta) for j, k, c in row],
            "counit": [[i, fmt(c)] for i, c in enumerate(self.counit) if c],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "Coalgebra":
        try:
            fld = field_from_json(data.get("field", {}))
            labels = tuple(str(x) for x in data["basis"])
            n = len(labels)
            rows = [[] for _ in range(n)]
            for entry in data["delta"]:
                i, j, k, c = entry
                for idx in (i, j, k):
                    if not (isinstance(idx, int) and 0 <= idx < n):
                        raise StructuralError(f"delta index {idx} out of range 0..{n - 1}")
                val = fld(c) if isinstance(c, str) else fld(int(c))
                if val:
                    rows[i].append((j, k, val))
            counit = [fld.zero] * n
            for i, c in data.get("counit", []):
                if not (isinstance(i, int) and 0 <= i < n):
                    raise StructuralError(f"counit index {i} out of range 0..{n - 1}")
                counit[i] = fld(c) if isinstance(c, str) else fld(int(c))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, StructuralError):
                raise
            raise StructuralError(f"malformed coalgebra data: {exc}") from exc
        return cls(fld, labels, tuple(tuple(r) for r in rows), tuple(counit), name=name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def make_coalgebra(fld, labels, delta: dict, counit: dict, product=None, name: str = "") -> Coalgebra:
    """Convenience constructor from ``{i: [(j, k, c), ...]}`` and ``{i: c}``."""
    n = len(labels)
    rows = []
    for i in range(n):
        acc: dict = {}
        for j, k, c in delta.get(i, ()):
            if not (0 <= j < n and 0 <= k < n):
                raise StructuralError(f"delta index out of range in row {i}")
            acc[(j, k)] = acc.get((j, k), fld.zero) + fld(c)
        rows.append(tuple((j, k, c) for (j, k), c in sorted(acc.items()) if c))
    eps = tuple(fld(counit.get(i, 0)) for i in range(n))
    return Coalgebra(fld, tuple(labels), tuple(rows), eps, product, name)


def group_coalgebra(labels, fld=None) -> Coalgebra:
    fld = fld or CyclotomicField(1)
    delta = {i: [(i, i, 1)] for i in range(len(labels))}
    return make_coalgebra(fld, labels, delta, {i: 1 for i in range(len(labels))}, name="group")


def matrix_coalgebra(r: int, fld=None) -> Coalgebra:
    """The comatrix coalgebra M_r^c with Delta(e_ij) = sum_k e_ik (x) e_kj."""
    fld = fld or CyclotomicField(1)
    labels = [f"e{i}{j}" for i in range(1, r + 1) for j in range(1, r + 1)]
    idx = {(i, j): (i - 1) * r + (j - 1) for i in range(1, r + 1) for j in range(1, r + 1)}
    delta = {idx[i, j]: [(idx[i, k], idx[k, j], 1) for k in range(1, r + 1)]
             for i in range(1, r + 1) for j in range(1, r + 1)}
    counit = {idx[i, i]: 1 for i in range(1, r + 1)}
    return make_coalgebra(fld, labels, delta, counit, name=f"M{r}")


# -- axioms -----------------------------------------------------------------

def _check_indices(C: Coalgebra) -> None:
    n = C.dim
    if len(C.delta) != n or len(C.counit) != n:
        raise StructuralError("delta/counit length does not match the basis")
    for i, row in enumerate(C.delta):
        for j, k, _ in row:
            if not (0 <= j < n and 0 <= k < n):
                raise StructuralError(f"delta({C.labels[i]}) refers to index out of range")


def verify_coalgebra(C: Coalgebra) -> Report:
    """Check coassociativity and both counit laws on every basis element."""
    _check_indices(C)
    rep = Report(f"coalgebra axioms ({C.dim}-dimensional {C.name})".replace(" )", ")"))
    bad_assoc = bad_counit = None
    for i in range(C.dim):
        left: dict = {}
        right: dict = {}
        for j, k, c in C.delta[i]:
            for a, b, d in C.delta[j]:
                key = (a, b, k)
                left[key] = left.get(key, 0) + c * d
            for a, b, d in C.delta[k]:
                key = (j, a, b)
                right[key] = right.get(key, 0) + c * d
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if bad_assoc is None and left != right:
            diff = set(left) ^ set(right) or {k for k in left if left[k] != right.get(k)}
            j, k, l = min(diff)
            bad_assoc = f"at {C.labels[i]}: term {C.labels[j]}(x){C.labels[k]}(x){C.labels[l]}"
        lc: Vec = {}
        rc: Vec = {}
        for j, k, c in C.delta[i]:
            if C.counit[j]:
                axpy(lc, c * C.counit[j], {k: 1})
            if C.counit[k]:
                axpy(rc, c * C.counit[k], {j: 1})
        unit = {i: 1}
        if bad_counit is None and (lc != unit or rc != unit):
            bad_counit = f"at {C.labels[i]}: (eps(x)id)Delta = {C.format_vec(lc)}, (id(x)eps)Delta = {C.format_vec(rc)}"
    rep.add("coassociativity", bad_assoc is None, bad_assoc or "")
    rep.add("counit", bad_counit is None, bad_counit or "")
    return rep


# -- matrices over a coalgebra -----------------------------------------------

def _tensor_add(out: Tensor, a, t: Tensor) -> None:
    for key, v in t.items():
        w = out.get(key)
        w = a * v if w is None else w + a * v
        if w:
            out[key] = w
        else:
            out.pop(key, None)


def outer(x: Vec, y: Vec) -> Tensor:
    return {(j, k): a * b for j, a in x.items() for k, b in y.items() if a and b}


def as_matrix(C: Coalgebra, rows) -> list[list[Vec]]:
    return [[C.vec(e) if not isinstance(e, dict) or any(isinstance(k, str) for k in e) else e
             for e in row] for row in rows]


def is_multiplicative(G, C: Coalgebra) -> bool:
    r = len(G)
    if any(len(row) != r for row in G):
        raise StructuralError("multiplicative matrix must be square")
    for i in range(r):
        for j in range(r):
            want: Tensor = {}
            for t in range(r):
                _tensor_add(want, 1, outer(G[i][t], G[t][j]))
            if C.coproduct(G[i][j]) != want:
                return False
            if C.eps(G[i][j]) != (1 if i == j else 0):
                return False
    return True


def is_basic(G, C: Coalgebra | None = None) -> bool:
    r = len(G)
    if C is not None and not is_multiplicative(G, C):
        return False
    return rank([G[i][j] for i in range(r) for j in range(r)]) == r * r


def matrix_span(G, ambient: int) -> Subspace:
    return span([e for row in G for e in row], ambient)


def is_primitive(X, Cmat, Dmat, C: Coalgebra, coradical_space: Subspace | None = None) -> str:
    """Classify ``X`` as ``not_primitive``, ``trivial`` or ``non_trivial``."""
    r, s = len(Cmat), len(Dmat)
    if len(X) != r or any(len(row) != s for row in X):
        raise StructuralError(f"primitive matrix must be {r}x{s} to match its frames")
    for i in range(r):
        for j in range(s):
            want: Tensor = {}
            for k in range(r):
                _tensor_add(want, 1, outer(Cmat[i][k], X[k][j]))
            for t in range(s):
                _tensor_add(want, 1, outer(X[i][t], Dmat[t][j]))
            if C.coproduct(X[i][j]) != want:
                return "not_primitive"
    if coradical_space is None:
        coradical_space = coradical(C).space
    if all(coradical_space.contains(x) for row in X for x in row):
        return "trivial"
    return "non_trivial"


# -- subcoalgebras, wedge --------------------------------------------------

def _projector(space: Subspace, C: Coalgebra):
    _, project = space.quotient_map()
    cache = {}

    def proj(i: int) -> Vec:
        if i not in cache:
            cache[i] = project({i: C.field.one})
        return cache[i]

    return proj


def is_subcoalgebra(A: Subspace, C: Coalgebra) -> bool:
    proj = _projector(A, C)
    for v in A.basis():
        t = C.coproduct(v)
        left: Tensor = {}
        right: Tensor = {}
        for (j, k), c in t.items():
            for a, x in proj(j).items():
                key = (a, k)
                left[key] = left.get(key, 0) + c * x
            for b, y in proj(k).items():
                key = (j, b)
                right[key] = right.get(key, 0) + c * y
        if any(left.values()) or any(right.values()):
            return False
    return True


def wedge(A: Subspace, B: Subspace, C: Coalgebra, check: bool = True) -> Subspace:
    """``{x : Delta(x) in A (x) C + C (x) B}`` as a kernel of the quotient map."""
    if check:
        for name, S in (("left", A), ("right", B)):
            if not is_subcoalgebra(S, C):
                raise StructuralError(f"{name} argument of wedge is not a subcoalgebra")
    pa, pb = _projector(A, C), _projector(B, C)
    images = []
    for i in range(C.dim):
        img: dict = {}
        for j, k, c in C.delta[i]:
            left = pa(j)
            if not left:
                continue
            right = pb(k)
            for a, x in left.items():
                for b, y in right.items():
                    key = (a, b)
                    w = img.get(key)
                    w = c * x * y if w is None else w + c * x * y
                    if w:
                        img[key] = w
                    else:
                        img.pop(key)
        images.append(img)
    return kernel(images, C.dim, one=C.field.one)


# -- coradical --------------------------------------------------------------

@dataclass
class Block:
    """A simple subcoalgebra with a basic multiplicative matrix."""

    space: Subspace
    matrix: list  # r x r of Vec (in the ambient coalgebra)
    label: str = ""
    idempotent: Vec | None = None  # central idempotent of the dual, in ambient dual coordinates

    @property
    def size(self) -> int:
        return len(self.matrix)


@dataclass
class Coradical:
    space: Subspace
    blocks: list

    def block(self, label: str) -> Block:
        for b in self.blocks:
            if b.label == label:
                return b
        raise KeyError(f"no simple block labelled {label!r}")

    def find(self, v: Vec) -> Block:
        for b in self.blocks:
            if b.space.contains(v):
                return b
        raise KeyError("element does not lie in a single simple block")

    def labels(self) -> list[str]:
        return [b.label for b in self.blocks]


def dual_algebra(C: Coalgebra) -> Algebra:
    """C* in the dual basis: ``b^j * b^k = sum_i Delta-coefficient(i; j, k) b^i``."""
    table: dict = {}
    for i, row in enumerate(C.delta):
        for j, k, c in row:
            slot = table.setdefault(j, {}).setdefault(k, {})
            w = slot.get(i)
            w = c if w is None else w + c
            if w:
                slot[i] = w
            else:
                slot.pop(i)
    unit = {i: e for i, e in enumerate(C.counit) if e}
    return Algebra(C.dim, table, unit, C.field)


def restrict(C: Coalgebra, S: Subspace, labels=None) -> tuple[Coalgebra, list[Vec]]:
    """The subcoalgebra ``S`` as a coalgebra on its RREF basis.

    Returns the coalgebra and the list of basis vectors (ambient coordinates).
    """
    basis = S.basis()
    piv = S.pivots
    pos = {p: a for a, p in enumerate(piv)}
    rows = []
    for v in basis:
        t = C.coproduct(v)
        row = []
        for (j, k), c in t.items():
            if j in pos and k in pos:
                row.append((pos[j], pos[k], c))
        rows.append(tuple(sorted(row, key=lambda x: (x[0], x[1]))))
    counit = tuple(C.eps(v) for v in basis)
    if labels is None:
        labels = tuple(C.format_vec(v) for v in basis)
    return Coalgebra(C.field, tuple(labels), tuple(rows), counit, name=f"sub({C.name})"), basis


def _lift(vec: Vec, basis: list[Vec]) -> Vec:
    out: Vec = {}
    for a, c in vec.items():
        axpy(out, c, basis[a])
    return out


def _right_hit(C: Coalgebra, x: Vec, functional: Vec) -> Vec:
    """``x <- f = sum f(x_1) x_2``."""
    out: Vec = {}
    for i, a in x.items():
        for j, k, c in C.delta[i]:
            f = functional.get(j)
            if f:
                axpy(out, a * c * f, {k: 1})
    return out


def comatrix_from_coideal(C: Coalgebra, V: Subspace) -> list[list[Vec]]:
    """Multiplicative matrix of a right coideal ``V``: Delta(v_j) = sum_i v_i (x) c_ij."""
    basis = V.basis()
    piv = V.pivots
    r = len(basis)
    mat = [[{} for _ in range(r)] for _ in range(r)]
    for j, v in enumerate(basis):
        t = C.coproduct(v)
        for (a, b), c in t.items():
            if a in piv:
                i = piv.index(a)
                axpy(mat[i][j], c, {b: 1})
    return mat


def _default_label(C: Coalgebra, block: Block) -> str:
    if block.size == 1:
        return C.format_vec(block.matrix[0][0])
    return "C[" + C.format_vec(block.matrix[0][0]) + "]"


def coradical(C: Coalgebra, namer: Callable | None = None) -> Coradical:
    """Coradical via the dual algebra: ``H_0 = J(C*)^perp`` split into simple blocks."""
    cached = getattr(C, "_coradical", None)
    if cached is not None and namer is None:
        return cached
    use_cache = namer is None
    dual = dual_algebra(C)
    J = dual.radical()
    # H_0 = {x : phi(x) = 0 for phi in J}
    images = [dict() for _ in range(C.dim)]
    for idx, phi in enumerate(J.basis()):
        for i, c in phi.items():
            images[i][idx] = c
    H0 = kernel(images, C.dim, one=C.field.one)
    D, hbasis = restrict(C, H0)
    ddual = dual_algebra(D)
    blocks = []
    for e in ddual.central_idempotents(name=C.name or "coalgebra"):
        bspace_local = span([_right_hit(D, {a: C.field.one}, e) for a in range(D.dim)], D.dim)
        r = math.isqrt(bspace_local.dim)
        where = C.format_vec(_lift(bspace_local.basis()[0], hbasis))
        if r * r != bspace_local.dim:
            raise NonSplitError(f"non-split simple block containing {where}: dimension {bspace_local.dim} is not a square")
        p = ddual.primitive_idempotent(e, name=f"block containing {where}")
        V = span([_right_hit(D, {a: C.field.one}, p) for a in range(D.dim)], D.dim)
        if V.dim != r:
            raise NonSplitError(f"non-split simple block containing {where}")
        local = comatrix_from_coideal(D, V)
        mat = [[_lift(x, hbasis) for x in row] for row in local]
        space = span([_lift(v, hbasis) for v in bspace_local.basis()], C.dim)
        blocks.append(Block(space, mat))
    blocks.sort(key=lambda b: b.space.pivots[0])
    namer = namer or getattr(C, "block_namer", None) or _default_label
    for b in blocks:
        b.label = namer(C, b)
    result = Coradical(H0, blocks)
    if use_cache:
        object.__setattr__(C, "_coradical", result)
    return result


def coradical_filtration(C: Coalgebra) -> tuple[list[Subspace], int]:
    """``H_0 < H_1 < ... = C`` with ``H_n = H_{n-1} wedge H_0``; returns (chain, Loewy length)."""
    H0 = coradical(C).space
    chain = [H0]
    while chain[-1].dim < C.dim:
        nxt = wedge(chain[-1], H0, C, check=False)
        if nxt.dim <= chain[-1].dim:
            raise ArithmeticError("coradical filtration stalled below the whole coalgebra")
        chain.append(nxt)
    return chain, len(chain)


def whole(C: Coalgebra) -> Subspace:
    return full_space(C.dim, C.field.one)
