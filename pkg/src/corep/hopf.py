"""Finitely presented Hopf algebras with normal-form multiplication.

Each family stores elements as sparse maps ``monomial -> scalar`` over a
family-specific set of normal monomials.  Multiplication of two monomials is
done by rewriting to normal form (group part on the left, then ``x``, then
``y``; or ``u`` before ``v``).  Delta and epsilon are extended from the
generators as algebra maps and S as an anti-algebra map, so the Hopf axioms are
genuinely checked rather than built in.

Families:

* ``build_A(n, d, mu, q)``: g^n = 1, x^d = mu(1 - g^d), xg = q gx.
* ``build_Anq(n, q)``: xg = q gx, x^n = 1 - g^n with g of infinite order.
* ``build_Hinf(chi_g, lambda_g)``: xg = chi gx + lambda (g - g^2).
* ``build_Bmn(m, n, lam, s, t, k)``: two group-likes g, h with g^m = h^n and
  skew-primitives x, y.
* ``build_Hefuv()``: the algebra on e_i, f_i (i in Z), u, v.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .coalgebra import Coalgebra, WindowEscape
from .report import Report, StructuralError
from .scalar import CyclotomicField, FunctionField, Scalar, parse_param

Element = dict
TensorElement = dict


class ParameterError(ValueError):
    """A family parameter violates one of the family's constraints."""


class TruncationError(ArithmeticError):
    """The requested span is not closed under the coproduct."""

    def __init__(self, message: str, offenders: list[str]):
        super().__init__(message)
        self.offenders = offenders


def _add_into(out: dict, key, c) -> None:
    w = out.get(key)
    w = c if w is None else w + c
    if w:
        out[key] = w
    else:
        out.pop(key, None)


def _lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


class PresentedHopf:
    """Shared machinery; subclasses supply the family-specific rewriting."""

    family = ""
    finite = False

    def __init__(self, field, params: dict):
        self.field = field
        self.params = params
        self.one = field.one
        self._mul_cache: dict = {}
        self._delta_cache: dict = {}
        self._anti_cache: dict = {}
        self.overrides: dict = {}

    # -- family interface ----------------------------------------------------
    def unit(self) -> Element:
        raise NotImplementedError

    def gen(self, name: str) -> Element:
        raise NotImplementedError

    def _mono_mul(self, a, b) -> Element:
        raise NotImplementedError

    def word(self, m) -> list[str]:
        raise NotImplementedError

    def _delta_gen(self, name: str) -> TensorElement:
        raise NotImplementedError

    def _counit_gen(self, name: str):
        raise NotImplementedError

    def _antipode_gen(self, name: str) -> Element:
        raise NotImplementedError

    def check_generators(self) -> list[str]:
        raise NotImplementedError

    def relations(self) -> list[tuple[str, list]]:
        """``(name, [(coef, word), ...])`` meaning ``sum coef * word = 0``."""
        raise NotImplementedError

    def label(self, m) -> str:
        raise NotImplementedError

    def window(self, N: int | None) -> list:
        raise NotImplementedError

    def sample_monomial(self, rng: random.Random):
        raise NotImplementedError

    @property
    def descriptor(self) -> str:
        return self.family

    def __repr__(self):
        return f"<{self.descriptor}>"

    # -- elements ----------------------------------------------------------
    def F(self, x):
        return self.field(x)

    def mono(self, m) -> Element:
        return {m: self.one}

    def element(self, terms: dict) -> Element:
        out: Element = {}
        for m, c in terms.items():
            _add_into(out, m, self.F(c))
        return out

    def add(self, *xs: Element) -> Element:
        out: Element = {}
        for x in xs:
            for m, c in x.items():
                _add_into(out, m, c)
        return out

    def scale(self, x: Element, c) -> Element:
        c = self.F(c)
        return {m: v * c for m, v in x.items()} if c else {}

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.scale(y, -1))

    def mono_mul(self, a, b) -> Element:
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is None:
            hit = self._mono_mul(a, b)
            self._mul_cache[key] = hit
        return hit

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for a, c in x.items():
            for b, d in y.items():
                cd = c * d
                for m, v in self.mono_mul(a, b).items():
                    _add_into(out, m, cd * v)
        return out

    def prod(self, elements: Iterable[Element]) -> Element:
        out = self.unit()
        for e in elements:
            out = self.mul(out, e)
        return out

    def eval_word(self, word: list[str]) -> Element:
        return self.prod(self.gen(w) for w in word)

    # -- tensors -----------------------------------------------------------
    def tensor(self, x: Element, y: Element) -> TensorElement:
        return {(a, b): c * d for a, c in x.items() for b, d in y.items()}

    def tensor_mul(self, s: TensorElement, t: TensorElement) -> TensorElement:
        out: TensorElement = {}
        for (a1, a2), c in s.items():
            for (b1, b2), d in t.items():
                left = self.mono_mul(a1, b1)
                if not left:
                    continue
                right = self.mono_mul(a2, b2)
                cd = c * d
                for m1, v1 in left.items():
                    for m2, v2 in right.items():
                        _add_into(out, (m1, m2), cd * v1 * v2)
        return out

    def tensor_add(self, *ts: TensorElement) -> TensorElement:
        out: TensorElement = {}
        for t in ts:
            for k, c in t.items():
                _add_into(out, k, c)
        return out

    def tensor_scale(self, t: TensorElement, c) -> TensorElement:
        c = self.F(c)
        return {k: v * c for k, v in t.items()} if c else {}

    def tensor_unit(self) -> TensorElement:
        return self.tensor(self.unit(), self.unit())

    # -- structure maps ----------------------------------------------------
    def delta_gen(self, name: str) -> TensorElement:
        if ("delta", name) in self.overrides:
            return self.overrides["delta", name]
        return self._delta_gen(name)

    def counit_gen(self, name: str):
        if ("counit", name) in self.overrides:
            return self.overrides["counit", name]
        return self._counit_gen(name)

    def antipode_gen(self, name: str) -> Element:
        if ("antipode", name) in self.overrides:
            return self.overrides["antipode", name]
        return self._antipode_gen(name)

    def with_override(self, kind: str, name: str, value) -> "PresentedHopf":
        """A copy whose ``kind`` map (delta/counit/antipode) is altered on one generator."""
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone.overrides = dict(self.overrides)
        clone.overrides[kind, name] = value
        clone._delta_cache, clone._anti_cache = {}, {}
        return clone

    def delta_word(self, word: list[str]) -> TensorElement:
        out = self.tensor_unit()
        for w in word:
            out = self.tensor_mul(out, self.delta_gen(w))
        return out

    def counit_word(self, word: list[str]):
        out = self.one
        for w in word:
            out = out * self.counit_gen(w)
        return out

    def antipode_word(self, word: list[str]) -> Element:
        return self.prod(self.antipode_gen(w) for w in reversed(word))

    def delta_mono(self, m) -> TensorElement:
        hit = self._delta_cache.get(m)
        if hit is None:
            hit = self.delta_word(self.word(m))
            self._delta_cache[m] = hit
        return hit

    def delta(self, x: Element) -> TensorElement:
        out: TensorElement = {}
        for m, c in x.items():
            for k, v in self.delta_mono(m).items():
                _add_into(out, k, c * v)
        return out

    def counit(self, x: Element):
        acc = self.field.zero
        for m, c in x.items():
            acc = acc + c * self.counit_word(self.word(m))
        return acc

    def antipode(self, x: Element) -> Element:
        out: Element = {}
        for m, c in x.items():
            hit = self._anti_cache.get(m)
            if hit is None:
                hit = self.antipode_word(self.word(m))
                self._anti_cache[m] = hit
            for k, v in hit.items():
                _add_into(out, k, c * v)
        return out

    # -- formatting ----------------------------------------------------------
    def format(self, x: Element) -> str:
        if not x:
            return "0"
        parts = []
        for m in sorted(x, key=self.sort_key):
            s = self.field.format(x[m])
            lab = self.label(m)
            if s == "1":
                parts.append("+" + lab)
            elif s == "-1":
                parts.append("-" + lab)
            else:
                parts.append(f"+({s})*{lab}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def format_tensor(self, t: TensorElement) -> str:
        if not t:
            return "0"
        parts = []
        for (a, b) in sorted(t, key=lambda k: (self.sort_key(k[0]), self.sort_key(k[1]))):
            parts.append(f"({self.field.format(t[a, b])}){self.label(a)}(x){self.label(b)}")
        return " + ".join(parts)

    def sort_key(self, m):
        return m

    def block_label(self, C: Coalgebra, block) -> str:
        """Name a simple block of a truncation: a group-like monomial by its label."""
        if block.size == 1:
            v = block.matrix[0][0]
            if len(v) == 1:
                (i, c), = v.items()
                if c == 1:
                    return C.labels[i]
            return C.format_vec(v)
        return "C[" + C.format_vec(block.matrix[0][0]) + "]"


# -- A(n, d, mu, q) -----------------------------------------------------------

def _as_scalar(x):
    if isinstance(x, (int, Fraction)):
        return Scalar(x, 1)
    if isinstance(x, str):
        return parse_param(x)[0]
    return x


def _field_for(*vals):
    orders = [v.order for v in vals if isinstance(v, Scalar)]
    return CyclotomicField(_lcm(*orders) if orders else 1)


def _mult_order(q, bound: int):
    """Multiplicative order of ``q`` if at most ``bound``, else ``None``."""
    p = q
    for k in range(1, bound + 1):
        if p == 1:
            return k
        p = p * q
    return None


class FiniteA(PresentedHopf):
    """A(n, d, mu, q): basis g^a x^b with a < n, b < d."""

    family = "A"
    finite = True

    def __init__(self, n: int, d: int, mu, q):
        mu, q = _as_scalar(mu), _as_scalar(q)
        if n < 1:
            raise ParameterError("n must be a positive integer")
        if d < 2:
            raise ParameterError("d must be at least 2")
        if n % d:
            raise ParameterError(f"order constraint: d={d} must divide n={n}")
        if _mult_order(q, n) != d:
            raise ParameterError(f"order constraint: q={q} must be an n-th root of unity of order exactly d={d}")
        super().__init__(_field_for(mu, q, Scalar.zeta(1)), {"n": n, "d": d, "mu": mu, "q": q})
        self.n, self.d = n, d
        self.mu, self.q = self.F(mu), self.F(q)
        self._qpow = [self.q ** k for k in range(n)]

    @property
    def descriptor(self) -> str:
        return f"A:n={self.n},d={self.d},mu={self.field.format(self.mu)},q={self.field.format(self.q)}"

    def unit(self):
        return {(0, 0): self.one}

    def gen(self, name):
        return {"g": {(1 % self.n, 0): self.one}, "x": {(0, 1): self.one}}[name]

    def _mono_mul(self, a, b):
        (a1, b1), (a2, b2) = a, b
        # x^b1 g^a2 = q^(b1 a2) g^a2 x^b1
        c = self._qpow[(b1 * a2) % self.n]
        g, e = (a1 + a2) % self.n, b1 + b2
        if e < self.d:
            return {(g, e): c}
        out: Element = {}
        if self.mu:
            _add_into(out, (g, e - self.d), c * self.mu)
            _add_into(out, ((g + self.d) % self.n, e - self.d), -c * self.mu)
        return out

    def word(self, m):
        a, b = m
        return ["g"] * a + ["x"] * b

    def _delta_gen(self, name):
        if name == "g":
            g = (1 % self.n, 0)
            return {(g, g): self.one}
        return {((0, 0), (0, 1)): self.one, ((0, 1), (1 % self.n, 0)): self.one}

    def _counit_gen(self, name):
        return self.one if name == "g" else self.field.zero

    def _antipode_gen(self, name):
        if name == "g":
            return {((self.n - 1) % self.n, 0): self.one}
        return self.scale(self.mul(self.gen("x"), {((self.n - 1) % self.n, 0): self.one}), -1)

    def check_generators(self):
        return ["g", "x"]

    def relations(self):
        n, d = self.n, self.d
        return [
            ("g^n = 1", [(1, ["g"] * n), (-1, [])]),
            ("x^d = mu(1 - g^d)", [(1, ["x"] * d), (-self.mu, []), (self.mu, ["g"] * d)]),
            ("xg = q gx", [(1, ["x", "g"]), (-self.q, ["g", "x"])]),
        ]

    def label(self, m):
        return _gx_label(*m)

    def basis(self):
        return [(a, b) for a in range(self.n) for b in range(self.d)]

    def window(self, N=None):
        return self.basis()

    def sample_monomial(self, rng):
        return (rng.randrange(self.n), rng.randrange(self.d))


def _gx_label(a: int, b: int, x: str = "x") -> str:
    parts = []
    if a:
        parts.append("g" if a == 1 else f"g^{a}")
    if b:
        parts.append(x if b == 1 else f"{x}^{b}")
    return "*".join(parts) or "1"


# -- A(n, q) --------------------------------------------------------------------

class InfiniteA(PresentedHopf):
    """A(n, q): basis g^a x^b with a in Z, b < n."""

    family = "Anq"

    def __init__(self, n: int, q):
        q = _as_scalar(q)
        if n < 2:
            raise ParameterError("n must be at least 2")
        if _mult_order(q, n) != n:
            raise ParameterError(f"order constraint: q={q} must be a primitive {n}-th root of unity")
        super().__init__(_field_for(q), {"n": n, "q": q})
        self.n = n
        self.q = self.F(q)

    @property
    def descriptor(self):
        return f"Anq:n={self.n},q={self.field.format(self.q)}"

    def unit(self):
        return {(0, 0): self.one}

    def gen(self, name):
        return {"g": {(1, 0): self.one}, "g^-1": {(-1, 0): self.one}, "x": {(0, 1): self.one}}[name]

    def _mono_mul(self, a, b):
        (a1, b1), (a2, b2) = a, b
        c = self.q ** ((b1 * a2) % self.n)
        g, e = a1 + a2, b1 + b2
        if e < self.n:
            return {(g, e): c}
        out: Element = {}
        _add_into(out, (g, e - self.n), c)
        _add_into(out, (g + self.n, e - self.n), -c)
        return out

    def word(self, m):
        a, b = m
        return (["g"] * a if a >= 0 else ["g^-1"] * (-a)) + ["x"] * b

    def _delta_gen(self, name):
        if name in ("g", "g^-1"):
            g = (1 if name == "g" else -1, 0)
            return {(g, g): self.one}
        return {((0, 1), (0, 0)): self.one, ((1, 0), (0, 1)): self.one}

    def _counit_gen(self, name):
        return self.field.zero if name == "x" else self.one

    def _antipode_gen(self, name):
        if name == "g":
            return self.gen("g^-1")
        if name == "g^-1":
            return self.gen("g")
        return self.scale(self.mul(self.gen("g^-1"), self.gen("x")), -1)

    def check_generators(self):
        return ["g", "g^-1", "x"]

    def relations(self):
        n = self.n
        return [
            ("g g^-1 = 1", [(1, ["g", "g^-1"]), (-1, [])]),
            ("g^-1 g = 1", [(1, ["g^-1", "g"]), (-1, [])]),
            ("xg = q gx", [(1, ["x", "g"]), (-self.q, ["g", "x"])]),
            ("x^n = 1 - g^n", [(1, ["x"] * n), (-1, []), (1, ["g"] * n)]),
        ]

    def label(self, m):
        return _gx_label(*m)

    def window(self, N):
        if N is None:
            raise StructuralError("an infinite-dimensional family needs a truncation bound N")
        return [(a, b) for b in range(self.n) for a in range(-N, N - b + 1)]

    def sample_monomial(self, rng):
        return (rng.randint(-4, 4), rng.randrange(self.n))


# -- H_infinity(chi, lambda) ---------------------------------------------------

def _is_root_of_unity(fld, c) -> bool:
    if isinstance(fld, FunctionField):
        try:
            const = fld._dom.to_sympy(c)
        except Exception:  # pragma: no cover - defensive
            return False
        return bool(const.is_number) and const in (1, -1)
    order = _lcm(2, fld.order)
    return c ** order == 1


class InfiniteH(PresentedHopf):
    """H_inf(chi, lambda): basis g^a x^b with a in Z, b >= 0."""

    family = "Hinf"

    def __init__(self, chi_g, lambda_g):
        if isinstance(chi_g, str) or isinstance(lambda_g, str):
            chi_g = chi_g if not isinstance(chi_g, str) else parse_param(chi_g)[0]
            lambda_g = lambda_g if not isinstance(lambda_g, str) else parse_param(lambda_g)[0]
        transcendental = not isinstance(chi_g, (int, Fraction, Scalar)) or not isinstance(
            lambda_g, (int, Fraction, Scalar))
        if transcendental:
            fld = FunctionField()
        else:
            chi_g, lambda_g = _as_scalar(chi_g), _as_scalar(lambda_g)
            fld = _field_for(chi_g, lambda_g)
        chi, lam = fld(chi_g), fld(lambda_g)
        if not chi:
            raise ParameterError("chi(g) must be nonzero")
        if chi != fld.one and _is_root_of_unity(fld, chi):
            raise ParameterError("chi(g) must be 1 or not a root of unity")
        super().__init__(fld, {"chi": chi, "lambda": lam})
        self.chi, self.lam = chi, lam
        self._xg_cache: dict = {}

    @property
    def descriptor(self):
        return f"Hinf:chi={self.field.format(self.chi)},lambda={self.field.format(self.lam)}"

    def lam_of(self, c: int):
        """lambda(g^c) from the cocycle rule lambda(hf) = chi(h) lambda(f) + lambda(h)."""
        if c >= 0:
            acc = self.field.zero
            p = self.one
            for _ in range(c):
                acc = acc + p
                p = p * self.chi
            return self.lam * acc
        return -(self.chi ** c) * self.lam_of(-c)

    def unit(self):
        return {(0, 0): self.one}

    def gen(self, name):
        return {"g": {(1, 0): self.one}, "g^-1": {(-1, 0): self.one}, "x": {(0, 1): self.one}}[name]

    def _x_pow_times_g(self, b: int, c: int) -> Element:
        """Normal form of x^b g^c."""
        key = (b, c)
        hit = self._xg_cache.get(key)
        if hit is not None:
            return hit
        if b == 0:
            out = {(c, 0): self.one}
        else:
            # x^b g^c = x * (x^(b-1) g^c), and x g^a = chi^a g^a x + lambda(g^a)(g^a - g^(a+1))
            inner = self._x_pow_times_g(b - 1, c)
            out: Element = {}
            for (a, e), coef in inner.items():
                _add_into(out, (a, e + 1), coef * self.chi ** a)
                la = self.lam_of(a)
                if la:
                    _add_into(out, (a, e), coef * la)
                    _add_into(out, (a + 1, e), -coef * la)
        self._xg_cache[key] = out
        return out

    def _mono_mul(self, a, b):
        (a1, b1), (a2, b2) = a, b
        out: Element = {}
        for (g, e), c in self._x_pow_times_g(b1, a2).items():
            _add_into(out, (a1 + g, e + b2), c)
        return out

    def word(self, m):
        a, b = m
        return (["g"] * a if a >= 0 else ["g^-1"] * (-a)) + ["x"] * b

    def _delta_gen(self, name):
        if name in ("g", "g^-1"):
            g = (1 if name == "g" else -1, 0)
            return {(g, g): self.one}
        return {((0, 0), (0, 1)): self.one, ((0, 1), (1, 0)): self.one}

    def _counit_gen(self, name):
        return self.field.zero if name == "x" else self.one

    def _antipode_gen(self, name):
        if name == "g":
            return self.gen("g^-1")
        if name == "g^-1":
            return self.gen("g")
        return self.scale(self.mul(self.gen("x"), self.gen("g^-1")), -1)

    def check_generators(self):
        return ["g", "g^-1", "x"]

    def relations(self):
        return [
            ("g g^-1 = 1", [(1, ["g", "g^-1"]), (-1, [])]),
            ("g^-1 g = 1", [(1, ["g^-1", "g"]), (-1, [])]),
            ("xg = chi gx + lambda(g - g^2)",
             [(1, ["x", "g"]), (-self.chi, ["g", "x"]), (-self.lam, ["g"]), (self.lam, ["g", "g"])]),
        ]

    def label(self, m):
        return _gx_label(*m)

    def window(self, N):
        if N is None:
            raise StructuralError("an infinite-dimensional family needs a truncation bound N")
        return [(a, b) for b in range(2 * N + 1) for a in range(-N, N - b + 1)]

    def sample_monomial(self, rng):
        return (rng.randint(-3, 3), rng.randrange(4))


# -- B^{m,n}(lambda, s, t, k) ------------------------------------------------

class TwoGroupB(PresentedHopf):
    """B^{m,n}: basis g^a h^b x^e y^f, (a, b) a canonical coset representative."""

    family = "B"

    def __init__(self, m: int, n: int, lam, s, t, k):
        lam, s, t, k = (_as_scalar(v) for v in (lam, s, t, k))
        if (m, n) in ((1, 1), (-1, -1)):
            raise ParameterError("(m, n) must differ from +-(1, 1)")
        if (m + n) % 2:
            raise ParameterError("m + n must be even")
        if not lam:
            raise ParameterError("lambda must be nonzero")
        fld = _field_for(lam, s, t, k)
        L = fld(lam)
        g = math.gcd(m, n)
        if g and L ** g != 1:
            raise ParameterError(f"lambda^gcd(m,n) = 1 is required for g^m = h^n to be compatible (gcd={g})")
        if (s or t) and L ** 2 != 1:
            raise ParameterError("s or t nonzero requires lambda^2 = 1")
        if k and L != 1:
            raise ParameterError("k nonzero requires lambda = 1")
        super().__init__(fld, {"m": m, "n": n, "lambda": lam, "s": s, "t": t, "k": k})
        self.m, self.n = m, n
        self.lam, self.s, self.t, self.k = L, fld(s), fld(t), fld(k)
        self.lam_inv = 1 / L
        # characters: x G = chi_x(G) G x, y G = chi_y(G) G y
        self._chi_x = (-self.one, -L)
        self._chi_y = (-self.lam_inv, -self.one)

    @property
    def descriptor(self):
        f = self.field.format
        return f"B:m={self.m},n={self.n},lambda={f(self.lam)},s={f(self.s)},t={f(self.t)},k={f(self.k)}"

    def canon(self, a: int, b: int) -> tuple[int, int]:
        """Canonical representative of (a, b) modulo the lattice generated by (m, -n)."""
        return canonical_coset(a, b, self.m, self.n)

    def _chi(self, which, G):
        base = self._chi_x if which == "x" else self._chi_y
        return base[0] ** G[0] * base[1] ** G[1]

    def unit(self):
        return {((0, 0), 0, 0): self.one}

    def gen(self, name):
        table = {
            "g": ((1, 0), 0, 0), "h": ((0, 1), 0, 0),
            "g^-1": ((-1, 0), 0, 0), "h^-1": ((0, -1), 0, 0),
            "x": ((0, 0), 1, 0), "y": ((0, 0), 0, 1),
        }
        G, e, f = table[name]
        return {(self.canon(*G), e, f): self.one}

    def _append(self, term, letter) -> list:
        """Multiply a normal term ``(coef, G, e, f)`` on the right by a letter."""
        coef, G, e, f = term
        if isinstance(letter, tuple):
            c = coef * self._chi("x", letter) ** e * self._chi("y", letter) ** f
            return [(c, (G[0] + letter[0], G[1] + letter[1]), e, f)]
        if letter == "y":
            if not f:
                return [(coef, G, e, 1)]
            # ... y y = t (1 - h^2)
            if not self.t:
                return []
            base = (coef * self.t, G, e, 0)
            return [base] + self._append_seq((-coef * self.t, G, e, 0), [(0, 2)])
        # letter == "x"
        if f:
            # ... y x = lambda^-1 k (1 - gh) - lambda^-1 x y
            base = (coef, G, e, 0)
            out = []
            if self.k:
                kk = self.lam_inv * self.k
                out += self._append_seq((coef * kk, G, e, 0), [])
                out += self._append_seq((-coef * kk, G, e, 0), [(1, 1)])
            out += self._append_seq((-coef * self.lam_inv, G, e, 0), ["x", "y"])
            del base
            return out
        if not e:
            return [(coef, G, 1, 0)]
        # ... x x = s (1 - g^2)
        if not self.s:
            return []
        return [(coef * self.s, G, 0, 0)] + self._append_seq((-coef * self.s, G, 0, 0), [(2, 0)])

    def _append_seq(self, term, letters) -> list:
        terms = [term]
        for L in letters:
            nxt = []
            for t in terms:
                nxt.extend(self._append(t, L))
            terms = nxt
        return terms

    def _mono_mul(self, a, b):
        G1, e1, f1 = a
        G2, e2, f2 = b
        letters = [G2] + ["x"] * e2 + ["y"] * f2
        out: Element = {}
        for c, G, e, f in self._append_seq((self.one, G1, e1, f1), letters):
            if c:
                _add_into(out, (self.canon(*G), e, f), c)
        return out

    def word(self, m):
        (a, b), e, f = m
        w = ["g"] * a if a >= 0 else ["g^-1"] * (-a)
        w += ["h"] * b if b >= 0 else ["h^-1"] * (-b)
        return w + ["x"] * e + ["y"] * f

    def _delta_gen(self, name):
        if name in ("g", "h", "g^-1", "h^-1"):
            (G, _, _), = self.gen(name)
            mono = (G, 0, 0)
            return {(mono, mono): self.one}
        one = (self.canon(0, 0), 0, 0)
        if name == "x":
            return {(one, (one[0], 1, 0)): self.one, ((one[0], 1, 0), (self.canon(1, 0), 0, 0)): self.one}
        return {(one, (one[0], 0, 1)): self.one, ((one[0], 0, 1), (self.canon(0, 1), 0, 0)): self.one}

    def _counit_gen(self, name):
        return self.field.zero if name in ("x", "y") else self.one

    def _antipode_gen(self, name):
        inv = {"g": "g^-1", "g^-1": "g", "h": "h^-1", "h^-1": "h"}
        if name in inv:
            return self.gen(inv[name])
        grp = "g^-1" if name == "x" else "h^-1"
        return self.scale(self.mul(self.gen(name), self.gen(grp)), -1)

    def check_generators(self):
        return ["g", "h", "g^-1", "h^-1", "x", "y"]

    def relations(self):
        m, n = self.m, self.n
        gm = ["g"] * m if m >= 0 else ["g^-1"] * (-m)
        hn = ["h"] * n if n >= 0 else ["h^-1"] * (-n)
        return [
            ("g g^-1 = 1", [(1, ["g", "g^-1"]), (-1, [])]),
            ("h h^-1 = 1", [(1, ["h", "h^-1"]), (-1, [])]),
            ("gh = hg", [(1, ["g", "h"]), (-1, ["h", "g"])]),
            ("g^m = h^n", [(1, gm), (-1, hn)]),
            ("xy + lambda yx = k(1 - gh)", [(1, ["x", "y"]), (self.lam, ["y", "x"]), (-self.k, []), (self.k, ["g", "h"])]),
            ("gx + xg = 0", [(1, ["g", "x"]), (1, ["x", "g"])]),
            ("lambda hx + xh = 0", [(self.lam, ["h", "x"]), (1, ["x", "h"])]),
            ("x^2 = s(1 - g^2)", [(1, ["x", "x"]), (-self.s, []), (self.s, ["g", "g"])]),
            ("hy + yh = 0", [(1, ["h", "y"]), (1, ["y", "h"])]),
            ("gy + lambda yg = 0", [(1, ["g", "y"]), (self.lam, ["y", "g"])]),
            ("y^2 = t(1 - h^2)", [(1, ["y", "y"]), (-self.t, []), (self.t, ["h", "h"])]),
        ]

    def label(self, m):
        (a, b), e, f = m
        parts = []
        if a:
            parts.append("g" if a == 1 else f"g^{a}")
        if b:
            parts.append("h" if b == 1 else f"h^{b}")
        if e:
            parts.append("x")
        if f:
            parts.append("y")
        return "*".join(parts) or "1"

    def window(self, N):
        if N is None:
            raise StructuralError("an infinite-dimensional family needs a truncation bound N")
        out = set()
        for e in (0, 1):
            for f in (0, 1):
                for a in range(-N, N - e + 1):
                    for b in range(-N, N - f + 1):
                        out.add((self.canon(a, b), e, f))
        return sorted(out)

    def sample_monomial(self, rng):
        return (self.canon(rng.randint(-3, 3), rng.randint(-3, 3)), rng.randrange(2), rng.randrange(2))


def canonical_coset(a: int, b: int, m: int, n: int) -> tuple[int, int]:
    """Representative of (a, b) in Z^2 / <(m, -n)> in Hermite-reduced form.

    The lattice has the single generator (m, -n).  When m != 0 the first
    coordinate is reduced into [0, |m|); when m == 0 and n != 0 the second is
    reduced into [0, |n|).
    """
    if m:
        r = a % abs(m)
        return (r, b + (a - r) // m * n)
    if n:
        r = b % abs(n)
        return (a, r)
    return (a, b)


# -- H(e+-, f+-, u, v) -----------------------------------------------------

_TAILS = ("", "u", "v", "uv")
_TAIL_LEN = (0, 1, 1, 2)
# tail products: (sign, tail) or None for zero
_TAIL_MUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): None, (1, 2): (1, 3), (1, 3): None,
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): None, (2, 3): None,
    (3, 0): (1, 3), (3, 1): None, (3, 2): None, (3, 3): None,
}


class Hefuv(PresentedHopf):
    """Monomials ``(c, i, t)``: c = 0 for e_i, 1 for f_i; t indexes 1, u, v, uv."""

    family = "Hefuv"

    def __init__(self, index_window: int = 2):
        super().__init__(CyclotomicField(1), {})
        self.index_window = index_window

    @property
    def descriptor(self):
        return "Hefuv"

    def unit(self):
        return {(0, 0, 0): self.one, (1, 0, 0): self.one}

    def grouplike_g(self) -> Element:
        return {(0, 0, 0): self.one, (1, 0, 0): -self.one}

    def gen(self, name):
        if name in ("u", "v"):
            t = 1 if name == "u" else 2
            return {(0, 0, t): self.one, (1, 0, t): self.one}
        c, i = _parse_ef(name)
        return {(c, i, 0): self.one}

    def _mono_mul(self, a, b):
        c1, i, t1 = a
        c2, j, t2 = b
        if c1 != c2:
            return {}
        prod = _TAIL_MUL[t1, t2]
        if prod is None:
            return {}
        sign = prod[0] * (-1 if (j * _TAIL_LEN[t1]) % 2 else 1)
        return {(c1, i + j, prod[1]): self.one if sign > 0 else -self.one}

    def word(self, m):
        c, i, t = m
        w = [("e" if c == 0 else "f") + str(i)]
        return w + list(_TAILS[t])

    def _e(self, i):
        return (0, i, 0)

    def _f(self, i):
        return (1, i, 0)

    def _delta_gen(self, name):
        one = self.unit()
        if name == "u":
            return self.tensor_add(self.tensor(one, self.gen("u")),
                                   self.tensor(self.gen("u"), self.gen("e1")),
                                   self.tensor(self.gen("v"), self.gen("f-1")))
        if name == "v":
            return self.tensor_add(self.tensor(one, self.gen("v")),
                                   self.tensor(self.gen("u"), self.gen("f1")),
                                   self.tensor(self.gen("v"), self.gen("e-1")))
        c, i = _parse_ef(name)
        if c == 0:
            return {(self._e(i), self._e(i)): self.one, (self._f(i), self._f(-i)): self.one}
        return {(self._e(i), self._f(i)): self.one, (self._f(i), self._e(-i)): self.one}

    def _counit_gen(self, name):
        if name in ("u", "v"):
            return self.field.zero
        c, _ = _parse_ef(name)
        return self.one if c == 0 else self.field.zero

    def _antipode_gen(self, name):
        u, v = self.gen("u"), self.gen("v")
        if name == "u":
            return self.scale(self.add(self.mul(v, self.gen("f-1")), self.mul(u, self.gen("e-1"))), -1)
        if name == "v":
            return self.scale(self.add(self.mul(u, self.gen("f1")), self.mul(v, self.gen("e1"))), -1)
        c, i = _parse_ef(name)
        return {self._e(-i): self.one} if c == 0 else {self._f(i): self.one}

    def check_generators(self):
        w = self.index_window
        out = []
        for i in range(-w, w + 1):
            out += [f"e{i}", f"f{i}"]
        return out + ["u", "v"]

    def relations(self):
        w = self.index_window
        rels = [("1 = e0 + f0", [(1, ["e0"]), (1, ["f0"]), (-1, [])])]
        for i in range(-w, w + 1):
            for j in range(-w, w + 1):
                rels.append((f"e{i} e{j} = e{i + j}", [(1, [f"e{i}", f"e{j}"]), (-1, [f"e{i + j}"])]))
                rels.append((f"f{i} f{j} = f{i + j}", [(1, [f"f{i}", f"f{j}"]), (-1, [f"f{i + j}"])]))
                rels.append((f"e{i} f{j} = 0", [(1, [f"e{i}", f"f{j}"])]))
                rels.append((f"f{j} e{i} = 0", [(1, [f"f{j}", f"e{i}"])]))
        for i in range(-w, w + 1):
            sign = -1 if i % 2 else 1
            for p in ("e", "f"):
                for x in ("u", "v"):
                    rels.append((f"{p}{i} {x} = (-1)^{i} {x} {p}{i}",
                                 [(1, [f"{p}{i}", x]), (-sign, [x, f"{p}{i}"])]))
        rels += [
            ("u^2 = 0", [(1, ["u", "u"])]),
            ("v^2 = 0", [(1, ["v", "v"])]),
            ("uv = -vu", [(1, ["u", "v"]), (1, ["v", "u"])]),
        ]
        return rels

    def label(self, m):
        c, i, t = m
        head = ("e" if c == 0 else "f") + str(i)
        return head + ("*" + _TAILS[t] if t else "")

    def sort_key(self, m):
        c, i, t = m
        return (t, c, i)

    def literal_window(self, N, boundary: bool = True):
        """span{e_i w, f_i w : |i| <= N}, plus C_{N+1} when ``boundary``.

        This span is not closed under Delta: Delta(e_N uv) contains
        e_N u (x) e_{N+1} v.  :meth:`window` adds the four missing monomials.
        """
        if N is None:
            raise StructuralError("H(e,f,u,v) is infinite-dimensional; give a truncation bound N")
        out = [(c, i, t) for t in range(4) for c in (0, 1) for i in range(-N, N + 1)]
        if boundary:
            out += [(c, i, 0) for c in (0, 1) for i in (-N - 1, N + 1)]
        return out

    def window(self, N):
        """Smallest Delta-closed span containing :meth:`literal_window`."""
        out = self.literal_window(N)
        M = N + 1
        # e_{-M} u, e_M v, f_M u, f_{-M} v
        return out + [(0, -M, 1), (0, M, 2), (1, M, 1), (1, -M, 2)]

    def sample_monomial(self, rng):
        return (rng.randrange(2), rng.randint(-3, 3), rng.randrange(4))

    # -- named pieces used by the comodule constructions ----------------------
    def block_label(self, C: Coalgebra, block) -> str:
        """1 = e0 + f0, g = e0 - f0 and C_i = span{e_i, f_i, e_-i, f_-i}."""
        if block.size == 1:
            v = block.matrix[0][0]
            e0, f0 = C.index("e0"), C.index("f0")
            if set(v) == {e0, f0}:
                return "1" if v[e0] == v[f0] else "g"
            return C.format_vec(v)
        i = min(abs(self_i) for self_i in (_parse_ef(C.labels[p])[1] for p in block.space.pivots))
        return f"C{i}" if i else C.format_vec(block.matrix[0][0])

    def simple_matrix(self, i: int) -> list[list[Element]]:
        """The basic multiplicative matrix [[e_i, f_i], [f_-i, e_-i]] of C_i."""
        return [[{self._e(i): self.one}, {self._f(i): self.one}],
                [{self._f(-i): self.one}, {self._e(-i): self.one}]]


_EF = re.compile(r"([ef])(-?\d+)$")


def _parse_ef(name: str) -> tuple[int, int]:
    m = _EF.match(name)
    if not m:
        raise KeyError(f"unknown generator {name!r}")
    return (0 if m.group(1) == "e" else 1), int(m.group(2))


# -- builders --------------------------------------------------------------

def build_A(n: int, d: int, mu, q) -> FiniteA:
    return FiniteA(n, d, mu, q)


def build_Anq(n: int, q) -> InfiniteA:
    return InfiniteA(n, q)


def build_Hinf(chi_g, lambda_g) -> InfiniteH:
    return InfiniteH(chi_g, lambda_g)


def build_Bmn(m: int, n: int, lam, s, t, k) -> TwoGroupB:
    return TwoGroupB(m, n, lam, s, t, k)


def build_Hefuv() -> Hefuv:
    return Hefuv()


def multiply(h: PresentedHopf, a: Element, b: Element) -> Element:
    return h.mul(a, b)


def delta(h: PresentedHopf, a: Element) -> TensorElement:
    return h.delta(a)


def antipode(h: PresentedHopf, a: Element) -> Element:
    return h.antipode(a)


def counit(h: PresentedHopf, a: Element):
    return h.counit(a)


# -- Hopf axioms -------------------------------------------------------------

def _delta_tensor_left(h: PresentedHopf, t: TensorElement) -> dict:
    out: dict = {}
    for (a, b), c in t.items():
        for (a1, a2), d in h.delta_mono(a).items():
            _add_into(out, (a1, a2, b), c * d)
    return out


def _delta_tensor_right(h: PresentedHopf, t: TensorElement) -> dict:
    out: dict = {}
    for (a, b), c in t.items():
        for (b1, b2), d in h.delta_mono(b).items():
            _add_into(out, (a, b1, b2), c * d)
    return out


def _mult_after(h: PresentedHopf, t: TensorElement, left_s: bool) -> Element:
    out: Element = {}
    for (a, b), c in t.items():
        x = h.antipode(h.mono(a)) if left_s else h.mono(a)
        y = h.mono(b) if left_s else h.antipode(h.mono(b))
        for m, v in h.mul(x, y).items():
            _add_into(out, m, c * v)
    return out


def verify_hopf_axioms(h: PresentedHopf) -> Report:
    """Mechanical check of the Hopf axioms on generators and defining relations.

    Step 1: Delta and epsilon respect every relation.
    Step 2: coassociativity and counit on every generator.
    Step 3: S (as an anti-homomorphism) respects every relation.
    Step 4: m(S (x) id)Delta = epsilon 1 = m(id (x) S)Delta on every generator.
    Relations of families with infinitely many generators are checked on the
    family's index window.
    """
    rep = Report(f"Hopf axioms for {h.descriptor}")
    rels = h.relations()
    # relation soundness (each relation rewrites to zero)
    for name, terms in rels:
        val = h.add(*[h.scale(h.eval_word(w), c) for c, w in terms])
        rep.add(f"Relation: {name} holds in normal form", not val, h.format(val) if val else "")
    unit = h.unit()
    rep.add("Unit: Delta(1) = 1(x)1", h.delta(unit) == h.tensor_unit())
    rep.add("Unit: epsilon(1) = 1", h.counit(unit) == 1)
    rep.add("Unit: S(1) = 1", h.antipode(unit) == unit)
    for name, terms in rels:
        t = h.tensor_add(*[h.tensor_scale(h.delta_word(w), c) for c, w in terms])
        rep.add(f"Step 1: Delta respects {name}", not t, h.format_tensor(t) if t else "")
        e = sum((h.F(c) * h.counit_word(w) for c, w in terms), h.field.zero)
        rep.add(f"Step 1: epsilon respects {name}", not e, h.field.format(e) if e else "")
    for g in h.check_generators():
        d = h.delta_gen(g)
        left = _delta_tensor_left(h, d)
        right = _delta_tensor_right(h, d)
        diff = dict(left)
        for k, c in right.items():
            _add_into(diff, k, -c)
        rep.add(f"Step 2: coassociativity on {g}", not diff, f"{len(diff)} residual terms" if diff else "")
        lc: Element = {}
        rc: Element = {}
        for (a, b), c in d.items():
            ea = h.counit(h.mono(a))
            eb = h.counit(h.mono(b))
            if ea:
                _add_into(lc, b, c * ea)
            if eb:
                _add_into(rc, a, c * eb)
        gen = h.gen(g)
        ok = lc == gen and rc == gen
        rep.add(f"Step 2: counit on {g}", ok, "" if ok else f"{h.format(lc)} / {h.format(rc)}")
    for name, terms in rels:
        val = h.add(*[h.scale(h.antipode_word(w), c) for c, w in terms])
        rep.add(f"Step 3: S reverses {name}", not val, h.format(val) if val else "")
    for g in h.check_generators():
        d = h.delta_gen(g)
        target = h.scale(unit, h.counit_gen(g))
        for side, left_s in (("S(x1)x2", True), ("x1S(x2)", False)):
            val = _mult_after(h, d, left_s)
            res = h.sub(val, target)
            rep.add(f"Step 4: {side} = epsilon({g})1", not res, h.format(res) if res else "")
    return rep


# -- truncation --------------------------------------------------------------

def truncate_coalgebra(h: PresentedHopf, N: int | None = None, basis: list | None = None,
                       name: str = "") -> Coalgebra:
    """Structure-constant coalgebra on a Delta-closed span of normal monomials.

    ``basis`` overrides the family's window.  Closure is verified; any basis
    element whose coproduct escapes the span is reported.
    """
    monos = list(basis) if basis is not None else h.window(N)
    monos = sorted(set(monos), key=h.label)
    index = {m: i for i, m in enumerate(monos)}
    offenders = []
    rows = []
    for m in sorted(monos, key=h.sort_key):
        d = h.delta_mono(m)
        bad = [(a, b) for (a, b) in d if a not in index or b not in index]
        if bad:
            a, b = min(bad, key=lambda k: (h.sort_key(k[0]), h.sort_key(k[1])))
            offenders.append((m, a, b))
    if offenders:
        first = offenders[0]
        msg = "; ".join(f"Delta({h.label(m)}) has term {h.label(a)}(x){h.label(b)}" for m, a, b in offenders)
        raise TruncationError(f"truncation not a subcoalgebra: {msg}", [h.label(m) for m, _, _ in offenders])
        del first
    for m in monos:
        row = tuple(sorted((index[a], index[b], c) for (a, b), c in h.delta_mono(m).items()))
        rows.append(row)
    counit = tuple(h.counit(h.mono(m)) for m in monos)

    def product(i: int, j: int):
        out = {}
        for mono, c in h.mono_mul(monos[i], monos[j]).items():
            if mono not in index:
                raise WindowEscape(f"product {h.label(monos[i])}*{h.label(monos[j])} leaves the window at {h.label(mono)}")
            out[index[mono]] = c
        return out

    label = name or (f"{h.descriptor} truncated at N={N}" if N is not None else h.descriptor)
    C = Coalgebra(h.field, tuple(h.label(m) for m in monos), tuple(rows), counit, product, label)
    object.__setattr__(C, "monomials", tuple(monos))
    object.__setattr__(C, "hopf", h)
    object.__setattr__(C, "block_namer", h.block_label)
    return C


def element_to_vec(C: Coalgebra, x: Element) -> dict:
    """Map a normal-form element into the coordinates of a truncation."""
    index = {m: i for i, m in enumerate(C.monomials)}
    out = {}
    for m, c in x.items():
        if m not in index:
            raise WindowEscape(f"{C.hopf.label(m)} is outside the truncation")
        out[index[m]] = c
    return out


# -- descriptors ----------------------------------------------------------------

def parse_descriptor(text: str):
    """Build a family from a descriptor such as ``A:n=4,d=2,mu=1,q=zeta4^2``."""
    head, _, rest = text.partition(":")
    kv = {}
    if rest:
        for part in rest.split(","):
            if "=" not in part:
                raise StructuralError(f"malformed descriptor parameter {part!r}")
            k, v = part.split("=", 1)
            kv[k.strip()] = v.strip()

    def need(*keys):
        missing = [k for k in keys if k not in kv]
        if missing:
            raise StructuralError(f"descriptor {head} is missing {', '.join(missing)}")

    def num(k):
        try:
            return int(kv[k])
        except ValueError:
            raise StructuralError(f"parameter {k} must be an integer") from None

    def val(k):
        try:
            return parse_param(kv[k])[0]
        except (ValueError, ZeroDivisionError):
            raise StructuralError(f"cannot parse parameter {k}={kv[k]!r}") from None

    head = head.strip()
    if head == "Hefuv":
        return build_Hefuv()
    if head == "A":
        need("n", "d", "mu", "q")
        return build_A(num("n"), num("d"), val("mu"), val("q"))
    if head == "Anq":
        need("n", "q")
        return build_Anq(num("n"), val("q"))
    if head == "Hinf":
        need("chi", "lambda")
        return build_Hinf(val("chi"), val("lambda"))
    if head in ("B", "Bmn"):
        need("m", "n")
        return build_Bmn(num("m"), num("n"), val("lambda") if "lambda" in kv else Scalar(1),
                         val("s") if "s" in kv else 0, val("t") if "t" in kv else 0,
                         val("k") if "k" in kv else 0)
    raise StructuralError(f"unknown family {head!r}")


@dataclass
class Truncation:
    """Convenience bundle: the family, the bound and the coalgebra."""

    hopf: PresentedHopf
    N: int | None
    coalgebra: Coalgebra
