"""Exact scalars.

Two ground fields are supported:

* ``CyclotomicField(n)``: Q(zeta_n), elements are :class:`Scalar` values stored
  as rational coefficient vectors in powers of zeta reduced modulo the n-th
  cyclotomic polynomial.
* ``FunctionField()``: Q(t), used when a parameter must be transcendental
  (for instance a character value that is not a root of unity).

Both expose the same small interface (coercion, parsing, formatting and
polynomial factorisation) so the linear algebra layer can stay generic.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.fields import FracElement


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _divide_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _divide_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta^k reduced to the power basis, for k < max(2*deg - 1, n)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(max(2 * deg - 1, n)):
        rows.append(tuple(cur))
        # multiply by zeta
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _reduce(n: int, coeffs) -> tuple[Fraction, ...]:
    table = _reduction_table(n)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k < deg:
            out[k] += c
            continue
        if k >= len(table):
            # zeta^n = 1
            k %= n
            if k < deg:
                out[k] += c
                continue
        for j, r in enumerate(table[k]):
            if r:
                out[j] += c * r
    return tuple(out)


class Scalar:
    """An element of Q(zeta_n) in the reduced power basis."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs=(0,), order: int = 1):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        self.order = order
        self.coeffs = _reduce(order, [Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> "Scalar":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Scalar":
        k %= n
        return cls([0] * k + [1], n)

    # -- coercion -------------------------------------------------------
    def lift(self, order: int) -> "Scalar":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) in Q(zeta_{order})")
        step = order // self.order
        spread = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            spread[k * step] = c
        return Scalar._raw(order, _reduce(order, spread))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.order == self.order:
                return self, other
            m = self.order * other.order // math.gcd(self.order, other.order)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            deg = len(self.coeffs)
            return self, Scalar._raw(self.order, (Fraction(other),) + (Fraction(0),) * (deg - 1))
        return NotImplemented, NotImplemented

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Scalar._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Scalar._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.order, tuple(x * other for x in self.coeffs))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a.coeffs) == 1:
            return Scalar._raw(a.order, (a.coeffs[0] * b.coeffs[0],))
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Scalar._raw(a.order, _reduce(a.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if len(self.coeffs) == 1:
            return Scalar._raw(self.order, (1 / self.coeffs[0],))
        inv = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_poly(self.order)])
        return Scalar._raw(self.order, _reduce(self.order, inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.order, tuple(x / other for x in self.coeffs))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar._raw(self.order, (Fraction(1),) + (Fraction(0),) * (len(self.coeffs) - 1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, Scalar):
            a, b = self._coerce(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Scalar({format_poly(self.coeffs)!r}, order={self.order})"

    def __str__(self):
        return format_poly(self.coeffs)


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_poly_trim(a)) >= len(b):
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = c
        for j, y in enumerate(b):
            a[s + j] -= c * y
    return q, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_inverse_mod(a, m):
    # extended Euclid: returns u with u*a = 1 mod m
    r0, r1 = list(m), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(_poly_trim(r1)) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    c = r1[0]
    return [x / c for x in s1]


# -- text format ------------------------------------------------------------

def format_poly(coeffs, var: str = "z") -> str:
    """Render rational coefficients as ``p(z)/q`` with integral ``p``."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    terms = []
    for k in range(len(ints) - 1, -1, -1):
        c = ints[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += sign + body
    if den == 1:
        return text
    if len(terms) > 1:
        text = f"({text})"
    return f"{text}/{den}"


_TERM = re.compile(r"([+-]?)(\d*)\*?(?:(z|zeta)(?:\^(\d+))?)?")


def parse_poly(text: str) -> list[Fraction]:
    """Inverse of :func:`format_poly`; accepts ``p(z)``, ``p(z)/q`` and ``(p(z))/q``."""
    s = text.replace(" ", "")
    den = 1
    m = re.fullmatch(r"(.*)/(\d+)", s)
    if m and m.group(1):
        s, den = m.group(1), int(m.group(2))
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError(f"empty scalar string {text!r}")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse scalar {text!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        k = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    top = max(coeffs)
    return [Fraction(coeffs.get(k, 0), den) for k in range(top + 1)]


# -- fields -----------------------------------------------------------------

class CyclotomicField:
    """Q(zeta_n) with helpers used throughout the library."""

    def __init__(self, order: int = 1):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.degree = len(cyclotomic_poly(order)) - 1
        self.zero = Scalar(0, order)
        self.one = Scalar(1, order)

    def __repr__(self):
        return f"CyclotomicField({self.order})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("cyclotomic", self.order))

    def __call__(self, x) -> Scalar:
        if isinstance(x, Scalar):
            return x.lift(self.order)
        if isinstance(x, (int, Fraction)):
            return Scalar(x, self.order)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def zeta(self, k: int = 1) -> Scalar:
        return Scalar.zeta(self.order, k)

    def parse(self, text: str) -> Scalar:
        return Scalar(parse_poly(text), self.order)

    def format(self, x) -> str:
        return str(self(x))

    def to_json(self) -> dict:
        return {"cyclotomic_order": self.order}

    # -- factorisation (delegated to sympy) -------------------------------
    def _sympy_domain(self):
        if self.degree == 1:
            return sympy.QQ
        return sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / self.order))

    def factor(self, coeffs) -> list[list[Scalar]]:
        """Monic irreducible factors (with multiplicity collapsed) of a polynomial.

        ``coeffs`` lists the coefficients constant term first.
        """
        dom = self._sympy_domain()
        X = sympy.Symbol("X")
        if self.degree == 1:
            conv = [sympy.QQ(c.to_fraction().numerator, c.to_fraction().denominator)
                    for c in map(self, coeffs)]
        else:
            conv = [dom.new([sympy.QQ(q.numerator, q.denominator)
                             for q in reversed(self(c).coeffs)]) for c in coeffs]
        poly = sympy.Poly.from_list(list(reversed(conv)), X, domain=dom)
        out = []
        for fac, _ in poly.factor_list()[1]:
            fac = fac.monic()
            cs = []
            for c in reversed(fac.rep.to_list()):
                if self.degree == 1:
                    cs.append(Scalar(Fraction(int(c.numerator), int(c.denominator)), self.order))
                else:
                    lst = c.to_list() if hasattr(c, "to_list") else list(c.rep)
                    cs.append(Scalar([Fraction(int(q.numerator), int(q.denominator))
                                      for q in reversed(lst)], self.order))
            out.append(cs)
        return out


class FunctionField:
    """Q(t): rational functions in one indeterminate ``t`` (treated as transcendental)."""

    def __init__(self, var: str = "t"):
        self.var = var
        self._dom = sympy.QQ.frac_field(sympy.Symbol(var))
        self.zero = self._dom.zero
        self.one = self._dom.one
        self.t = self._dom.gens[0]

    def __repr__(self):
        return f"FunctionField({self.var!r})"

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.var == self.var

    def __hash__(self):
        return hash(("function", self.var))

    def __call__(self, x):
        if isinstance(x, Scalar):
            x = x.to_fraction()
        if isinstance(x, Fraction):
            return self._dom(sympy.Rational(x.numerator, x.denominator))
        if isinstance(x, int):
            return self._dom(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, FracElement):
            return x
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str):
        return self._dom.from_sympy(sympy.sympify(text, locals={self.var: sympy.Symbol(self.var)}))

    def format(self, x) -> str:
        return str(self._dom.to_sympy(self(x)))

    def to_json(self) -> dict:
        return {"function_field": self.var}

    def factor(self, coeffs) -> list[list]:
        X = sympy.Symbol("X")
        poly = sympy.Poly.from_list([self(c) for c in reversed(coeffs)], X, domain=self._dom)
        return [list(reversed(fac.monic().rep.to_list())) for fac, _ in poly.factor_list()[1]]


def field_from_json(spec: dict):
    if "function_field" in spec:
        return FunctionField(spec["function_field"])
    return CyclotomicField(int(spec.get("cyclotomic_order", 1)))


def parse_param(text: str, field=None):
    """Parse a parameter value such as ``-1``, ``1/2``, ``zeta4^2``, ``i`` or ``t``.

    Returns ``(value, order)`` where ``order`` is the smallest cyclotomic order
    needed to hold the value (``None`` for the transcendental marker ``t``).
    """
    s = text.replace(" ", "")
    if isinstance(field, FunctionField) or s == "t":
        ff = field if isinstance(field, FunctionField) else FunctionField()
        return ff.parse(s), None
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    m = re.fullmatch(r"zeta(\d+)(?:\^(-?\d+))?", s)
    if m:
        n, k = int(m.group(1)), int(m.group(2) or 1)
        return Scalar.zeta(n, k) * sign, n
    if s == "i":
        return Scalar.zeta(4, 1) * sign, 4
    q = Fraction(s) * sign
    return Scalar(q, 1), 1
