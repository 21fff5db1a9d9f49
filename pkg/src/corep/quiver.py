"""Quivers, link quivers and the representation-type criteria built on them.

Two independent routes produce link quivers: wedge computations on a
coalgebra, and fusion coefficients of a based ring.  Dynkin recognition is
combinatorial; :func:`spectral_class` is an independent exact oracle based on
the definiteness of 2I - A.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .coalgebra import Coalgebra, coradical, wedge
from .fusion import BasedRing, natural_key
from .hopf import canonical_coset
from .report import Report, StructuralError


@dataclass
class Quiver:
    vertices: dict  # label -> weight (square root of the simple's dimension)
    arrows: dict = field(default_factory=dict)  # (src, dst) -> multiplicity
    unit: str | None = "1"

    def add_arrow(self, src: str, dst: str, mult: int = 1) -> None:
        if src not in self.vertices or dst not in self.vertices:
            raise StructuralError(f"arrow {src}->{dst} uses an unknown vertex")
        if mult:
            self.arrows[src, dst] = self.arrows.get((src, dst), 0) + mult

    def mult(self, src: str, dst: str) -> int:
        return self.arrows.get((src, dst), 0)

    def out_degree(self, v: str) -> int:
        return sum(m for (s, _), m in self.arrows.items() if s == v)

    def in_degree(self, v: str) -> int:
        return sum(m for (_, d), m in self.arrows.items() if d == v)

    def arrows_into(self, v: str) -> dict:
        return {s: m for (s, d), m in self.arrows.items() if d == v}

    def arrows_from(self, v: str) -> dict:
        return {d: m for (s, d), m in self.arrows.items() if s == v}

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and {k: v for k, v in self.arrows.items() if v} == {
            k: v for k, v in other.arrows.items() if v}

    def restrict(self, labels) -> "Quiver":
        keep = set(labels)
        q = Quiver({v: w for v, w in self.vertices.items() if v in keep},
                   unit=self.unit if self.unit in keep else None)
        for (s, d), m in self.arrows.items():
            if s in keep and d in keep:
                q.arrows[s, d] = m
        return q

    def to_json(self) -> dict:
        return {
            "vertices": [{"label": v, "weight": w} for v, w in self.vertices.items()],
            "arrows": [{"src": s, "dst": d, "mult": m} for (s, d), m in sorted(
                self.arrows.items(), key=lambda kv: (self._order(kv[0][0]), self._order(kv[0][1])))],
        }

    def _order(self, v):
        return list(self.vertices).index(v)

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        try:
            verts = {}
            for v in data["vertices"]:
                lab = str(v["label"])
                if lab in verts:
                    raise StructuralError(f"duplicate vertex label {lab!r}")
                verts[lab] = int(v.get("weight", 1))
            q = cls(verts, unit=data.get("unit", "1") if data.get("unit", "1") in verts else None)
            for a in data.get("arrows", []):
                m = int(a.get("mult", 1))
                if m < 1:
                    raise StructuralError("arrow multiplicities must be at least 1")
                q.add_arrow(str(a["src"]), str(a["dst"]), m)
            return q
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, StructuralError):
                raise
            raise StructuralError(f"malformed quiver data: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v, w in self.vertices.items():
            lines.append(f'  "{v}" [label="{v} ({w})"];')
        for (s, d), m in self.to_json_arrows():
            attr = f' [label="{m}"]' if m > 1 else ""
            lines.append(f'  "{s}" -> "{d}"{attr};')
        lines.append("}")
        return "\n".join(lines)

    def to_json_arrows(self):
        return [((a["src"], a["dst"]), a["mult"]) for a in self.to_json()["arrows"]]

    def text(self) -> str:
        lines = ["vertices: " + ", ".join(f"{v}({w})" for v, w in self.vertices.items())]
        for (s, d), m in self.to_json_arrows():
            lines.append(f"{s} -> {d}" + (f" x{m}" if m > 1 else ""))
        return "\n".join(lines)


# -- link quivers ---------------------------------------------------------------

def link_quiver_from_coalgebra(C: Coalgebra) -> Quiver:
    """Arrows D -> C counted by dim((C wedge D)/(C + D)) / (rs)."""
    cor = coradical(C)
    blocks = sorted(cor.blocks, key=lambda b: (b.label != "1", b.size, natural_key(b.label)))
    q = Quiver({b.label: b.size for b in blocks})
    for Cb in cor.blocks:
        for Db in cor.blocks:
            W = wedge(Cb.space, Db.space, C, check=False)
            base = (Cb.space + Db.space).dim
            extra = W.dim - base
            rs = Cb.size * Db.size
            if extra % rs:
                raise ArithmeticError(
                    f"arrow count {extra}/{rs} from {Db.label} to {Cb.label} is not an integer")
            q.add_arrow(Db.label, Cb.label, extra // rs)
    return q


def alpha_symmetry(R: BasedRing, k: str) -> Report:
    """alpha(i, k, t) = alpha(t, k*, i) wherever both products are available."""
    rep = Report(f"alpha symmetry for {k}")
    ks = R.star[k]
    bad = []
    for i in R.basis:
        for t in R.basis:
            if R.known(i, k) and R.known(t, ks):
                if R.alpha[i, k].get(t, 0) != R.alpha[t, ks].get(i, 0):
                    bad.append(f"({i},{t})")
    rep.add("alpha(i,k,t) = alpha(t,k*,i)", not bad, ", ".join(bad[:5]))
    return rep


def link_quiver_from_fusion(R: BasedRing, oneS) -> Quiver:
    """Arrows C_t -> C_i counted by sum_k mult_k * alpha(i, k, t)."""
    q = Quiver({b: R.dims[b] for b in R.basis}, unit=R.unit)
    for k, mult in oneS:
        if k not in R.dims:
            raise StructuralError(f"{k} is not a simple of the ring")
        sym = alpha_symmetry(R, k)
        if not sym.ok:
            raise ArithmeticError(f"fusion data violates alpha symmetry: {sym.first_failure().detail}")
        for i in R.basis:
            prod = R.product(i, k, partial=True)
            for t, n in prod.items():
                q.add_arrow(t, i, mult * n)
    return q


def one_S(Q: Quiver) -> dict:
    """Simples C with an arrow C -> 1, with multiplicities."""
    if Q.unit is None:
        raise StructuralError("quiver has no unit vertex")
    return Q.arrows_into(Q.unit)


# -- separated quivers and Dynkin recognition ------------------------------------

@dataclass
class Graph:
    """Undirected multigraph."""

    vertices: list
    edges: dict  # frozenset-like sorted pair -> multiplicity

    def components(self) -> list["Graph"]:
        adj = {v: set() for v in self.vertices}
        for (a, b) in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, out = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in sorted(adj[x], key=str):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            keep = set(comp)
            order = [x for x in self.vertices if x in keep]
            out.append(Graph(order, {e: m for e, m in self.edges.items() if e[0] in keep}))
        return out


def graph(vertices, edges) -> Graph:
    """Build a multigraph from ``(u, v)`` or ``(u, v, mult)`` edges."""
    out: dict = {}
    vs = list(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    for e in edges:
        a, b = e[0], e[1]
        m = e[2] if len(e) > 2 else 1
        if a not in pos or b not in pos:
            raise StructuralError(f"edge {a}-{b} uses an unknown vertex")
        key = (a, b) if pos[a] <= pos[b] else (b, a)
        out[key] = out.get(key, 0) + m
    return Graph(vs, out)


def separated_quiver(Q: Quiver) -> Quiver:
    """2n vertices v, v'; each arrow u -> w becomes u -> w'."""
    verts = {}
    for v, w in Q.vertices.items():
        verts[v] = w
    for v, w in Q.vertices.items():
        verts[v + "'"] = w
    s = Quiver(verts, unit=None)
    for (a, b), m in Q.arrows.items():
        s.add_arrow(a, b + "'", m)
    return s


def underlying_graph(Q: Quiver) -> Graph:
    return graph(list(Q.vertices), [(a, b, m) for (a, b), m in Q.arrows.items()])


@dataclass(frozen=True)
class ADEClass:
    kind: str  # "dynkin", "euclidean" or "beyond"
    name: str  # A_n, D_n, E_6.., ~A_n, ~D_n, ~E_n, or "beyond-Euclidean"
    vertices: tuple = ()

    def __str__(self):
        return self.name


def classify_component(G: Graph) -> ADEClass:
    verts = tuple(G.vertices)
    n = len(verts)
    if any(a == b for a, b in G.edges):
        raise StructuralError("classify_ade does not accept loops; separate the quiver first")
    multi = [m for m in G.edges.values() if m > 1]
    if multi:
        if n == 2 and multi == [2]:
            return ADEClass("euclidean", "~A_1", verts)
        return ADEClass("beyond", "beyond-Euclidean", verts)
    deg = Counter()
    for a, b in G.edges:
        deg[a] += 1
        deg[b] += 1
    e = len(G.edges)
    if n == 1:
        return ADEClass("dynkin", "A_1", verts)
    if e == n:
        # one cycle: Euclidean iff the graph is the cycle itself
        if all(deg[v] == 2 for v in verts):
            return ADEClass("euclidean", f"~A_{n - 1}", verts)
        return ADEClass("beyond", "beyond-Euclidean", verts)
    if e > n:
        return ADEClass("beyond", "beyond-Euclidean", verts)
    # a tree
    branch = [v for v in verts if deg[v] >= 3]
    if not branch:
        return ADEClass("dynkin", f"A_{n}", verts)
    if any(deg[v] >= 5 for v in branch):
        return ADEClass("beyond", "beyond-Euclidean", verts)
    if any(deg[v] == 4 for v in branch):
        if n == 5:
            return ADEClass("euclidean", "~D_4", verts)
        return ADEClass("beyond", "beyond-Euclidean", verts)
    if len(branch) > 2:
        return ADEClass("beyond", "beyond-Euclidean", verts)
    arms = _arms(G, branch)
    if len(branch) == 2:
        # ~D_n: both branch points carry two leaves
        if all(sorted(a)[:2] == [1, 1] for a in arms.values()):
            return ADEClass("euclidean", f"~D_{n - 1}", verts)
        return ADEClass("beyond", "beyond-Euclidean", verts)
    p, q, r = sorted(arms[branch[0]])
    if (p, q) == (1, 1):
        return ADEClass("dynkin", f"D_{n}", verts)
    if (p, q) == (1, 2) and r in (2, 3, 4):
        return ADEClass("dynkin", f"E_{n}", verts)
    if (p, q, r) in ((2, 2, 2), (1, 3, 3), (1, 2, 5)):
        return ADEClass("euclidean", f"~E_{n - 1}", verts)
    return ADEClass("beyond", "beyond-Euclidean", verts)


def _arms(G: Graph, branch) -> dict:
    """For each branch vertex, the lengths of the paths hanging off it (up to the other branch)."""
    adj = {v: [] for v in G.vertices}
    for a, b in G.edges:
        adj[a].append(b)
        adj[b].append(a)
    out = {}
    bset = set(branch)
    for c in branch:
        lengths = []
        for start in adj[c]:
            prev, cur, length = c, start, 1
            while cur not in bset and len(adj[cur]) == 2:
                nxt = adj[cur][0] if adj[cur][1] == prev else adj[cur][1]
                prev, cur, length = cur, nxt, length + 1
            lengths.append(length if cur not in bset else 10 ** 6)
        out[c] = lengths
    return out


def classify_ade(G: Graph | Quiver) -> list[ADEClass]:
    """Per-component classification of an undirected multigraph (loops rejected)."""
    if isinstance(G, Quiver):
        G = underlying_graph(G)
    return [classify_component(c) for c in G.components()]


def adjacency(G: Graph) -> list[list[int]]:
    idx = {v: i for i, v in enumerate(G.vertices)}
    n = len(G.vertices)
    A = [[0] * n for _ in range(n)]
    for (a, b), m in G.edges.items():
        i, j = idx[a], idx[b]
        if i == j:
            A[i][i] += 2 * m
        else:
            A[i][j] += m
            A[j][i] += m
    return A


def spectral_class(G: Graph) -> str:
    """Compare the spectral radius of a connected multigraph with 2, exactly.

    Returns ``"<2"``, ``"=2"`` or ``">2"``: 2I - A positive definite,
    positive semidefinite and singular, or indefinite.  Decided by symmetric
    Gaussian elimination over the rationals.
    """
    A = adjacency(G)
    n = len(A)
    M = [[Fraction(2 * (i == j) - A[i][j]) for j in range(n)] for i in range(n)]
    singular = False
    for c in range(n):
        piv = M[c][c]
        if piv < 0:
            return ">2"
        if piv == 0:
            if any(M[c][k] for k in range(c + 1, n)):
                return ">2"
            singular = True
            continue
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / piv
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return "=2" if singular else "<2"


KIND_OF_SPECTRAL = {"<2": "dynkin", "=2": "euclidean", ">2": "beyond"}


# -- reptype predicates -------------------------------------------------------

def is_basic_cycle_union(Q: Quiver) -> bool:
    """Every vertex starts exactly one arrow and ends exactly one arrow."""
    if any(m > 1 for m in Q.arrows.values()):
        return False
    return all(Q.out_degree(v) == 1 and Q.in_degree(v) == 1 for v in Q.vertices)


def is_schurian(Q: Quiver) -> bool:
    return all(m <= 1 for m in Q.arrows.values())


@dataclass
class Verdict:
    verdict: str
    conditions: dict
    reason: str = ""

    def text(self) -> str:
        return f"{self.verdict} ({self.reason})" if self.reason else self.verdict


FINITE_CRITERION = "finite-coradical criterion"
TRICHOTOMY = "infinite-coradical trichotomy"
DYNKIN_LEMMA = "separated-quiver Dynkin lemma"
LARGE_SIMPLE_LEMMA = "large-simple exclusion lemma"
MANY_PRIMITIVES = "three-primitive exclusion"


def discreteness_check_finite_coradical(Q: Quiver) -> Verdict:
    """Evaluate the three structural conditions of the finite-coradical criterion.

    (2) the quiver is a disjoint union of basic cycles; (3) exactly one arrow
    ends at k1 and it starts at a one-dimensional simple; (4) exactly one arrow
    starts at k1 and it ends at a one-dimensional simple.
    """
    if not Q.arrows:
        return Verdict("cosemisimple", {}, "no arrows: the criterion needs a non-cosemisimple Hopf algebra")
    if Q.unit is None or Q.unit not in Q.vertices:
        raise StructuralError("quiver has no unit vertex k1")
    into = Q.arrows_into(Q.unit)
    out = Q.arrows_from(Q.unit)
    c2 = is_basic_cycle_union(Q)
    c3 = sum(into.values()) == 1 and all(Q.vertices[v] == 1 for v in into)
    c4 = sum(out.values()) == 1 and all(Q.vertices[v] == 1 for v in out)
    conds = {2: c2, 3: c3, 4: c4}
    if all(conds.values()):
        return Verdict("discrete", conds, f"{FINITE_CRITERION}: conditions 2,3,4 hold")
    failed = ",".join(str(k) for k, v in conds.items() if not v)
    reason = f"{FINITE_CRITERION}: condition(s) {failed} fail"
    if not c3:
        reason += "; need a single arrow into k1 from a simple with dim_k(C)=1"
    return Verdict("not discrete", conds, reason)


@dataclass
class Trichotomy:
    case: str  # case1, case2, case3, not_discrete
    reason: str = ""

    def text(self) -> str:
        if self.case.startswith("case"):
            return f"candidate case {self.case[-1]} ({TRICHOTOMY})" + (f": {self.reason}" if self.reason else "")
        return f"not discrete: {self.reason}"


def trichotomy_classify(oneP_count: int, oneS_dims) -> Trichotomy:
    """Map |1P| and the dimensions of the simples in 1S to the three cases."""
    dims = sorted(oneS_dims)
    if oneP_count < 1 or not dims:
        raise StructuralError("trichotomy needs a non-cosemisimple input (|1P| >= 1)")
    if len(dims) > oneP_count:
        raise StructuralError(f"|1S| = {len(dims)} cannot exceed |1P| = {oneP_count}")
    if oneP_count >= 3:
        return Trichotomy("not_discrete", f"{MANY_PRIMITIVES}: |1P| = {oneP_count} >= 3")
    big = [d for d in dims if d >= 9]
    if big:
        return Trichotomy("not_discrete", f"{LARGE_SIMPLE_LEMMA}: dim_k(C_k) = {big[0]} >= 9")
    if oneP_count == 1 and dims == [1]:
        return Trichotomy("case1", "|1P| = 1, 1S = {kg}")
    if oneP_count == 2 and dims == [1, 1]:
        return Trichotomy("case2", "|1P| = 2, 1S = {kg, kh}")
    if oneP_count == 1 and dims == [4]:
        return Trichotomy("case3", "|1P| = 1, 1S = {C_k}, dim 4")
    return Trichotomy("not_discrete", f"{TRICHOTOMY}: (|1P|={oneP_count}, dims={dims}) matches no case")


def trichotomy_from_quiver(Q: Quiver) -> Trichotomy:
    into = one_S(Q)
    return trichotomy_classify(sum(into.values()), [Q.vertices[v] ** 2 for v in into])


@dataclass
class Classification:
    """Everything the classifier reports about one quiver."""

    regime: str  # "finite" or "infinite"
    separated: list  # ADEClass per component of the separated quiver
    basic_cycle_union: bool
    schurian: bool
    verdict: str

    def lines(self) -> list[str]:
        return [
            "separated quiver: " + ", ".join(str(c) for c in self.separated),
            f"basic cycle union: {self.basic_cycle_union}",
            f"schurian: {self.schurian}",
            f"verdict: {self.verdict}",
        ]

    def to_json(self) -> dict:
        return {
            "regime": self.regime,
            "separated": [c.name for c in self.separated],
            "basic_cycle_union": self.basic_cycle_union,
            "schurian": self.schurian,
            "verdict": self.verdict,
        }


def classify_quiver(Q: Quiver, regime: str = "finite") -> Classification:
    """Separated-quiver classes, cycle/Schurian flags and the regime's verdict.

    A separated quiver that is not a union of Dynkin diagrams rules out
    discreteness outright.  Otherwise the finite regime applies the
    finite-coradical criterion and the infinite regime names the candidate
    case of the trichotomy.
    """
    if regime not in ("finite", "infinite"):
        raise StructuralError(f"unknown regime {regime!r}")
    sep = classify_ade(separated_quiver(Q))
    bad = [c for c in sep if c.kind != "dynkin"]
    if bad:
        kind = "beyond-Euclidean" if any(c.kind == "beyond" for c in bad) else "Euclidean"
        verdict = f"not discrete: separated quiver {kind} ({DYNKIN_LEMMA})"
    elif regime == "finite":
        verdict = discreteness_check_finite_coradical(Q).text()
    else:
        verdict = trichotomy_from_quiver(Q).text()
    return Classification(regime, sep, is_basic_cycle_union(Q), is_schurian(Q), verdict)


# -- Q^{m,n} -----------------------------------------------------------------

def build_Qmn(m: int, n: int, radius: int) -> Quiver:
    """Vertices g^a h^b (|a| + |b| <= radius, reduced modulo g^m = h^n) with g- and h-arrows."""
    if (m, n) in ((1, 1), (-1, -1)):
        raise StructuralError("(m, n) must differ from +-(1, 1)")

    def name(a, b):
        parts = []
        if a:
            parts.append("g" if a == 1 else f"g^{a}")
        if b:
            parts.append("h" if b == 1 else f"h^{b}")
        return "*".join(parts) or "1"

    pts = []
    seen = set()
    for total in range(radius + 1):
        for a in range(-total, total + 1):
            for b in {total - abs(a), -(total - abs(a))}:
                c = canonical_coset(a, b, m, n)
                if c not in seen:
                    seen.add(c)
                    pts.append(c)
    q = Quiver({name(*p): 1 for p in pts})
    for (a, b) in pts:
        for da, db in ((1, 0), (0, 1)):
            tgt = canonical_coset(a + da, b + db, m, n)
            if tgt in seen:
                q.add_arrow(name(a, b), name(*tgt))
    return q


# -- Dynkin positive roots ------------------------------------------------------

def dynkin_graph(name: str) -> Graph:
    """Standard graph of a Dynkin diagram given as A_n, D_n or E_6/7/8."""
    kind, _, num = name.partition("_")
    n = int(num)
    vs = list(range(n))
    if kind == "A" and n >= 1:
        return graph(vs, [(i, i + 1) for i in range(n - 1)])
    if kind == "D" and n >= 4:
        return graph(vs, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    if kind == "E" and n in (6, 7, 8):
        return graph(vs, [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)])
    raise StructuralError(f"{name} is not a Dynkin diagram")


def dynkin_positive_roots(cls) -> list[tuple[int, ...]]:
    """Positive roots by closing the simple roots under simple reflections."""
    name = cls.name if isinstance(cls, ADEClass) else str(cls)
    if isinstance(cls, ADEClass) and cls.kind != "dynkin":
        raise StructuralError(f"{name} is not Dynkin")
    G = dynkin_graph(name)
    n = len(G.vertices)
    nbrs = {i: [] for i in range(n)}
    for (a, b) in G.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                # s_i(r) = r - (2 r_i - sum_{j ~ i} r_j) e_i
                c = 2 * r[i] - sum(r[j] for j in nbrs[i])
                s = tuple(r[k] - (c if k == i else 0) for k in range(n))
                if all(x >= 0 for x in s) and any(s) and s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))
