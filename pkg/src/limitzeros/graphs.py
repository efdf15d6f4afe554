"""Independence polynomials, occupation ratios and the tree recursion.

For a rooted graph (G, v), Z_in counts independent sets containing v and
Z_out those avoiding it; R = Z_in / Z_out.  On trees the ratio obeys
R_v = lam / prod_children (1 + R_c), which is the map F_lam.  A GSpec of the
semigroup side turns into a tree by giving each vertex floor(s_i d) copies of
child i; then d * R(Lam / d) tends to g_Lam(0) as d grows.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import DegreeOverflow, NoConvergence, PoleError, TooLarge
from .orbit import Compose, GSpec, Identity, IDENTITY, eval_gspec

ENUMERATION_LIMIT = 30
POLE = complex(math.inf, 0.0)
INDETERMINATE = complex(math.nan, math.nan)


def is_pole(z) -> bool:
    return cmath.isinf(z)


def is_indeterminate(z) -> bool:
    return cmath.isnan(z)


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True, eq=False)
class RootedGraph:
    n: int
    adjacency: tuple
    root: int = 0

    def __post_init__(self):
        adj = tuple(tuple(int(u) for u in nb) for nb in self.adjacency)
        object.__setattr__(self, "adjacency", adj)
        if self.n < 1 or len(adj) != self.n:
            raise ValueError(f"adjacency has {len(adj)} rows for n={self.n}")
        if not 0 <= self.root < self.n:
            raise ValueError(f"root {self.root} out of range")
        sets = [set(nb) for nb in adj]
        for v, nb in enumerate(adj):
            if len(sets[v]) != len(nb):
                raise ValueError(f"parallel edge at vertex {v}")
            for u in nb:
                if u == v:
                    raise ValueError(f"loop at vertex {v}")
                if not 0 <= u < self.n or v not in sets[u]:
                    raise ValueError(f"adjacency not symmetric at edge {v}-{u}")

    @classmethod
    def from_edges(cls, n, edges, root=0) -> RootedGraph:
        adj = [[] for _ in range(n)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        return cls(n, tuple(map(tuple, adj)), root)

    @classmethod
    def from_parents(cls, parents) -> RootedGraph:
        """Tree from a parent array; the vertex with parent -1 is the root."""
        roots = [v for v, p in enumerate(parents) if p < 0]
        if len(roots) != 1:
            raise ValueError("parent array needs exactly one root")
        return cls.from_edges(len(parents), [(v, p) for v, p in enumerate(parents) if p >= 0], roots[0])

    @classmethod
    def single_vertex(cls) -> RootedGraph:
        return cls(1, ((),), 0)

    @classmethod
    def path(cls, n, root=0) -> RootedGraph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)], root)

    @classmethod
    def star(cls, leaves) -> RootedGraph:
        """K_{1,leaves} rooted at the center."""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], 0)

    @classmethod
    def cycle(cls, n, root=0) -> RootedGraph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)], root)

    def rerooted(self, root) -> RootedGraph:
        return RootedGraph(self.n, self.adjacency, root)

    @property
    def edges(self):
        return [(v, u) for v, nb in enumerate(self.adjacency) for u in nb if v < u]

    @property
    def max_degree(self):
        return max(len(nb) for nb in self.adjacency)

    @property
    def root_degree(self):
        return len(self.adjacency[self.root])

    def is_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            for u in self.adjacency[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    @property
    def is_tree(self):
        return len(self.edges) == self.n - 1 and self.is_connected()

    def in_class(self, d, k=None):
        """Membership in the class of rooted graphs with max degree <= d+1, root degree <= k."""
        k = d if k is None else k
        return self.max_degree <= d + 1 and self.root_degree <= k


# ---------------------------------------------------------------- polynomials


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


@dataclass(frozen=True)
class IndPolynomial:
    """Integer coefficients, index = power of lambda."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in _trim(self.coefficients)))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, lam):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * lam + c
        return acc

    def __add__(self, other):
        return IndPolynomial(_padd(self.coefficients, other.coefficients))

    def __mul__(self, other):
        return IndPolynomial(_pmul(self.coefficients, other.coefficients))

    def __getitem__(self, k):
        return self.coefficients[k] if k < len(self.coefficients) else 0


@dataclass(frozen=True)
class RatioPair:
    z_in: IndPolynomial
    z_out: IndPolynomial

    @property
    def full(self) -> IndPolynomial:
        return self.z_in + self.z_out

    def __call__(self, lam):
        return _extended_quotient(self.z_in(lam), self.z_out(lam))


def _extended_quotient(num, den):
    num, den = complex(num), complex(den)
    if den == 0:
        return INDETERMINATE if num == 0 else POLE
    return num / den


def _enumeration_pair(G: RootedGraph) -> RatioPair:
    if G.n > ENUMERATION_LIMIT:
        raise TooLarge(f"{G.n} vertices exceeds the enumeration limit {ENUMERATION_LIMIT}")
    closed = [(1 << v) | sum(1 << u for u in nb) for v, nb in enumerate(G.adjacency)]
    memo = {0: (1,)}

    def count(mask):
        # branch on the lowest vertex: leave it out, or take it and drop its neighbours
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        a = count(mask & ~(1 << v))
        b = count(mask & ~closed[v])
        res = tuple(_padd(a, [0] + list(b)))
        memo[mask] = res
        return res

    full = (1 << G.n) - 1
    r = G.root
    z_out = count(full & ~(1 << r))
    z_in = [0] + list(count(full & ~closed[r]))
    return RatioPair(IndPolynomial(z_in), IndPolynomial(z_out))


def _tree_order(G: RootedGraph):
    """Vertices in DFS preorder from the root, with parent pointers."""
    parent = [-1] * G.n
    order = [G.root]
    seen = [False] * G.n
    seen[G.root] = True
    stack = [G.root]
    while stack:
        v = stack.pop()
        for u in G.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
                stack.append(u)
    return order, parent


def _tree_pair(G: RootedGraph) -> RatioPair:
    if not G.is_tree:
        raise ValueError("tree backend needs a tree")
    order, parent = _tree_order(G)
    zin = [None] * G.n
    zout = [None] * G.n
    prod_out = [[1] for _ in range(G.n)]
    prod_all = [[1] for _ in range(G.n)]
    for v in reversed(order):
        zin[v] = [0] + prod_out[v]
        zout[v] = prod_all[v]
        p = parent[v]
        if p >= 0:
            prod_out[p] = _pmul(prod_out[p], zout[v])
            prod_all[p] = _pmul(prod_all[p], _padd(zin[v], zout[v]))
    r = G.root
    return RatioPair(IndPolynomial(zin[r]), IndPolynomial(zout[r]))


def partition_pair(G: RootedGraph, backend: str = "auto") -> RatioPair:
    """(Z_in, Z_out) at the root; backend is 'auto', 'tree' or 'enumeration'."""
    if backend == "tree" or (backend == "auto" and G.is_tree):
        return _tree_pair(G)
    if backend in ("auto", "enumeration"):
        return _enumeration_pair(G)
    raise ValueError(f"unknown backend {backend!r}")


def ind_poly(G: RootedGraph, backend: str = "auto") -> IndPolynomial:
    return partition_pair(G, backend).full


def ratio(G: RootedGraph, lam: complex) -> complex:
    """R_{G,v}(lam) with in-band extended values POLE and INDETERMINATE."""
    lam = complex(lam)
    if G.is_tree:
        return _tree_ratio(G, lam)
    return partition_pair(G, "enumeration")(lam)


def _tree_ratio(G: RootedGraph, lam: complex) -> complex:
    if lam == 0:
        return 0j
    order, parent = _tree_order(G)
    prod = [1 + 0j] * G.n
    zeros = [0] * G.n
    poles = [0] * G.n
    bad = [False] * G.n
    r = 0j
    for v in reversed(order):
        if bad[v] or (zeros[v] and poles[v]):
            r = INDETERMINATE
        elif zeros[v]:
            r = POLE
        elif poles[v]:
            r = 0j
        else:
            r = lam / prod[v]
        p = parent[v]
        if p >= 0:
            if is_indeterminate(r):
                bad[p] = True
            elif is_pole(r):
                poles[p] += 1
            elif 1 + r == 0:
                zeros[p] += 1
            else:
                prod[p] *= 1 + r
    return r


def ratio_at_infinity(G: RootedGraph) -> complex:
    """Limit of R_{G,v}(lam) as lam -> infinity."""
    pair = partition_pair(G)
    a, b = pair.z_in, pair.z_out
    if a.degree > b.degree:
        return POLE
    if a.degree < b.degree:
        return 0j
    return complex(Fraction(a.coefficients[-1], b.coefficients[-1]))


def compose_ratio(H: RootedGraph, G: RootedGraph, lam: complex) -> complex:
    """R_H(R_G(lam)), the ratio of the graph obtained by substituting G into H."""
    r = ratio(G, lam)
    if is_indeterminate(r):
        return INDETERMINATE
    if is_pole(r):
        return ratio_at_infinity(H)
    return ratio(H, r)


def substitute(H: RootedGraph, G: RootedGraph) -> RootedGraph:
    """Replace every vertex of H by a copy of (G, v); join root copies along H's edges."""
    m = G.n
    edges = [(x * m + a, x * m + b) for x in range(H.n) for a, b in G.edges]
    edges += [(x * m + G.root, y * m + G.root) for x, y in H.edges]
    return RootedGraph.from_edges(H.n * m, edges, H.root * m + G.root)


# ---------------------------------------------------------------- F recursion


@dataclass(frozen=True)
class FCompose:
    """z -> lam / prod_i (1 + f_i(z))^{p_i}."""

    multiplicities: tuple
    children: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.multiplicities)
        if any(x < 0 for x in p):
            raise ValueError("multiplicities must be non-negative")
        if len(p) != len(self.children):
            raise ValueError(f"{len(p)} multiplicities but {len(self.children)} children")
        object.__setattr__(self, "multiplicities", p)
        object.__setattr__(self, "children", tuple(self.children))


FSpec = Union[Identity, FCompose]


def check_fspec(spec: FSpec, d: int):
    if isinstance(spec, FCompose):
        if sum(spec.multiplicities) > d:
            raise DegreeOverflow(f"node with {sum(spec.multiplicities)} inputs exceeds d={d}")
        for c in spec.children:
            check_fspec(c, d)


def f_eval(spec: FSpec, d: int, lam: complex, z: complex) -> complex:
    check_fspec(spec, d)
    return _f_eval(spec, complex(lam), complex(z))


def _f_eval(spec, lam, z):
    if isinstance(spec, Identity):
        return z
    den = 1 + 0j
    for p, child in zip(spec.multiplicities, spec.children):
        if p == 0:
            continue
        w = 1 + _f_eval(child, lam, z)
        if abs(w) <= 1e-300:
            raise PoleError("1 + f(z) vanished")
        den *= w ** p
    return lam / den


def _split_mass(s, d):
    # floor(s d) with a little slack so that decimal weights like 0.29 at
    # d = 100 give 29, not 28
    return int(math.floor(s * d + 1e-9))


def gspec_to_fspec(g: GSpec, d: int) -> FSpec:
    if isinstance(g, Identity):
        return IDENTITY
    return FCompose(tuple(_split_mass(s, d) for s in g.weights.weights),
                    tuple(gspec_to_fspec(c, d) for c in g.children))


def _tree_size(spec):
    if isinstance(spec, Identity):
        return 0
    return 1 + sum(p * _tree_size(c) for p, c in zip(spec.multiplicities, spec.children))


def fspec_to_tree(spec: FSpec, d: int | None = None, max_vertices: int = 2_000_000) -> RootedGraph:
    """The rooted tree whose root ratio is f_eval(spec, d, lam, 0).

    Each FCompose node is a vertex with p_i copies of child i's subtree;
    identity children stand for the input z = 0 and add nothing.
    """
    if isinstance(spec, Identity):
        raise ValueError("the identity has no tree: its value at 0 is 0, not a ratio")
    if d is not None:
        check_fspec(spec, d)
    size = _tree_size(spec)
    if size > max_vertices:
        raise TooLarge(f"tree would have {size} vertices")
    parents = []

    def build(node, parent):
        v = len(parents)
        parents.append(parent)
        for p, child in zip(node.multiplicities, node.children):
            if isinstance(child, Identity):
                continue
            for _ in range(p):
                build(child, v)

    build(spec, -1)
    return RootedGraph.from_parents(parents)


def gspec_to_tree(g: GSpec, d: int, max_vertices: int = 2_000_000) -> RootedGraph:
    if d < 2:
        raise ValueError("d must be >= 2")
    return fspec_to_tree(gspec_to_fspec(g, d), d, max_vertices)


def rescaled_ratio(G: RootedGraph, d: int, Lam: complex) -> complex:
    return d * ratio(G, complex(Lam) / d)


def rescaled_spec_ratio(g: GSpec, d: int, Lam: complex) -> complex:
    """d * R(Lam / d) for the tree of g at degree d, evaluated without building it."""
    return d * f_eval(gspec_to_fspec(g, d), d, complex(Lam) / d, 0)


def limit_value(g: GSpec, Lam: complex) -> complex:
    """g_Lam(0), the d -> infinity limit of the rescaled ratios."""
    return eval_gspec(g, Lam, 0)


# ---------------------------------------------------------------- roots


def poly_roots(p, tol=1e-10, max_sweeps=1000) -> list:
    """All complex roots by Durand-Kerner iteration, sorted by (Re, Im)."""
    coeffs = p.coefficients if isinstance(p, IndPolynomial) else tuple(p)
    coeffs = _trim(coeffs)
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("polynomial must have degree >= 1")
    lead = coeffs[-1]
    a = np.array([complex(Fraction(c) / Fraction(lead)) for c in coeffs])  # monic, low to high
    absa = np.abs(a)
    radius = 1 + absa[:-1].max()
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    for _ in range(max_sweeps):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        step = np.polyval(a[::-1], z) / diff.prod(axis=1)
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * np.maximum(1, np.abs(z))):
            break
    z = _polish_clusters(a, z)
    res = np.abs(np.polyval(a[::-1], z))
    scale = np.polyval(absa[::-1], np.abs(z))
    if not np.all(res <= tol * scale):
        raise NoConvergence(f"Durand-Kerner residual {float((res / scale).max()):.3g} above {tol}")
    return sorted((complex(r) for r in z), key=lambda r: (r.real, r.imag))


def _polish_clusters(a, z, radius=1e-3):
    """Collapse clusters that are really one multiple root.

    Simultaneous iteration only resolves an m-fold root to about eps^(1/m).
    A tight cluster of m approximations is replaced by one point refined with
    Newton on the (m-1)-th derivative, kept only if the first m-1 derivatives
    (scaled) vanish there too.
    """
    z = z.copy()
    n = z.size
    label = list(range(n))

    def find(i):
        while label[i] != i:
            label[i] = label[label[i]]
            i = label[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius * max(1.0, abs(z[i])):
                label[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    hi = a[::-1]  # highest power first for numpy.polyder
    for idx in groups.values():
        m = len(idx)
        if m < 2:
            continue
        c = complex(z[idx].mean())
        q = np.polyder(hi, m - 1)
        dq = np.polyder(q)
        for _ in range(5):
            den = np.polyval(dq, c)
            if den == 0:
                break
            c -= np.polyval(q, c) / den
        ok = True
        for k in range(m):
            dk = np.polyder(hi, k) if k else hi
            scale = np.polyval(np.abs(dk), abs(c))
            if abs(np.polyval(dk, c)) > 1e-8 * max(scale, 1e-300):
                ok = False
                break
        if ok:
            z[idx] = c
    return z


# ---------------------------------------------------------------- corpora


def level_sequences(n: int) -> Iterator[list]:
    """Canonical level sequences of all rooted trees on n vertices (root at level 1)."""
    if n < 1:
        return
    L = list(range(1, n + 1))
    while True:
        yield list(L)
        p = n - 1
        while p > 0 and L[p] == 2:
            p -= 1
        if p == 0:
            return
        q = p - 1
        while L[q] != L[p] - 1:
            q -= 1
        for i in range(p, n):
            L[i] = L[i - p + q]


def tree_from_levels(levels: Sequence[int]) -> RootedGraph:
    parents = []
    last_at = {}
    for v, lev in enumerate(levels):
        parents.append(last_at[lev - 1] if lev > 1 else -1)
        last_at[lev] = v
    return RootedGraph.from_parents(parents)


def rooted_trees(n: int) -> Iterator[RootedGraph]:
    for seq in level_sequences(n):
        yield tree_from_levels(seq)


def tree_corpus(max_n: int = 9) -> list:
    return [t for n in range(1, max_n + 1) for t in rooted_trees(n)]


def random_tree(n: int, rng: np.random.Generator, max_degree: int | None = None) -> RootedGraph:
    """Random recursive tree; vertex i attaches to an earlier vertex with spare degree."""
    deg = [0] * n
    edges = []
    for v in range(1, n):
        choices = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        u = choices[int(rng.integers(len(choices)))]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return RootedGraph.from_edges(n, edges, int(rng.integers(n)))


def random_graph(n: int, rng: np.random.Generator, max_degree: int = 3, edge_prob: float = 0.5) -> RootedGraph:
    """Degree-bounded random attachment: each new vertex links to earlier ones with spare degree."""
    deg = [0] * n
    edges = []
    for v in range(1, n):
        for u in rng.permutation(v):
            u = int(u)
            if deg[v] >= max_degree:
                break
            if deg[u] < max_degree and rng.random() < edge_prob:
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
    return RootedGraph.from_edges(n, edges, int(rng.integers(n)))
