"""Weighted graphs ``(b, c)`` over a discrete measure space ``(X, m)``.

Vertices are the contiguous indices ``0..N-1``; each carries a string label
used for I/O and messages.  Edge weights live in a table keyed by the sorted
vertex pair, so symmetry holds by construction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence, Union

import numpy as np

from .rules import PowerRule

Vertex = Union[int, str]


class TruncationFlavor(enum.Enum):
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"

    @classmethod
    def parse(cls, text: str) -> "TruncationFlavor":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown flavor {text!r}; expected 'neumann' or 'dirichlet'") from None


class InvalidGraphError(ValueError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("invalid graph: " + "; ".join(violations))
        self.violations = list(violations)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    m: np.ndarray
    c: np.ndarray
    edges: Mapping[tuple[int, int], float]
    labels: tuple[str, ...]
    flavor: TruncationFlavor | None = None
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "m", _frozen(self.m))
        object.__setattr__(self, "c", _frozen(self.c))
        if self.m.ndim != 1 or self.c.shape != self.m.shape:
            raise ValueError("m and c must be 1-d arrays of equal length")
        if len(self.labels) != len(self.m):
            raise ValueError("one label per vertex required")
        table = {}
        for (u, v), w in self.edges.items():
            key = _pair(int(u), int(v))
            if key in table:
                raise ValueError(f"edge {key} given twice")
            if not (0 <= key[0] and key[1] < len(self.m)):
                raise IndexError(f"edge {key} references a missing vertex")
            table[key] = float(w)
        object.__setattr__(self, "edges", dict(sorted(table.items())))
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.labels)})

    @classmethod
    def from_arrays(cls, m, edges: Mapping[tuple[int, int], float], c=None,
                    labels: Sequence[str] | None = None,
                    flavor: TruncationFlavor | None = None) -> "Graph":
        m = np.asarray(m, dtype=float)
        c = np.zeros_like(m) if c is None else c
        labels = tuple(str(i) for i in range(len(m))) if labels is None else tuple(labels)
        return cls(m=m, c=c, edges=dict(edges), labels=labels, flavor=flavor)

    @property
    def size(self) -> int:
        return len(self.m)

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.m, other.m)
            and np.array_equal(self.c, other.c)
            and self.edges == other.edges
            and self.flavor == other.flavor
        )

    __hash__ = None

    def index(self, x: Vertex) -> int:
        """Resolve an integer index or a string label to an index."""
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if 0 <= x < self.size:
                return int(x)
            raise IndexError(f"vertex index {x} out of range for {self.size} vertices")
        if isinstance(x, str) and x in self._index:
            return self._index[x]
        raise IndexError(f"unknown vertex {x!r}")

    def weight(self, x: Vertex, y: Vertex) -> float:
        return self.edges.get(_pair(self.index(x), self.index(y)), 0.0)

    def with_potential(self, c) -> "Graph":
        c = np.asarray(c, dtype=float)
        if c.shape != self.m.shape:
            raise ValueError(f"potential has {c.size} entries, graph has {self.size} vertices")
        return replace(self, c=c)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(u, v, b)`` arrays over stored pairs, loops included."""
        if not self.edges:
            empty = np.zeros(0, dtype=int)
            return empty, empty, np.zeros(0)
        keys = np.array(list(self.edges.keys()), dtype=int)
        return keys[:, 0], keys[:, 1], np.fromiter(self.edges.values(), dtype=float)


def validate(graph: Graph) -> list[str]:
    """List every violated graph invariant; an empty list means valid."""
    report = []
    lab = graph.labels
    for i, mx in enumerate(graph.m):
        if not (np.isfinite(mx) and mx > 0):
            report.append(f"nonpositive measure at vertex {lab[i]}")
    for i, cx in enumerate(graph.c):
        if not (np.isfinite(cx) and cx >= 0):
            report.append(f"negative potential at vertex {lab[i]}")
    deg = np.zeros(graph.size)
    for (u, v), w in graph.edges.items():
        if u == v:
            report.append(f"loop at vertex {lab[u]}")
        if not (np.isfinite(w) and w >= 0):
            report.append(f"negative edge weight at pair ({lab[u]}, {lab[v]})")
        deg[u] += w
        if u != v:
            deg[v] += w
    for i in np.flatnonzero(~np.isfinite(deg)):
        report.append(f"infinite degree at vertex {lab[i]}")
    return report


def degree(graph: Graph, x: Vertex) -> float:
    """Weighted degree ``sum_y b(x, y)``."""
    i = graph.index(x)
    return math.fsum(w for (u, v), w in graph.edges.items() if u != v and i in (u, v))


def degrees(graph: Graph) -> np.ndarray:
    u, v, b = graph.edge_arrays()
    keep = u != v
    deg = np.zeros(graph.size)
    np.add.at(deg, u[keep], b[keep])
    np.add.at(deg, v[keep], b[keep])
    return deg


def weighted_inner_product(graph_or_m, f, g) -> float:
    """``<f, g>`` in ``l^2(X, m)``; accepts a Graph or a bare measure vector."""
    m = graph_or_m.m if isinstance(graph_or_m, Graph) else np.asarray(graph_or_m, dtype=float)
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != m.shape or g.shape != m.shape:
        raise ValueError(f"expected vectors of length {m.size}, got {f.size} and {g.size}")
    return float(np.dot(f * g, m))


class FamilyKind(enum.Enum):
    PAPER_PATH = "paper-path"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GraphFamily:
    """A rule-defined infinite path graph on ``n = 1, 2, ...``.

    ``b_rule(n)`` is the weight of the edge ``(n, n+1)``.
    """

    kind: FamilyKind
    m_rule: PowerRule
    b_rule: PowerRule
    c_rule: PowerRule = PowerRule()

    def check(self, N: int) -> list[str]:
        """Validate the rules on ``1..N`` (and the crossing edge at ``N``)."""
        problems = []
        n = np.arange(1, N + 2, dtype=float)
        if np.any(~(self.m_rule(n) > 0)):
            problems.append("m_rule is not positive")
        if np.any(~(self.b_rule(n) >= 0)):
            problems.append("b_rule is negative")
        if np.any(~(self.c_rule(n) >= 0)):
            problems.append("c_rule is negative")
        return problems


PAPER_PATH = GraphFamily(
    kind=FamilyKind.PAPER_PATH,
    m_rule=PowerRule.monomial(1.0, -4.0),
    b_rule=PowerRule.monomial(1.0, 2.0),
)


def truncate(family: GraphFamily, N: int, flavor: TruncationFlavor) -> Graph:
    """Finite section on vertices ``1..N``.

    Neumann drops the edge ``(N, N+1)``.  Dirichlet kills at the removed
    vertex instead: its weight is added to ``c(N)``.
    """
    if N < 1:
        raise ValueError(f"truncation size must be >= 1, got {N}")
    problems = family.check(N)
    if problems:
        raise ValueError("invalid family: " + "; ".join(problems))
    n = np.arange(1, N + 1, dtype=float)
    m = family.m_rule(n)
    c = family.c_rule(n).copy()
    b = family.b_rule(n)
    edges = {(i, i + 1): b[i] for i in range(N - 1)}
    if flavor is TruncationFlavor.DIRICHLET:
        c[N - 1] += float(family.b_rule(float(N)))
    labels = tuple(str(k) for k in range(1, N + 1))
    return Graph(m=m, c=c, edges=edges, labels=labels, flavor=flavor)


def generate_paper_path(N: int) -> Graph:
    """``m(n) = n^-4``, ``b(n, n+1) = n^2``, ``c = 0`` on vertices labelled ``1..N``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return replace(truncate(PAPER_PATH, N, TruncationFlavor.NEUMANN), flavor=None)


def truncate_potential(c, M: int) -> np.ndarray:
    """Keep ``c`` on the first ``M`` vertices and zero it elsewhere."""
    c = np.asarray(c, dtype=float)
    if M < 0 or M > c.size:
        raise ValueError(f"M must lie in [0, {c.size}], got {M}")
    out = np.zeros_like(c)
    out[:M] = c[:M]
    return out


def random_connected_graph(rng: np.random.Generator, N: int, *,
                           m_range=(0.1, 10.0), b_range=(0.0, 5.0), c_range=(0.0, 5.0),
                           extra_edge_prob: float | None = None) -> Graph:
    """Random spanning tree plus extra edges.

    Tree edges get weights strictly inside ``b_range`` so the graph stays
    connected; extra edges are drawn from the closed range.
    """
    m = rng.uniform(*m_range, size=N)
    while np.any(m <= m_range[0]):
        bad = m <= m_range[0]
        m[bad] = rng.uniform(*m_range, size=bad.sum())
    c = rng.uniform(*c_range, size=N)
    edges: dict[tuple[int, int], float] = {}
    order = rng.permutation(N)
    lo, hi = b_range
    for k in range(1, N):
        parent = order[rng.integers(k)]
        w = rng.uniform(lo, hi)
        while w <= 0:
            w = rng.uniform(lo, hi)
        edges[_pair(int(order[k]), int(parent))] = w
    if extra_edge_prob is None:
        extra_edge_prob = min(1.0, 3.0 / max(N - 1, 1))
    if N > 2:
        iu, ju = np.triu_indices(N, 1)
        pick = rng.random(iu.size) < extra_edge_prob
        for i, j in zip(iu[pick], ju[pick]):
            edges.setdefault((int(i), int(j)), rng.uniform(lo, hi))
    return Graph.from_arrays(m, edges, c)


def is_connected(graph: Graph) -> bool:
    parent = list(range(graph.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (u, v), w in graph.edges.items():
        if w > 0:
            parent[find(u)] = find(v)
    return len({find(i) for i in range(graph.size)}) <= 1
