"""Matrix realization of the Schrödinger-type operator ``L_{b,c}`` and its form.

``L`` is self-adjoint on ``l^2(X, m)``.  The eigensolver works instead with
the unitarily equivalent symmetric matrix ``A = M^{1/2} L M^{-1/2}``::

    A[x, x] = (deg(x) + c(x)) / m(x)
    A[x, y] = -b(x, y) / sqrt(m(x) m(y))
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, InvalidGraphError, TruncationFlavor, degrees, validate


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    A: np.ndarray
    graph: Graph
    flavor: TruncationFlavor | None = None

    @property
    def size(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> np.ndarray:
        return self.graph.m

    def norm_inf(self) -> float:
        return float(np.abs(self.A).sum(axis=1).max()) if self.size else 0.0

    def to_csv(self) -> str:
        return "\n".join(",".join(repr(float(a)) for a in row) for row in self.A) + "\n"


def assemble(graph: Graph) -> OperatorMatrix:
    report = validate(graph)
    if report:
        raise InvalidGraphError(report)
    N = graph.size
    m = graph.m
    A = np.zeros((N, N))
    A[np.diag_indices(N)] = (degrees(graph) + graph.c) / m
    sq = np.sqrt(m)
    for (u, v), w in graph.edges.items():
        a = -w / (sq[u] * sq[v])
        A[u, v] = a
        A[v, u] = a
    A.setflags(write=False)
    return OperatorMatrix(A=A, graph=graph, flavor=graph.flavor)


def _check_vector(graph: Graph, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (graph.size,):
        raise ValueError(f"expected a vector of length {graph.size}, got shape {f.shape}")
    return f


def apply(op: OperatorMatrix | Graph, f) -> np.ndarray:
    """``(L f)(x)`` from the edge table, independent of the assembled matrix."""
    graph = op.graph if isinstance(op, OperatorMatrix) else op
    f = _check_vector(graph, f)
    u, v, b = graph.edge_arrays()
    flux = b * (f[u] - f[v])
    out = np.zeros(graph.size)
    np.add.at(out, u, flux)
    np.add.at(out, v, -flux)
    return (out + graph.c * f) / graph.m


def quadratic_form(graph: Graph, f, g) -> float:
    """``Q(f, g) = 1/2 sum_{x,y} b (f(x)-f(y)) (g(x)-g(y)) + sum_x c f g``.

    The table stores each unordered pair once, which absorbs the 1/2.
    """
    f = _check_vector(graph, f)
    g = _check_vector(graph, g)
    u, v, b = graph.edge_arrays()
    return float(np.dot(b, (f[u] - f[v]) * (g[u] - g[v])) + np.dot(graph.c, f * g))


def max_potential_ratio(graph: Graph) -> float:
    """``max c(x)/m(x)``, the sup-norm governing the Hadamard formula's hypothesis."""
    return float(np.max(graph.c / graph.m)) if graph.size else 0.0
