"""Spectral comparison, local Weyl law, Hadamard formula and Ambarzumian check.

Eigenvalue indices ``n`` in this module are 1-based (``n = 1`` is the lowest
eigenvalue), matching the usual ``lambda_1 <= lambda_2 <= ...`` labelling.

Perturbations are always added on top of the graph's own potential, which
is treated as part of the unperturbed realization.  For a Dirichlet
truncation that potential is the killing term at the boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .eigensolve import Spectrum, eigendecompose
from .graph import Graph, GraphFamily, TruncationFlavor, truncate
from .operator import assemble
from .rules import PowerRule


class NonSimpleEigenvalueError(ValueError):
    pass


class EigenvalueCrossingError(ValueError):
    pass


def _check_potential(graph: Graph, c) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.shape != (graph.size,):
        raise ValueError(f"potential has shape {c.shape}, graph has {graph.size} vertices")
    if np.any(~np.isfinite(c)) or np.any(c < 0):
        bad = int(np.flatnonzero(~(c >= 0) | ~np.isfinite(c))[0])
        raise ValueError(f"potential must be finite and nonnegative (vertex {graph.labels[bad]})")
    return c


def solve(graph: Graph, extra_potential=None) -> Spectrum:
    if extra_potential is not None:
        graph = graph.with_potential(graph.c + extra_potential)
    return eigendecompose(assemble(graph))


def local_weyl_check(spec: Spectrum, m) -> np.ndarray:
    """Per-vertex defect ``|m(x) sum_n f_n(x)^2 - 1|``."""
    m = np.asarray(m, dtype=float)
    F = spec.eigenfunctions
    if F.shape != (m.size, m.size):
        raise ValueError(
            f"local Weyl law needs all {m.size} eigenpairs, spectrum has shape {F.shape}"
        )
    return np.abs(m * np.sum(F**2, axis=1) - 1.0)


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    lambdas0: np.ndarray
    lambdasc: np.ndarray
    diffs: np.ndarray
    partial_sums: np.ndarray
    target: float
    """``sum_x c(x)/m(x)`` over the vertices actually present."""
    discrepancy: float
    target_infinite: bool = False
    """Set when the infinite family behind this truncation has a divergent ``c/m`` series."""

    @property
    def total(self) -> float:
        return float(self.partial_sums[-1]) if self.partial_sums.size else 0.0

    def tolerance(self, rtol: float = 1e-9) -> float:
        return rtol * (1.0 + abs(self.target))

    def holds(self, rtol: float = 1e-9) -> bool:
        return self.discrepancy <= self.tolerance(rtol)


def compare_spectra(spec0: Spectrum, specc: Spectrum, target: float) -> ComparisonReport:
    if spec0.size != specc.size:
        raise ValueError("spectra have different dimensions")
    diffs = specc.lambdas - spec0.lambdas
    partial = np.cumsum(diffs)
    total = math.fsum(diffs)
    if partial.size:
        partial[-1] = total
    return ComparisonReport(
        lambdas0=spec0.lambdas, lambdasc=specc.lambdas, diffs=diffs, partial_sums=partial,
        target=target, discrepancy=abs(total - target),
    )


def spectral_comparison(graph: Graph, c) -> ComparisonReport:
    """Compare ``L`` on ``graph`` with ``L`` after adding the potential ``c``."""
    c = _check_potential(graph, c)
    spec0 = solve(graph)
    specc = solve(graph, c)
    return compare_spectra(spec0, specc, math.fsum(c / graph.m))


def _index(spec: Spectrum, n: int) -> int:
    if not 1 <= n <= spec.size:
        raise IndexError(f"eigenvalue index {n} outside 1..{spec.size}")
    return n - 1


def hadamard_derivative(graph: Graph, c, tau: float, n: int) -> float:
    """``d/dtau lambda_n(tau c) = sum_x c(x) f_n^{tau c}(x)^2``; refuses clusters."""
    c = _check_potential(graph, c)
    spec = solve(graph, tau * c)
    k = _index(spec, n)
    if not spec.simple(k):
        raise NonSimpleEigenvalueError(
            f"eigenvalue {n} is not simple at tau={tau} (lambda={spec.lambdas[k]:.6g})"
        )
    return float(np.dot(c, spec.eigenfunctions[:, k] ** 2))


def hadamard_derivatives(graph: Graph, c, tau: float) -> np.ndarray:
    """All ``n`` at once, without the simplicity guard."""
    c = _check_potential(graph, c)
    F = solve(graph, tau * c).eigenfunctions
    return c @ F**2


def _matching_index(ref: Spectrum, k: int, other: Spectrum) -> int:
    overlaps = np.abs(other.vectors.T @ ref.vectors[:, k])
    return int(np.argmax(overlaps))


_STENCILS = {
    # offsets (in units of h) and weights of second-order first-derivative stencils
    "central": ((-1, 1), (-0.5, 0.5)),
    "forward": ((0, 1, 2), (-1.5, 2.0, -0.5)),
    "backward": ((-2, -1, 0), (0.5, -2.0, 1.5)),
}


def hadamard_fd_oracle(graph: Graph, c, tau: float, n: int, h: float,
                       stencil: str = "central") -> float:
    """Finite-difference ``d/dtau lambda_n(tau c)``, second order in ``h``.

    The default is the central difference
    ``(lambda_n((tau+h)c) - lambda_n((tau-h)c)) / 2h``; at the ends of
    ``[0, 1]`` a one-sided ``stencil`` keeps every evaluation inside.
    """
    c = _check_potential(graph, c)
    offsets, weights = _STENCILS[stencil]
    lo_t, hi_t = tau + min(offsets) * h, tau + max(offsets) * h
    if not (h > 0 and lo_t >= -1e-12 and hi_t <= 1 + 1e-12):
        raise ValueError(f"stencil [{lo_t}, {hi_t}] leaves [0, 1]")
    centre = solve(graph, tau * c)
    k = _index(centre, n)
    if not centre.simple(k):
        raise NonSimpleEigenvalueError(f"eigenvalue {n} is not simple at tau={tau}")
    total = 0.0
    for off, w in zip(offsets, weights):
        side = centre if off == 0 else solve(graph, (tau + off * h) * c)
        if off != 0 and _matching_index(centre, k, side) != k:
            raise EigenvalueCrossingError(
                f"eigenvalue {n} changes order inside [{lo_t}, {hi_t}]"
            )
        total += w * side.lambdas[k]
    return float(total / h)


class Verdict(enum.Enum):
    CONSISTENT_WITH_ZERO = "consistent-with-zero"
    SPECTRA_DIFFER = "spectra-differ"
    CONTRADICTION = "contradiction"


def ambarzumian_check(spec_c: Spectrum, spec_0: Spectrum, m, c, tol: float) -> Verdict:
    """Classify a pair of spectra against the uniqueness statement.

    Equal spectra force ``c = 0``: agreement within ``tol`` while
    ``sum c/m > N tol`` is a contradiction.
    """
    m = np.asarray(m, dtype=float)
    c = np.asarray(c, dtype=float)
    N = m.size
    if not (spec_c.size == spec_0.size == N == c.size):
        raise ValueError("spectra, measure and potential must share one dimension")
    gap = float(np.max(np.abs(spec_c.lambdas - spec_0.lambdas))) if N else 0.0
    mass = math.fsum(c / m)
    if gap > tol:
        return Verdict.SPECTRA_DIFFER
    if mass > N * tol:
        return Verdict.CONTRADICTION
    return Verdict.CONSISTENT_WITH_ZERO


@dataclass(frozen=True, eq=False)
class StudyRow:
    N: int
    flavor: TruncationFlavor
    report: ComparisonReport
    gaps: np.ndarray
    """``lambda_n(c) - lambda_n(0)`` for ``n = 1..K``."""


@dataclass(frozen=True, eq=False)
class ConvergenceStudy:
    sizes: tuple[int, ...]
    rows: list[StudyRow]
    ratio_rule: PowerRule | None
    """Closed form of ``c/m`` when available."""
    target_infinite: bool
    infinite_target: float | None = None
    tails: dict[int, float] = field(default_factory=dict)
    tail_bounds: dict[int, tuple[float, float]] = field(default_factory=dict)

    def row(self, N: int, flavor: TruncationFlavor) -> StudyRow:
        for r in self.rows:
            if r.N == N and r.flavor is flavor:
                return r
        raise KeyError((N, flavor))


def potential_ratio_rule(family: GraphFamily, c_rule: PowerRule) -> PowerRule | None:
    m_terms = family.m_rule.simplified().terms
    if len(m_terms) != 1:
        return None
    coef, p = m_terms[0]
    return c_rule.divided_by_monomial(coef, p)


def convergence_study(family: GraphFamily, c_rule: PowerRule, sizes, K: int,
                      flavors=(TruncationFlavor.NEUMANN, TruncationFlavor.DIRICHLET)) -> ConvergenceStudy:
    sizes = tuple(int(N) for N in sizes)
    if list(sizes) != sorted(sizes) or not sizes or sizes[0] < 1:
        raise ValueError("sizes must be positive and ascending")
    ratio = potential_ratio_rule(family, c_rule)
    infinite = ratio is not None and not ratio.series_converges()
    rows = []
    for N in sizes:
        c = c_rule.evaluate(N)
        for flavor in flavors:
            graph = truncate(family, N, flavor)
            try:
                report = spectral_comparison(graph, c)
            except Exception as exc:
                raise RuntimeError(f"convergence study failed at N={N} ({flavor.value}): {exc}") from exc
            report = ComparisonReport(**{**report.__dict__, "target_infinite": infinite})
            rows.append(StudyRow(N=N, flavor=flavor, report=report, gaps=report.diffs[:K].copy()))
    study = ConvergenceStudy(sizes=sizes, rows=rows, ratio_rule=ratio, target_infinite=infinite)
    if ratio is not None and not infinite:
        object.__setattr__(study, "infinite_target", ratio.series_total())
        for N in sizes:
            study.tails[N] = ratio.series_tail(N)
            study.tail_bounds[N] = ratio.tail_bounds(N)
    return study
