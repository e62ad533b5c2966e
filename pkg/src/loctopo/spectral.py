"""Heat kernel signature from the normalized graph Laplacian."""

from __future__ import annotations

import numpy as np

from .filters import VertexFilter
from .graph import Graph


class SpectralError(RuntimeError):
    pass


def normalized_laplacian(g: Graph) -> np.ndarray:
    """L = I - D^{-1/2} A D^{-1/2}; isolated vertices use D^{-1/2} = 0."""
    n = g.num_vertices
    A = np.zeros((n, n))
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1.0
    deg = A.sum(axis=1)
    dinv = np.where(deg > 0, 1.0 / np.sqrt(np.maximum(deg, 1e-300)), 0.0)
    return np.eye(n) - dinv[:, None] * A * dinv[None, :]


def hks_filter(g: Graph, t: float, residual_tol: float = 1e-10) -> VertexFilter:
    """hks_i(t) = sum_k exp(-t * lambda_k) * psi_k(i)^2.

    Full dense symmetric eigendecomposition; eigenpairs are checked against
    the residual tolerance and a hard error is raised on non-convergence.
    """
    if t < 0:
        raise SpectralError(f"diffusion parameter must be >= 0, got {t}")
    if g.num_vertices == 0:
        raise SpectralError("empty graph")
    L = normalized_laplacian(g)
    try:
        lam, psi = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed: {exc}") from exc
    resid = np.abs(L @ psi - psi * lam[None, :]).max()
    if resid > residual_tol:
        raise SpectralError(f"eigenpair residual {resid:.3e} exceeds {residual_tol}")
    vals = (psi ** 2) @ np.exp(-t * lam)
    return VertexFilter(g, {i: float(vals[i]) for i in range(g.num_vertices)})
