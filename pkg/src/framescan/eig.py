"""Deterministic iterative estimation of extremal eigenvalues and singular values.

Extremal eigenvalues of Hermitian matrices are estimated by Lanczos
iteration with full reorthogonalization, started from a fixed vector, so
results are reproducible bit for bit across runs and worker counts.  The
matrices that arise here are a few hundred rows at most, and the Krylov
dimension is allowed to reach the matrix dimension, at which point the
Ritz values are exact up to roundoff.  Spectra of the truncated coupling
operators cluster tightly, which defeats plain power or Rayleigh-quotient
iteration; the Krylov sweep is immune to that.

Dense LAPACK factorizations serve as building blocks only; full SVD and
eigendecompositions remain test oracles.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla


def _start_vector(n: int, phase: int = 0) -> np.ndarray:
    # fixed and generic against common symmetric structures
    idx = np.arange(n)
    v = np.cos((1.234 + 0.19 * phase) * idx + 0.271) + 1j * np.sin(0.567 * idx + 0.113 + phase)
    return v / np.linalg.norm(v)


def _lanczos_ritz_values(H: np.ndarray, max_dim: int = 512) -> np.ndarray:
    """Ritz values of a Hermitian matrix from a reorthogonalized Lanczos sweep.

    The sweep restarts with a fresh deterministic vector whenever the
    Krylov space becomes invariant, so for k = n the values are the full
    spectrum up to roundoff.
    """
    n = H.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    k = min(n, max_dim)
    basis = np.zeros((k, n), dtype=complex)
    alphas: list[float] = []
    betas: list[float] = []
    blocks: list[tuple[list[float], list[float]]] = []
    scale = float(np.linalg.norm(H, "fro")) + 1e-300
    phase = 0
    v = _start_vector(n, phase)
    j = 0
    while j < k:
        basis[j] = v
        j += 1
        u = H @ v
        a = float(np.real(np.vdot(v, u)))
        alphas.append(a)
        u = u - a * v
        if betas:
            u = u - betas[-1] * basis[j - 2]
        # full reorthogonalization, twice for safety
        for _ in range(2):
            coeffs = basis[:j].conj() @ u
            u = u - coeffs @ basis[:j]
        if j == k:
            break
        b = float(np.linalg.norm(u))
        if b <= 1e-13 * scale:
            # invariant subspace found; close this block and restart fresh
            blocks.append((alphas, betas))
            alphas, betas = [], []
            phase += 1
            w = _start_vector(n, phase)
            coeffs = basis[:j].conj() @ w
            w = w - coeffs @ basis[:j]
            norm = float(np.linalg.norm(w))
            if norm <= 1e-10:
                break
            v = w / norm
            continue
        betas.append(b)
        v = u / b
    if alphas:
        blocks.append((alphas, betas))
    ritz: list[float] = []
    for al, be in blocks:
        if not al:
            continue
        if len(al) == 1:
            ritz.extend(al)
        else:
            vals = sla.eigh_tridiagonal(
                np.asarray(al), np.asarray(be[: len(al) - 1]), eigvals_only=True
            )
            ritz.extend(vals.tolist())
    return np.asarray(sorted(ritz))


def largest_eigenvalue(H: np.ndarray, max_dim: int = 512) -> float:
    """Largest eigenvalue estimate of a Hermitian matrix."""
    return float(_lanczos_ritz_values(H, max_dim)[-1])


def smallest_eigenvalue(H: np.ndarray, max_dim: int = 512) -> float:
    """Smallest eigenvalue estimate of a Hermitian matrix."""
    return float(_lanczos_ritz_values(H, max_dim)[0])


def extremal_eigenvalues(H: np.ndarray, max_dim: int = 512) -> tuple[float, float]:
    """(smallest, largest) eigenvalue estimates of a Hermitian matrix."""
    vals = _lanczos_ritz_values(H, max_dim)
    return float(vals[0]), float(vals[-1])


def smallest_singular_value(A: np.ndarray, max_dim: int = 512) -> float:
    """Smallest singular value of a dense complex matrix.

    Estimated through the normal matrix of the narrower side, so the value
    matches the smallest entry of the usual singular value list for
    rectangular inputs.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or min(A.shape) == 0:
        raise ValueError("expected a nonempty 2-d matrix")
    if A.shape[0] >= A.shape[1]:
        gram = A.conj().T @ A
    else:
        gram = A @ A.conj().T
    gram = 0.5 * (gram + gram.conj().T)
    lam = smallest_eigenvalue(gram, max_dim)
    return float(np.sqrt(max(lam, 0.0)))
