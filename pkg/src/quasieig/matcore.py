"""Dense real matrix basics: validation, norms, structural predicates,
and the eigenvalue oracle the theorem checkers use as ground truth.

Everything here is pure and operates on plain ``numpy`` arrays.  The
eigenvalue oracle is LAPACK-backed; its residual contract is enforced on
every call so downstream checkers never consume silently bad eigenpairs.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NonFinite, NonSquare, UnsupportedDimension

#: Largest dimension accepted by the dense eigenvalue oracle.
MAX_EIG_DIM = 64


def as_matrix(values) -> np.ndarray:
    """Validate and return a square matrix as a float64 array.

    Accepts anything ``np.asarray`` accepts.  Raises ``NonSquare`` for
    wrong shapes and ``NonFinite`` for NaN/inf entries.
    """
    m = np.asarray(values, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix entries must be finite")
    return m


def as_vector(values, n: int | None = None) -> np.ndarray:
    """Validate and return a vector as a float64 array of length ``n``."""
    v = np.asarray(values, dtype=float).reshape(-1)
    if n is not None and v.shape[0] != n:
        raise NonSquare(f"expected a vector of length {n}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise NonFinite("vector entries must be finite")
    return v


@dataclass(frozen=True)
class ClassificationReport:
    """Structural and numerical predicates of a matrix.

    Sign predicates (nonnegative, off-diagonal signs, irreducibility) are
    exact comparisons against zero: classification is structural, not a
    tolerance question.  Only symmetry/skewness/normality are relative
    tests, using ``tolerance_used``.
    """

    nonnegative: bool
    offdiag_nonneg: bool
    offdiag_nonpos: bool
    sign_constant_offdiag: bool
    irreducible: bool
    isc: bool
    symmetric: bool
    skew_symmetric: bool
    normal: bool
    tolerance_used: float


def operator_norm(m) -> float:
    """Spectral norm (largest singular value)."""
    return float(np.linalg.norm(as_matrix(m), 2))


def _reachable(adj: np.ndarray, start: int) -> np.ndarray:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        i = stack.pop()
        for j in np.nonzero(adj[i])[0]:
            if not seen[j]:
                seen[j] = True
                stack.append(int(j))
    return seen


def is_irreducible(m) -> bool:
    """True iff the digraph with an edge i -> j whenever ``|m[i, j]| > 0``
    is strongly connected.  A 1x1 matrix counts as irreducible.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if n == 1:
        return True
    adj = np.abs(m) > 0.0
    return bool(_reachable(adj, 0).all() and _reachable(adj.T, 0).all())


def classify(m, tol: float = 1e-10) -> ClassificationReport:
    """Evaluate all structural predicates of ``m``.

    ``tol`` only enters the symmetry, skew-symmetry and normality tests,
    which compare against ``tol * ||m||`` resp. ``tol * ||m||**2``.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    m = as_matrix(m)
    n = m.shape[0]
    off = ~np.eye(n, dtype=bool)
    nonnegative = bool((m >= 0.0).all())
    offdiag_nonneg = bool((m[off] >= 0.0).all())
    offdiag_nonpos = bool((m[off] <= 0.0).all())
    sign_constant = offdiag_nonneg or offdiag_nonpos
    irreducible = is_irreducible(m)
    nrm = operator_norm(m)
    symmetric = operator_norm(m - m.T) <= tol * nrm
    skew = operator_norm(m + m.T) <= tol * nrm
    normal = operator_norm(m @ m.T - m.T @ m) <= tol * nrm * nrm
    return ClassificationReport(
        nonnegative=nonnegative,
        offdiag_nonneg=offdiag_nonneg,
        offdiag_nonpos=offdiag_nonpos,
        sign_constant_offdiag=sign_constant,
        irreducible=irreducible,
        isc=irreducible and sign_constant,
        symmetric=symmetric,
        skew_symmetric=skew,
        normal=normal,
        tolerance_used=tol,
    )


def eig_oracle(m) -> list[tuple[complex, np.ndarray]]:
    """All eigenpairs of ``m``, repeated by algebraic multiplicity.

    Returns a list of ``(eigenvalue, unit right eigenvector)`` with complex
    entries.  Every pair is checked against the residual contract
    ``||M phi - lam phi|| <= 1e-8 ||M|| ||phi||``; a violation raises
    ``ConvergenceFailure``.  Restricted to n <= 64.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if n > MAX_EIG_DIM:
        raise UnsupportedDimension(f"eig_oracle is limited to n <= {MAX_EIG_DIM}")
    vals, vecs = np.linalg.eig(m)
    nrm = operator_norm(m)
    pairs = []
    for j in range(n):
        lam = complex(vals[j])
        phi = vecs[:, j]
        resid = np.linalg.norm(m @ phi - lam * phi)
        if resid > 1e-8 * max(nrm, 1e-300) * np.linalg.norm(phi):
            raise ConvergenceFailure(
                f"eigenpair {j} residual {resid:.3e} exceeds contract"
            )
        pairs.append((lam, phi))
    return pairs


def symmetric_part_eigs(m) -> np.ndarray:
    """Eigenvalues of ``(m + m^T) / 2`` in ascending order."""
    m = as_matrix(m)
    return np.linalg.eigvalsh(0.5 * (m + m.T))


def spectral_radius(m) -> float:
    """Largest eigenvalue magnitude."""
    return max(abs(lam) for lam, _ in eig_oracle(m))


def max_re(m) -> float:
    """Largest real part over the spectrum."""
    return max(lam.real for lam, _ in eig_oracle(m))
