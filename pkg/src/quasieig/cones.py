"""Self-dual solid cones: the positive orthant and its orthogonal images.

A cone here is ``U @ S_plus`` for an orthogonal ``U`` (the orthant itself
when ``U`` is the identity).  Membership questions reduce to coordinate
signs of ``U^T x``; subspace-vs-interior questions reduce to a small
max-margin LP over signed coefficients.
"""

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBasis, DimensionMismatch, NotOrthogonal
from .lp import solve_max_eps
from .matcore import as_matrix, as_vector, operator_norm

_ORTHOGONALITY_TOL = 1e-10
#: Exhaustive permutation minimization in the cone metric is limited to this n.
_METRIC_EXHAUSTIVE_MAX_N = 8
#: A span is deemed to meet the interior when the unit-scaled margin LP
#: clears this value; genuine intersections sit far above it, LP noise far
#: below.
_SPAN_DECISION_MARGIN = 1e-9


@dataclass(frozen=True, eq=False)
class Cone:
    """A self-dual solid cone ``U @ S_plus`` (origin excluded)."""

    n: int
    rotation: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch("cone dimension must be >= 1")
        if self.rotation is not None:
            u = as_matrix(self.rotation)
            if u.shape[0] != self.n:
                raise DimensionMismatch("rotation size does not match cone dimension")
            if operator_norm(u.T @ u - np.eye(self.n)) > _ORTHOGONALITY_TOL:
                raise NotOrthogonal("cone rotation is not orthogonal within 1e-10")
            object.__setattr__(self, "rotation", u)

    @staticmethod
    def orthant(n: int) -> "Cone":
        return Cone(n=n)

    @staticmethod
    def rotated(u) -> "Cone":
        u = as_matrix(u)
        return Cone(n=u.shape[0], rotation=u)

    @property
    def kind(self) -> str:
        return "orthant" if self.rotation is None else "rotated"

    @property
    def basis(self) -> np.ndarray:
        """The orthogonal matrix carrying the orthant onto this cone."""
        return np.eye(self.n) if self.rotation is None else self.rotation

    def to_local(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of ``x`` in the cone's own axes (``U^T x``)."""
        return x if self.rotation is None else self.rotation.T @ x

    def from_local(self, w: np.ndarray) -> np.ndarray:
        return w if self.rotation is None else self.rotation @ w


@dataclass(frozen=True)
class ConeMembership:
    in_cone: bool
    in_interior: bool
    min_coordinate: float
    holds: bool  # in_interior when the query was strict, else in_cone


def contains(cone: Cone, x, strict: bool = False, tol: float = 1e-12) -> ConeMembership:
    """Membership report for ``x``: cone membership within ``-tol``,
    interiority with margin ``tol``, and the minimum local coordinate."""
    x = as_vector(x)
    if x.shape[0] != cone.n:
        raise DimensionMismatch("vector length does not match cone dimension")
    w = cone.to_local(x)
    mc = float(w.min())
    in_cone = mc >= -tol and float(np.linalg.norm(x)) > 0.0
    in_interior = mc > tol
    return ConeMembership(
        in_cone=in_cone,
        in_interior=in_interior,
        min_coordinate=mc,
        holds=in_interior if strict else in_cone,
    )


def extreme_rays(cone: Cone) -> list[np.ndarray]:
    """The n unit generators of the cone's facial rays (columns of U)."""
    u = cone.basis
    return [u[:, i].copy() for i in range(cone.n)]


def cone_metric(cone: Cone, other: Cone) -> float:
    """Distance ``min_P || I - U2 P U1^T ||`` over permutations of the
    orthant's axes.

    The orthogonal matrix carrying one cone onto another is only unique up
    to the orthant's stabilizer (the permutation group), so the minimum is
    taken exhaustively for n <= 8.  Beyond that the stored representatives
    are compared directly and a warning flags the representative
    dependence.
    """
    if cone.n != other.n:
        raise DimensionMismatch("cone dimensions differ")
    n = cone.n
    k = other.basis.T @ cone.basis
    if n > _METRIC_EXHAUSTIVE_MAX_N:
        warnings.warn(
            "cone_metric at n > 8 skips the permutation minimization; "
            "the value depends on the stored representatives",
            stacklevel=2,
        )
        return float(np.linalg.norm(np.eye(n) - k, 2))
    # ||I - U2 P U1^T|| = ||U2^T U1 - P|| by orthogonal invariance.
    best = np.inf
    for perm in itertools.permutations(range(n)):
        d = k.copy()
        d[perm, range(n)] -= 1.0
        best = min(best, float(np.linalg.norm(d, 2)))
    return best


def span_meets_interior(cone: Cone, basis_vectors, tol: float = 1e-9) -> np.ndarray | None:
    """A witness in ``span(basis_vectors)`` with all local coordinates
    ``>= tol``, or ``None`` when the span misses the open cone.

    The span is a linear space, so a witness exists iff some signed
    combination has strictly positive local coordinates.  Writing the
    coefficients as a difference of two simplex halves turns that into the
    max-margin LP over ``[W, -W]``; a strictly positive optimal margin is
    the yes answer, and the witness is rescaled to the requested margin.
    """
    vecs = [as_vector(v, cone.n) for v in basis_vectors]
    if not 1 <= len(vecs) <= cone.n:
        raise DimensionMismatch("need between 1 and n basis vectors")
    s = np.column_stack(vecs)
    norms = np.linalg.norm(s, axis=0)
    if norms.min() <= 0.0:
        raise DegenerateBasis("zero basis vector")
    s = s / norms
    sv = np.linalg.svd(s, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise DegenerateBasis("basis vectors are numerically dependent")

    w = cone.to_local(s)
    sol = solve_max_eps(np.hstack([w, -w]))
    if sol.eps_star <= _SPAN_DECISION_MARGIN:
        return None
    kdim = s.shape[1]
    coeff = sol.x_star[:kdim] - sol.x_star[kdim:]
    x = s @ coeff
    x = x / np.linalg.norm(x)
    margin = float(cone.to_local(x).min())
    if tol > 0.0 and margin < tol:
        x = x * (tol / margin)
    return x


def random_orthogonal(n: int, seed: int) -> np.ndarray:
    """Haar-ish random orthogonal matrix, deterministic per seed.

    QR of a Gaussian matrix (a composition of Householder reflections)
    with the R-diagonal sign fix; ``||U^T U - I|| <= 1e-12`` holds by
    construction.
    """
    if n < 1:
        raise DimensionMismatch("n must be >= 1")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.where(np.diag(r) >= 0.0, 1.0, -1.0)


def givens_rotation(n: int, i: int, j: int, theta: float) -> np.ndarray:
    """Plane rotation by ``theta`` in coordinates ``(i, j)``."""
    if not (0 <= i < n and 0 <= j < n and i != j):
        raise DimensionMismatch("invalid rotation plane")
    g = np.eye(n)
    c, s = np.cos(theta), np.sin(theta)
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -s
    g[j, i] = s
    return g
