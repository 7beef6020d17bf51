"""Theorem-level checkers: Perron-root identities, spectral sandwiches,
perturbation constants and stability bounds, cone-continuity sweeps,
the normal-matrix canonical form, and its cone classification.

Checkers return ``TheoremReport`` values rather than raising: a falsified
bound is data.  Inapplicable preconditions are carried in the report too
(``applicable=False``), which the CLI maps to its own exit code.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cones import Cone, cone_metric, givens_rotation, span_meets_interior
from .errors import ConvergenceFailure, NotInterior, NotNormal, NotOrthogonal
from .matcore import (
    as_matrix,
    classify,
    eig_oracle,
    max_re,
    operator_norm,
    spectral_radius,
    symmetric_part_eigs,
)
from .quasi import QuasiEigenResult, quasi_pair, upper_quasi_eigenvalue


@dataclass(frozen=True)
class TheoremReport:
    name: str
    holds: bool
    lhs: float
    rhs: float
    slack: float
    details: str
    applicable: bool = True


@dataclass(frozen=True)
class PerturbationBound:
    """Lipschitz constants of the quasi-eigenvalue map at (A, C).

    ``c1`` is the supremum of ``||u|| / <u, v>`` over the cone for the
    unit left quasi-eigenvector v, finite only when v is interior (it
    equals one over the smallest local coordinate of v, attained on an
    extreme ray); ``c2`` mirrors it with the unit right quasi-eigenvector.
    """

    c1: float
    c2: float
    c0: float
    u_interior: bool
    v_interior: bool


@dataclass(frozen=True, eq=False)
class NormalCanonicalForm:
    """Orthogonal reduction of a normal matrix to rotation-scaling blocks
    plus real scalars."""

    u_a: np.ndarray = field(repr=False)
    rotation_blocks: list[tuple[float, float]]  # (r, theta), theta in (0, pi)
    real_eigs: list[float]
    l: int


def rotation_block(r: float, theta: float) -> np.ndarray:
    """The 2x2 rotation-scaling block with eigenvalues r e^{+-i theta}."""
    c, s = math.cos(theta), math.sin(theta)
    return r * np.array([[c, -s], [s, c]])


def assemble_canonical(form: NormalCanonicalForm) -> np.ndarray:
    """Block-diagonal matrix encoded by a canonical form."""
    n = 2 * form.l + len(form.real_eigs)
    out = np.zeros((n, n))
    for i, (r, theta) in enumerate(form.rotation_blocks):
        out[2 * i: 2 * i + 2, 2 * i: 2 * i + 2] = rotation_block(r, theta)
    for j, mu in enumerate(form.real_eigs):
        out[2 * form.l + j, 2 * form.l + j] = mu
    return out


def _fmt(x: float) -> str:
    return format(x, ".12g")


def perron_check(a, tol: float = 1e-9) -> TheoremReport:
    """Nonnegative matrices: the upper quasi-eigenvalue over the orthant
    dominates the spectral radius, with equality when it lands on an
    eigenvalue magnitude."""
    a = as_matrix(a)
    if not classify(a).nonnegative:
        return TheoremReport(
            name="perron_root",
            holds=False,
            lhs=math.nan,
            rhs=math.nan,
            slack=math.nan,
            details="not applicable: matrix has negative entries",
            applicable=False,
        )
    cone = Cone.orthant(a.shape[0])
    lam, _ = upper_quasi_eigenvalue(a, cone, tol)
    rho = spectral_radius(a)
    holds = lam >= rho - tol
    details = f"upper={_fmt(lam)} spectral_radius={_fmt(rho)}"
    mags = [abs(val) for val, _ in eig_oracle(a)]
    if min(abs(lam - mag) for mag in mags) <= tol:
        holds = holds and abs(lam - rho) <= tol
        details += "; equality branch (value matches an eigenvalue magnitude)"
    return TheoremReport(
        name="perron_root",
        holds=holds,
        lhs=lam,
        rhs=rho,
        slack=lam - rho,
        details=details,
    )


def max_re_check(a, tol: float = 1e-9) -> TheoremReport:
    """Matrices with nonnegative off-diagonal entries: the upper
    quasi-eigenvalue over the orthant dominates the largest eigenvalue
    real part, with equality when it lands on one."""
    a = as_matrix(a)
    if not classify(a).offdiag_nonneg:
        return TheoremReport(
            name="max_real_part",
            holds=False,
            lhs=math.nan,
            rhs=math.nan,
            slack=math.nan,
            details="not applicable: off-diagonal entries change sign",
            applicable=False,
        )
    cone = Cone.orthant(a.shape[0])
    lam, _ = upper_quasi_eigenvalue(a, cone, tol)
    mre = max_re(a)
    holds = lam >= mre - tol
    details = f"upper={_fmt(lam)} max_re={_fmt(mre)}"
    res = [val.real for val, _ in eig_oracle(a)]
    if min(abs(lam - re) for re in res) <= tol:
        holds = holds and abs(lam - mre) <= tol
        details += "; equality branch (value matches an eigenvalue real part)"
    return TheoremReport(
        name="max_real_part",
        holds=holds,
        lhs=lam,
        rhs=mre,
        slack=lam - mre,
        details=details,
    )


def _eig_is_simple(a, lam: float, cluster_gap: float = 1e-6) -> bool:
    vals = np.array([val for val, _ in eig_oracle(a)])
    nearest = vals[np.argmin(np.abs(vals - lam))]
    return int(np.sum(np.abs(vals - nearest) <= cluster_gap)) == 1


def isc_check(a, tol: float = 1e-9) -> TheoremReport:
    """Irreducible sign-constant-off-diagonal matrices: the two
    quasi-eigenvalues over the orthant coincide at a simple eigenvalue
    whose right and left eigenvectors are strictly positive."""
    a = as_matrix(a)
    if not classify(a).isc:
        return TheoremReport(
            name="isc_saddle",
            holds=False,
            lhs=math.nan,
            rhs=math.nan,
            slack=math.nan,
            details="not applicable: matrix is not irreducible sign-constant",
            applicable=False,
        )
    pair = quasi_pair(a, Cone.orthant(a.shape[0]), tol)
    max_res = max(pair.eigen_residual_right, pair.eigen_residual_left)
    simple = _eig_is_simple(a, pair.lambda_upper)
    holds = (
        pair.is_saddle
        and pair.u_interior
        and pair.v_interior
        and max_res <= 100.0 * tol
        and simple
    )
    details = (
        f"lambda={_fmt(pair.lambda_upper)} gap={_fmt(pair.lambda_upper - pair.lambda_lower)} "
        f"saddle={pair.is_saddle} residual={_fmt(max_res)} simple={simple}"
    )
    return TheoremReport(
        name="isc_saddle",
        holds=holds,
        lhs=pair.lambda_upper,
        rhs=pair.lambda_lower,
        slack=100.0 * tol - max_res,
        details=details,
    )


def perturbation_constants(
    a, cone: Cone, tol: float = 1e-9, pair: QuasiEigenResult | None = None
) -> PerturbationBound:
    """Constants c1, c2 (and c0 = max) controlling how far a perturbation
    can move the quasi-eigenvalues.  Infinite when the corresponding
    quasi-eigenvector sits on the boundary; raises ``NotInterior`` when
    both do."""
    a = as_matrix(a)
    if pair is None:
        pair = quasi_pair(a, cone, tol)
    if not (pair.u_interior or pair.v_interior):
        raise NotInterior("both quasi-eigenvectors are boundary vectors")
    c1 = math.inf
    c2 = math.inf
    if pair.v_interior:
        z = cone.to_local(pair.v_left / np.linalg.norm(pair.v_left))
        c1 = 1.0 / float(z.min())
    if pair.u_interior:
        w = cone.to_local(pair.u_right / np.linalg.norm(pair.u_right))
        c2 = 1.0 / float(w.min())
    return PerturbationBound(
        c1=c1,
        c2=c2,
        c0=max(c1, c2),
        u_interior=pair.u_interior,
        v_interior=pair.v_interior,
    )


def _cone_sign(cone: Cone, d: np.ndarray) -> str:
    """Entrywise sign of the perturbation in the cone's own axes.

    A perturbation moves the quasi-eigenvalues monotonically when it
    pairs one-signedly against the cone, i.e. when U^T D U is entrywise
    one-signed; for the orthant that is D itself.
    """
    local = d if cone.rotation is None else cone.rotation.T @ d @ cone.rotation
    if (local >= 0.0).all():
        return "nonnegative"
    if (local <= 0.0).all():
        return "nonpositive"
    return "mixed"


def perturbation_bound_check(
    a,
    cone: Cone,
    d,
    tol: float = 1e-9,
    pair: QuasiEigenResult | None = None,
    bound: PerturbationBound | None = None,
) -> TheoremReport:
    """Evaluate every perturbation inequality whose interiority gate is
    met: the one-sided Lipschitz bounds, the monotone one-signed cases,
    and the two-sided stability bound when both vectors are interior."""
    a = as_matrix(a)
    d = as_matrix(d)
    if pair is None:
        pair = quasi_pair(a, cone, tol)
    if not (pair.u_interior or pair.v_interior):
        return TheoremReport(
            name="perturbation_bounds",
            holds=False,
            lhs=math.nan,
            rhs=math.nan,
            slack=math.nan,
            details="not applicable: both quasi-eigenvectors on the boundary",
            applicable=False,
        )
    if bound is None:
        bound = perturbation_constants(a, cone, tol, pair=pair)
    moved = quasi_pair(a + d, cone, tol)
    dnorm = operator_norm(d)
    sign = _cone_sign(cone, d)

    checks: list[tuple[str, float, float]] = []  # (name, lhs, rhs) for lhs <= rhs
    if pair.v_interior:
        checks.append(
            ("upper_vs_lower_lipschitz", moved.lambda_upper - pair.lambda_lower, bound.c1 * dnorm)
        )
        if sign == "nonpositive":
            checks.append(("monotone_nonpositive", moved.lambda_upper, pair.lambda_lower))
    if pair.u_interior:
        checks.append(
            ("lower_vs_upper_lipschitz", pair.lambda_upper - moved.lambda_lower, bound.c2 * dnorm)
        )
        if sign == "nonnegative":
            checks.append(("monotone_nonnegative", pair.lambda_upper, moved.lambda_lower))
    if pair.u_interior and pair.v_interior:
        lam = 0.5 * (pair.lambda_upper + pair.lambda_lower)
        dev = max(abs(moved.lambda_upper - lam), abs(moved.lambda_lower - lam))
        checks.append(("two_sided_stability", dev, bound.c0 * dnorm))

    slack = min(rhs - lhs for _, lhs, rhs in checks)
    holds = slack >= -tol
    _, lhs_b, rhs_b = min(checks, key=lambda c: c[2] - c[1])
    details = "; ".join(
        f"{nm}: lhs={_fmt(lhs)} rhs={_fmt(rhs)}" for nm, lhs, rhs in checks
    ) + f"; perturbation_sign={sign}"
    return TheoremReport(
        name="perturbation_bounds",
        holds=holds,
        lhs=lhs_b,
        rhs=rhs_b,
        slack=slack,
        details=details,
    )


def cone_continuity_experiment(
    a, cone: Cone, angles, tol: float = 1e-9, seed: int = 0
) -> TheoremReport:
    """Rotate the cone through the given angles and report the deviation
    of the quasi-eigenvalues per unit of cone distance.

    The bounding constant is not constructive, so nothing is asserted
    against a closed form: the report carries the sweep (angle, distance,
    deviation, ratio) as JSON in ``details`` and holds iff every ratio is
    finite."""
    a = as_matrix(a)
    base = quasi_pair(a, cone, tol)
    if not (base.u_interior and base.v_interior):
        raise NotInterior("cone continuity requires interior quasi-eigenvectors")
    lam = 0.5 * (base.lambda_upper + base.lambda_lower)
    rng = np.random.default_rng(seed)
    sweep = []
    ratios = []
    for theta in angles:
        if cone.n == 2:
            i, j = 0, 1
        else:
            i, j = rng.choice(cone.n, size=2, replace=False)
        rot = givens_rotation(cone.n, int(i), int(j), float(theta))
        moved_cone = Cone.rotated(rot @ cone.basis)
        dist = cone_metric(cone, moved_cone)
        moved = quasi_pair(a, moved_cone, tol)
        dev = max(abs(moved.lambda_upper - lam), abs(moved.lambda_lower - lam))
        ratio = dev / dist if dist > 0.0 else 0.0
        ratios.append(ratio)
        sweep.append({"angle": float(theta), "distance": dist, "deviation": dev, "ratio": ratio})
    holds = all(math.isfinite(r) for r in ratios)
    worst = max(ratios) if ratios else 0.0
    return TheoremReport(
        name="cone_continuity",
        holds=holds,
        lhs=worst,
        rhs=math.inf,
        slack=math.inf,
        details=json.dumps(sweep),
    )


def bounds_check(a, cone: Cone, tol: float = 1e-9) -> TheoremReport:
    """The symmetric-part eigenvalue sandwich, plus the eigenvalue
    real-part sandwich when the matrix is normal."""
    a = as_matrix(a)
    pair = quasi_pair(a, cone, tol)
    sym = symmetric_part_eigs(a)
    lo, hi = float(sym[0]), float(sym[-1])
    margins = [
        pair.lambda_lower - lo,
        hi - pair.lambda_upper,
        pair.lambda_upper - pair.lambda_lower,
    ]
    details = (
        f"sym_bounds=[{_fmt(lo)}, {_fmt(hi)}] "
        f"lower={_fmt(pair.lambda_lower)} upper={_fmt(pair.lambda_upper)}"
    )
    if classify(a).normal:
        res = [val.real for val, _ in eig_oracle(a)]
        rlo, rhi = min(res), max(res)
        margins += [pair.lambda_lower - rlo, rhi - pair.lambda_upper]
        details += f"; normal re_bounds=[{_fmt(rlo)}, {_fmt(rhi)}]"
    slack = min(margins)
    return TheoremReport(
        name="spectral_sandwich",
        holds=slack >= -tol,
        lhs=pair.lambda_lower,
        rhs=pair.lambda_upper,
        slack=slack,
        details=details,
    )


def _complex_gram_schmidt(vecs: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for v in vecs:
        w = v.astype(complex)
        for q in out:
            w = w - np.vdot(q, w) * q
        nrm = np.linalg.norm(w)
        if nrm < 1e-10:
            raise ConvergenceFailure("degenerate eigenvector cluster")
        out.append(w / nrm)
    return out


def _cluster(indices: list[int], vals: np.ndarray, gap: float) -> list[list[int]]:
    order = sorted(indices, key=lambda i: (vals[i].real, vals[i].imag))
    groups: list[list[int]] = []
    for i in order:
        if groups and abs(vals[i] - vals[groups[-1][-1]]) <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def normal_canonical_form(a, tol: float = 1e-10) -> NormalCanonicalForm:
    """Orthogonal matrix and block data reducing a normal matrix to its
    rotation-scaling canonical form.

    Built from the eigenvalue oracle: each conjugate pair contributes the
    columns sqrt(2) Re(phi), sqrt(2) Im(phi) of the representative with
    negative imaginary part (so every block angle lands in (0, pi)), each
    real eigenvalue its real eigenvector.  Near-degenerate clusters are
    re-orthonormalized jointly before the columns are formed.
    """
    a = as_matrix(a)
    if not classify(a, tol).normal:
        raise NotNormal("matrix is not normal within tolerance")
    nrm = operator_norm(a)
    im_tol = 1e-8 * max(1.0, nrm)
    gap = max(1e-7 * nrm, 1e-12)

    pairs = eig_oracle(a)
    vals = np.array([lam for lam, _ in pairs])
    vecs = [phi for _, phi in pairs]

    reps = [i for i in range(len(vals)) if vals[i].imag < -im_tol]
    conj = [i for i in range(len(vals)) if vals[i].imag > im_tol]
    reals = [i for i in range(len(vals)) if abs(vals[i].imag) <= im_tol]
    if len(reps) != len(conj):
        raise ConvergenceFailure("conjugate eigenvalues do not pair up")

    blocks: list[tuple[float, float, np.ndarray, np.ndarray]] = []
    for group in _cluster(reps, vals, gap):
        ortho = _complex_gram_schmidt([vecs[i] for i in group])
        for i, phi in zip(group, ortho):
            lam = vals[i]
            r = float(abs(lam))
            theta = float(math.atan2(-lam.imag, lam.real))
            blocks.append((r, theta, math.sqrt(2.0) * phi.real, math.sqrt(2.0) * phi.imag))

    real_cols: list[tuple[float, np.ndarray]] = []
    for group in _cluster(reals, vals, gap):
        ortho = _complex_gram_schmidt([np.real(vecs[i]).astype(complex) for i in group])
        for i, phi in zip(group, ortho):
            real_cols.append((float(vals[i].real), phi.real))

    blocks.sort(key=lambda blk: -blk[0] * math.cos(blk[1]))
    real_cols.sort(key=lambda rc: -rc[0])

    columns = []
    for _, _, p, q in blocks:
        columns.extend([p, q])
    for _, phi in real_cols:
        columns.append(phi)
    u_a = np.column_stack(columns)

    form = NormalCanonicalForm(
        u_a=u_a,
        rotation_blocks=[(r, theta) for r, theta, _, _ in blocks],
        real_eigs=[mu for mu, _ in real_cols],
        l=len(blocks),
    )
    n = a.shape[0]
    if operator_norm(u_a.T @ u_a - np.eye(n)) > 1e-8:
        raise ConvergenceFailure("canonical basis lost orthogonality")
    if operator_norm(u_a.T @ a @ u_a - assemble_canonical(form)) > max(1e-8 * nrm, 1e-10):
        raise ConvergenceFailure("canonical form residual exceeds contract")
    return form


def theorem4_classify(a, cone: Cone, tol: float = 1e-9) -> TheoremReport:
    """Predict both quasi-eigenvalues of a normal matrix from which
    invariant subspaces of its canonical form meet the open cone, then
    compare the prediction against the LP-bisection values.

    No subspace meeting the interior predicts the full real-part range;
    a meeting subspace pins both values to its eigenvalue real part.

    The subspace rule is exact when the cone is compatible with the
    canonical axes (the conjugated orthant), in dimension 2, and whenever
    a one-dimensional subspace (a genuine eigenvector) meets the
    interior.  For other cone placements a rotation 2-plane can cut the
    open cone with neither of its axes inside, and the true values then
    fall strictly between the eigenvalue real parts; the report carries
    the discrepancy (``holds=False``) rather than raising.
    """
    a = as_matrix(a)
    form = normal_canonical_form(a)
    subspaces: list[tuple[float, list[np.ndarray], int]] = []
    for i, (r, theta) in enumerate(form.rotation_blocks):
        cols = [form.u_a[:, 2 * i], form.u_a[:, 2 * i + 1]]
        subspaces.append((r * math.cos(theta), cols, 2))
    for j, mu in enumerate(form.real_eigs):
        subspaces.append((mu, [form.u_a[:, 2 * form.l + j]], 1))

    meets = [span_meets_interior(cone, cols) is not None for _, cols, _ in subspaces]
    re_parts = [re for re, _, _ in subspaces]
    hit = [re for re, m in zip(re_parts, meets) if m]
    consistent = True
    if hit:
        case = "interior-subspace"
        pred_up = pred_lo = hit[0]
        consistent = max(hit) - min(hit) <= 10.0 * tol
    else:
        case = "boundary-only"
        pred_up, pred_lo = max(re_parts), min(re_parts)

    pair = quasi_pair(a, cone, tol)
    dev = max(abs(pair.lambda_upper - pred_up), abs(pair.lambda_lower - pred_lo))
    holds = consistent and dev <= 10.0 * tol
    mixed = form.l > 0 and len(form.real_eigs) > 0
    details = (
        f"case={case} predicted=[{_fmt(pred_lo)}, {_fmt(pred_up)}] "
        f"computed=[{_fmt(pair.lambda_lower)}, {_fmt(pair.lambda_upper)}] "
        f"meets={meets} mixed_block_sizes={mixed}"
    )
    return TheoremReport(
        name="normal_cone_classification",
        holds=holds,
        lhs=dev,
        rhs=10.0 * tol,
        slack=10.0 * tol - dev,
        details=details,
    )


def invariance_check(a, cone: Cone, u, tol: float = 1e-9) -> TheoremReport:
    """Both quasi-eigenvalues are unchanged by an orthogonal change of
    variables applied to the matrix and the cone together."""
    a = as_matrix(a)
    u = as_matrix(u)
    if operator_norm(u.T @ u - np.eye(u.shape[0])) > 1e-10:
        raise NotOrthogonal("change-of-variables matrix is not orthogonal")
    pair = quasi_pair(a, cone, tol)
    conj = quasi_pair(u.T @ a @ u, Cone.rotated(u.T @ cone.basis), tol)
    dev = max(
        abs(pair.lambda_upper - conj.lambda_upper),
        abs(pair.lambda_lower - conj.lambda_lower),
    )
    return TheoremReport(
        name="orthogonal_invariance",
        holds=dev <= 2.0 * tol,
        lhs=dev,
        rhs=2.0 * tol,
        slack=2.0 * tol - dev,
        details=(
            f"upper: {_fmt(pair.lambda_upper)} vs {_fmt(conj.lambda_upper)}; "
            f"lower: {_fmt(pair.lambda_lower)} vs {_fmt(conj.lambda_lower)}"
        ),
    )
