"""Dense simplex kernel for the max-margin feasibility LP.

The one problem solved here is

    maximize    eps
    subject to  G x >= eps * 1,   sum(x) = 1,   x >= 0,

for a finite m-by-k matrix G.  Its optimum ``eps_star`` is the best
worst-row margin achievable on the simplex; the sign of ``eps_star``
answers "does G x >= 0 admit a simplex point?", which is the feasibility
question the quasi-eigenvalue bisection asks at every step.

Implementation notes:

* Primal simplex with Bland's anti-cycling rule on the standard equality
  form, variables ordered [x_1..x_k, eps+, eps-, s_1..s_m].  Bland's rule
  makes the returned optimal vertex deterministic, which callers rely on
  for reproducible quasi-eigenvector tie-breaking.
* No phase-1: the vertex x = e_j maximizing the worst row margin, with
  eps set to that margin and the binding row's slack left nonbasic, is a
  basic feasible solution whose basis matrix is provably nonsingular.
* G is scaled by one scalar (its largest entry magnitude) before
  pivoting, so pivot tolerances are scale-free; the scalar is undone on
  return, which keeps ``eps_star`` and ``x_star`` exactly those of the
  stated problem.
* The problem is always feasible and bounded for finite G, so the status
  is "optimal" on every successful return; pivoting pathologies raise
  ``NumericalBreakdown`` instead of returning a bogus certificate.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NonFinite, NumericalBreakdown

_REDCOST_TOL = 1e-11
_PIVOT_TOL = 1e-11
# A row joins the Bland tie-break group only if choosing it over the true
# minimum-ratio row damages feasibility by at most this much: the damage
# is (ratio - best) * pivot-column entry, so a fixed ratio window would be
# amplified arbitrarily by large column entries (the bisection drives
# these LPs nearly degenerate, where both effects occur together).
_TIE_DAMAGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MaxEpsProblem:
    """A max-margin instance: constraint matrix plus the simplex marker."""

    g: np.ndarray
    normalization: str = "simplex-sum"


@dataclass(frozen=True, eq=False)
class LpSolution:
    eps_star: float
    x_star: np.ndarray = field(repr=False)
    status: str  # "optimal" | "unbounded" | "infeasible"


def solve_max_eps(problem) -> LpSolution:
    """Solve the max-margin LP for ``problem`` (a ``MaxEpsProblem`` or a
    plain (m, k) array).

    Guarantees on return: ``x_star >= -1e-12`` componentwise,
    ``|sum(x_star) - 1| <= 1e-10``, and ``min(G @ x_star) >= eps_star - 1e-9``.
    """
    g = problem.g if isinstance(problem, MaxEpsProblem) else problem
    g = np.atleast_2d(np.asarray(g, dtype=float))
    if not np.all(np.isfinite(g)):
        raise NonFinite("constraint matrix must be finite")
    m, k = g.shape

    scale = float(np.max(np.abs(g)))
    gs = g / scale if scale > 0.0 else g.copy()

    # Variable layout: x (0..k-1), eps+ (k), eps- (k+1), slacks (k+2 ..).
    nvar = k + 2 + m
    nrow = m + 1
    a = np.zeros((nrow, nvar + 1))  # last column is the rhs
    a[:m, :k] = gs
    a[:m, k] = -1.0
    a[:m, k + 1] = 1.0
    a[:m, k + 2: nvar] = -np.eye(m)
    a[m, :k] = 1.0
    a[m, nvar] = 1.0
    cost = np.zeros(nvar)
    cost[k] = -1.0  # maximize eps+ - eps-
    cost[k + 1] = 1.0

    # Starting vertex: the best single x-coordinate, eps at its worst row
    # margin, that row's slack nonbasic at zero.
    col_worst = gs.min(axis=0)
    j0 = int(np.argmax(col_worst))
    mu = float(col_worst[j0])
    i0 = int(np.argmin(gs[:, j0]))
    eps_var = k if mu >= 0.0 else k + 1
    basis = [j0, eps_var] + [k + 2 + i for i in range(m) if i != i0]

    tableau = np.linalg.solve(a[:, basis], a)
    reduced = cost - cost[basis] @ tableau[:, :nvar]

    budget = 200 + 50 * (nvar + nrow)
    for _ in range(budget):
        candidates = np.nonzero(reduced < -_REDCOST_TOL)[0]
        if candidates.size == 0:
            # The incremental updates can drift; re-derive before accepting.
            reduced = cost - cost[basis] @ tableau[:, :nvar]
            if not (reduced < -_REDCOST_TOL).any():
                break
            continue
        enter = int(candidates[0])  # Bland: lowest eligible index

        col = tableau[:, enter]
        rows = np.nonzero(col > _PIVOT_TOL)[0]
        if rows.size == 0:
            raise NumericalBreakdown("unbounded pivot direction in max-eps LP")
        ratios = np.maximum(tableau[rows, nvar], 0.0) / col[rows]
        best = float(ratios.min())
        near = rows[(ratios - best) * col[rows] <= _TIE_DAMAGE_TOL]
        leave_row = int(min(near, key=lambda i: basis[i]))  # Bland tie-break

        piv_row = tableau[leave_row] / tableau[leave_row, enter]
        tableau -= np.outer(tableau[:, enter], piv_row)
        tableau[leave_row] = piv_row
        basis[leave_row] = enter
        reduced = reduced - reduced[enter] * piv_row[:nvar]
    else:
        raise NumericalBreakdown("max-eps LP exceeded its pivot budget")

    values = tableau[:, nvar]
    if values.min() < -1e-9:
        raise NumericalBreakdown("max-eps LP lost primal feasibility")

    full = np.zeros(nvar)
    full[basis] = values
    x = full[:k].copy()
    x[(x < 0.0) & (x > -1e-12)] = 0.0
    eps = float(full[k] - full[k + 1]) * (scale if scale > 0.0 else 1.0)
    return LpSolution(eps_star=eps, x_star=x, status="optimal")
