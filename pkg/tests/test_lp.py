import numpy as np
import pytest

from quasieig import LpSolution, MaxEpsProblem, NonFinite, solve_max_eps
from helpers import random_matrix


def grid_best_margin(g, step=1e-3):
    """Independent oracle: exhaustive simplex-grid search for
    max over x of min(G x).  Underestimates the optimum by at most the
    grid resolution; used to pin expected values before trusting the
    simplex kernel."""
    g = np.asarray(g, dtype=float)
    k = g.shape[1]
    assert k in (2, 3)
    if k == 2:
        s = np.arange(0.0, 1.0 + step / 2, step)
        pts = np.column_stack([s, 1.0 - s])
    else:
        s = np.arange(0.0, 1.0 + step / 2, step)
        a, b = np.meshgrid(s, s, indexing="ij")
        keep = a + b <= 1.0 + 1e-12
        a, b = a[keep], b[keep]
        pts = np.column_stack([a, b, np.maximum(1.0 - a - b, 0.0)])
    return float((pts @ g.T).min(axis=1).max())


def test_grid_oracle_sanity():
    # max over the simplex of min(0.5 x1, -0.5 x2): any x2 > 0 hurts, so 0 at (1, 0)
    assert grid_best_margin([[0.5, 0.0], [0.0, -0.5]]) == pytest.approx(0.0, abs=1e-9)
    # both rows negative: balance -0.5 x1 = -1.5 x2 at x = (3/4, 1/4), value -3/8
    assert grid_best_margin([[-0.5, 0.0], [0.0, -1.5]]) == pytest.approx(-0.375, abs=2e-3)


def test_examples_against_frozen_oracle_values():
    sol = solve_max_eps(np.array([[0.5, 0.0], [0.0, -0.5]]))
    assert sol.status == "optimal"
    assert sol.eps_star == pytest.approx(0.0, abs=1e-10)
    assert sol.x_star == pytest.approx([1.0, 0.0], abs=1e-10)

    # Oracle-computed optimum for diag(-0.5, -1.5): the mixture (3/4, 1/4)
    # beats both vertices, value exactly -3/8.
    sol = solve_max_eps(np.array([[-0.5, 0.0], [0.0, -1.5]]))
    assert sol.eps_star == pytest.approx(-0.375, abs=1e-10)
    assert sol.x_star == pytest.approx([0.75, 0.25], abs=1e-9)

    sol = solve_max_eps(np.zeros((2, 2)))
    assert sol.eps_star == pytest.approx(0.0, abs=1e-12)
    assert sol.x_star.sum() == pytest.approx(1.0, abs=1e-10)
    assert (sol.x_star >= -1e-12).all()


def test_accepts_problem_wrapper():
    sol = solve_max_eps(MaxEpsProblem(g=np.eye(2)))
    assert isinstance(sol, LpSolution)
    assert sol.eps_star == pytest.approx(0.5, abs=1e-10)


def test_rejects_nonfinite():
    with pytest.raises(NonFinite):
        solve_max_eps(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_solution_invariants_random():
    rng = np.random.default_rng(10)
    for _ in range(200):
        m = int(rng.integers(1, 8))
        k = int(rng.integers(1, 8))
        g = rng.uniform(-2, 2, (m, k))
        sol = solve_max_eps(g)
        assert sol.status == "optimal"
        assert (sol.x_star >= -1e-12).all()
        assert abs(sol.x_star.sum() - 1.0) <= 1e-10
        assert (g @ sol.x_star).min() >= sol.eps_star - 1e-9


def test_agrees_with_grid_oracle():
    # The grid can only underestimate (it is a subset of the simplex), and
    # by no more than its Lipschitz resolution.
    rng = np.random.default_rng(11)
    for _ in range(40):
        k = int(rng.integers(2, 4))
        g = rng.uniform(-2, 2, (int(rng.integers(1, 5)), k))
        step = 1e-3 if k == 2 else 4e-3
        grid = grid_best_margin(g, step)
        sol = solve_max_eps(g)
        lipschitz = float(np.abs(g).sum(axis=1).max())
        assert sol.eps_star >= grid - 1e-9
        assert sol.eps_star <= grid + 2.0 * lipschitz * step


def test_eps_monotone_in_shift():
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        a = random_matrix(rng, n, 2.0)
        t = float(rng.uniform(-2, 2))
        tp = t + float(rng.uniform(0.01, 1.0))
        e1 = solve_max_eps(a - t * np.eye(n)).eps_star
        e2 = solve_max_eps(a - tp * np.eye(n)).eps_star
        assert e2 <= e1 + 1e-9


def test_row_scaling_scales_eps():
    rng = np.random.default_rng(13)
    for c in (2.0, 3.0, 0.125, 7.5):
        g = rng.uniform(-1, 1, (4, 4))
        e1 = solve_max_eps(g).eps_star
        e2 = solve_max_eps(c * g).eps_star
        assert e2 == pytest.approx(c * e1, rel=1e-12, abs=1e-15)


def test_bland_vertex_is_deterministic():
    rng = np.random.default_rng(14)
    g = rng.uniform(-1, 1, (5, 5))
    a = solve_max_eps(g)
    b = solve_max_eps(g.copy())
    assert np.array_equal(a.x_star, b.x_star)
    assert a.eps_star == b.eps_star
