"""Shared random-instance generators for the test suite.

Everything is driven by an explicit ``numpy`` Generator so tests stay
reproducible; acceptance criteria reuse these with their own seeds.
"""

import numpy as np

from quasieig import Cone, random_orthogonal
from quasieig.analysis import rotation_block


def random_matrix(rng, n, scale=1.0):
    return rng.uniform(-scale, scale, (n, n))


def random_irreducible_nonneg(rng, n):
    """Uniform[0,1] entries with an enforced cycle so the digraph is
    strongly connected."""
    a = rng.uniform(0.0, 1.0, (n, n))
    for i in range(n):
        a[i, (i + 1) % n] = max(a[i, (i + 1) % n], 0.2)
    return a


def random_metzler(rng, n):
    """Nonnegative off-diagonal entries (cycle-enforced), arbitrary
    diagonal."""
    a = random_irreducible_nonneg(rng, n)
    np.fill_diagonal(a, rng.uniform(-1.0, 1.0, n))
    return a


def random_isc(rng, n, sign=None):
    """Irreducible with one-signed off-diagonal entries; sign +1/-1 picks
    the branch, None draws it."""
    if sign is None:
        sign = 1 if rng.random() < 0.5 else -1
    a = random_metzler(rng, n)
    if sign < 0:
        off = ~np.eye(n, dtype=bool)
        a[off] = -a[off]
    return a


def random_cone(rng, n):
    return Cone.rotated(random_orthogonal(n, int(rng.integers(0, 2**31))))


def random_normal_matrix(rng, n, min_gap=0.05, min_blocks=0):
    """A normal matrix built from rotation-scaling blocks and real
    scalars, conjugated by a random orthogonal matrix.

    Returns (matrix, blocks, reals, conjugation); eigenvalue real parts
    are kept ``min_gap`` apart so canonical-form recovery is unambiguous.
    """
    while True:
        l = int(rng.integers(min_blocks, n // 2 + 1))
        thetas = rng.uniform(0.15, np.pi - 0.15, l)
        rs = rng.uniform(0.3, 2.0, l)
        mus = rng.uniform(-2.0, 2.0, n - 2 * l)
        res = sorted(list(rs * np.cos(thetas)) + list(mus))
        if all(b - a >= min_gap for a, b in zip(res, res[1:])):
            break
    o = np.zeros((n, n))
    for i in range(l):
        o[2 * i: 2 * i + 2, 2 * i: 2 * i + 2] = rotation_block(rs[i], thetas[i])
    for j, mu in enumerate(mus):
        o[2 * l + j, 2 * l + j] = mu
    v = random_orthogonal(n, int(rng.integers(0, 2**31)))
    return v @ o @ v.T, list(zip(rs, thetas)), list(mus), v


def orthogonal_mapping_uniform_to(target):
    """Orthogonal Q (a Householder reflection) sending the uniform
    direction (1..1)/sqrt(n) onto ``target``; the cone Q S_+ then holds
    ``target`` strictly inside."""
    target = np.asarray(target, dtype=float)
    n = target.size
    a = np.full(n, 1.0 / np.sqrt(n))
    b = target / np.linalg.norm(target)
    if np.linalg.norm(a - b) < 1e-14:
        return np.eye(n)
    w = a - b
    w /= np.linalg.norm(w)
    return np.eye(n) - 2.0 * np.outer(w, w)
