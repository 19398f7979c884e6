"""Shared test utilities: seeded random states and dense kron tools."""

import numpy as np

from umtrace import make_density


def random_density(seed, n):
    """Full-rank random n-qubit density matrix (Wishart construction)."""
    rng = np.random.default_rng(seed)
    d = 1 << n
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    mat = a @ a.conj().T
    return make_density(mat / mat.trace())


def random_pure(seed, n):
    rng = np.random.default_rng(seed)
    d = 1 << n
    vec = rng.normal(size=d) + 1j * rng.normal(size=d)
    vec /= np.linalg.norm(vec)
    return make_density(np.outer(vec, vec.conj()))


def kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out
