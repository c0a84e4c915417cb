import itertools
import random
from fractions import Fraction

import pytest

from quiverstab import (
    Matrix,
    PrimeField,
    Quiver,
    Representation,
    StabilityParams,
)

F2 = PrimeField(2)
F3 = PrimeField(3)

A3 = Quiver(("v0", "v1", "v2"), (("v0", "v1"), ("v1", "v2")))


def kronecker_rep(field, dims, entries_list):
    """1-arrow Kronecker representation from flat entry lists per arrow."""
    q = Quiver.kronecker(len(entries_list))
    dv, dw = dims
    maps = []
    for entries in entries_list:
        rows = tuple(
            tuple(entries[i * dv + j] for j in range(dv)) for i in range(dw)
        )
        maps.append(Matrix(field, dw, dv, rows))
    return Representation(q, field, {"v0": dv, "v1": dw}, tuple(maps))


def all_kronecker_reps(field, dims, num_arrows=1):
    """Every representation with the given dimension vector, all matrices."""
    dv, dw = dims
    n = dv * dw
    for combo in itertools.product(
        itertools.product(range(field.p), repeat=n), repeat=num_arrows
    ):
        yield kronecker_rep(field, dims, list(combo))


def random_rep(rng, quiver, field, max_dims):
    dims = {v: rng.randint(0, d) for v, d in zip(quiver.vertices, max_dims)}
    maps = []
    for src, tgt in quiver.arrows:
        rows = tuple(
            tuple(rng.randrange(field.p) for _ in range(dims[src]))
            for _ in range(dims[tgt])
        )
        maps.append(Matrix(field, dims[tgt], dims[src], rows))
    return Representation(quiver, field, dims, tuple(maps))


def theta_grid(nvertices, lo=-2, hi=2):
    return itertools.product(range(lo, hi + 1), repeat=nvertices)


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260823)


def params_for(quiver, theta, sigma=None):
    if sigma is None:
        sigma = (1,) * len(quiver.vertices)
    return StabilityParams(
        dict(zip(quiver.vertices, theta)), dict(zip(quiver.vertices, sigma))
    )
