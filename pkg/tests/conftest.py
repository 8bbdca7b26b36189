"""Shared helpers: independent brute-force routes the real code is tested
against.  Nothing here may import from dichromat.dp's internals."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from dichromat import BlockParams, Coloring, coloring_from_bits


def brute_max_matching(edges: list[tuple[int, int]]) -> int:
    """Pick-or-skip recursion over the edge list; exponential but exact."""

    def go(i: int, used: frozenset[int]) -> int:
        if i == len(edges):
            return 0
        p, c = edges[i]
        best = go(i + 1, used)
        if p not in used and c not in used:
            best = max(best, 1 + go(i + 1, used | {p, c}))
        return best

    return go(0, frozenset())


def random_coloring(tree, rng: np.random.Generator) -> Coloring:
    bits = rng.integers(0, 2, size=tree.node_count)
    return coloring_from_bits(tree, bits.tolist())


def random_rational_params(rng: np.random.Generator) -> BlockParams:
    """Valid rational parameter set; rejection-samples until invariants hold."""
    while True:
        v0 = Fraction(int(rng.integers(40, 400)), int(rng.integers(1, 4)))
        mu = v0 / int(rng.integers(4, 40))
        tau = mu * Fraction(int(rng.integers(11, 40)), 10)
        alpha = (v0 - 3 * mu) / int(rng.integers(3, 12))
        if 3 * mu < v0 and 0 < 2 * alpha < v0 - 3 * mu and tau > mu:
            return BlockParams(V0=v0, mu=mu, tau=tau, alpha=alpha)


@pytest.fixture
def default_params() -> BlockParams:
    return BlockParams.default()
