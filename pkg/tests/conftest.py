"""Shared fixtures: the expensive degree-4 computations run once per session."""

from __future__ import annotations

import pytest

from realgw.graphs import SpaceSpec
from realgw.invariants import compute_invariant, sign_flip_experiment


@pytest.fixture(scope="session")
def space2() -> SpaceSpec:
    return SpaceSpec(2)


@pytest.fixture(scope="session")
def d2_eta(space2):
    return compute_invariant(space2, 2, "eta")


@pytest.fixture(scope="session")
def d4_eta(space2):
    return compute_invariant(space2, 4, "eta")


@pytest.fixture(scope="session")
def d4_tau(space2):
    return compute_invariant(space2, 4, "tau")


@pytest.fixture(scope="session")
def d3_tau(space2):
    return compute_invariant(space2, 3, "tau")


@pytest.fixture(scope="session")
def sign_flip_d4(space2):
    return sign_flip_experiment(space2, 4, "eta")
