"""Shared fixtures: orbit integrations are the expensive step, so one
session-scoped cache hands out trajectories keyed by (n, k, config)."""

from __future__ import annotations

import pytest

from khessian import IntegratorConfig, ProblemSpec, integrate_trajectory


@pytest.fixture(scope="session")
def orbit():
    cache: dict = {}

    def get(n: int, k: int, **config_kwargs):
        key = (n, k, tuple(sorted(config_kwargs.items())))
        if key not in cache:
            config = IntegratorConfig(**config_kwargs) if config_kwargs else None
            cache[key] = integrate_trajectory(ProblemSpec(n, k), config)
        return cache[key]

    return get
