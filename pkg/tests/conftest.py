import functools
import json
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings

from powerlog.frontend import problem_from_dict
from powerlog.recurse import solve_problem

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

FIXTURES = resources.files("powerlog").joinpath("fixtures")


@functools.lru_cache(maxsize=None)
def load_fixture(name):
    return problem_from_dict(json.loads(FIXTURES.joinpath(f"{name}.json").read_text()), name)


@functools.lru_cache(maxsize=None)
def solved(name, N=None):
    return solve_problem(load_fixture(name), N)


def fixture_path(name):
    return str(FIXTURES.joinpath(f"{name}.json"))


@pytest.fixture
def fx():
    return load_fixture
