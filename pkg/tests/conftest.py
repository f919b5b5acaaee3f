import os

import numpy as np
import pytest

from latticemap.errors import MAX_DIM_ENV


def pytest_addoption(parser):
    parser.addoption("--stress", action="store_true", default=False,
                     help="run the larger lattice sizes (also LATTICEMAP_STRESS=1)")


def stress_enabled(config):
    return config.getoption("--stress") or os.environ.get("LATTICEMAP_STRESS") == "1"


def pytest_collection_modifyitems(config, items):
    if stress_enabled(config):
        return
    skip = pytest.mark.skip(reason="needs --stress")
    for item in items:
        if "stress" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def big_cap(monkeypatch):
    monkeypatch.setenv(MAX_DIM_ENV, "4096")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    return request.config.acceptance_lines


@pytest.fixture
def stress(request):
    return stress_enabled(request.config)


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
