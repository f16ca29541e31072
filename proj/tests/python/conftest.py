import importlib.util

import pytest


def pytest_configure(config):
    if importlib.util.find_spec("tensorrank") is None:
        pytest.exit("tensorrank extension not installed (pip install --no-build-isolation -e .)", returncode=77)
