"""Shared fixtures for the Mumford Tools test suite"""

import pytest

from mumford_tools.localfield import make_field


@pytest.fixture
def f3():
    return make_field(3, 1)


@pytest.fixture
def f4():
    return make_field(2, 2)


@pytest.fixture
def f7():
    return make_field(7, 1)
