from __future__ import annotations

import pytest

from qgk import Quiver


@pytest.fixture
def jordan() -> Quiver:
    return Quiver(["0"], [("0", "0")])


@pytest.fixture
def a2() -> Quiver:
    return Quiver(["0", "1"], [("0", "1")])


@pytest.fixture
def kronecker() -> Quiver:
    return Quiver(["0", "1"], [("0", "1"), ("0", "1")])


@pytest.fixture
def g2loop() -> Quiver:
    return Quiver(["0"], [("0", "0"), ("0", "0")])


@pytest.fixture
def a1() -> Quiver:
    return Quiver(["0"])
