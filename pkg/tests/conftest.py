from __future__ import annotations

import pytest

from wildforms.fields import FiniteField, Q


@pytest.fixture(scope="session")
def F3():
    return FiniteField(3)


@pytest.fixture(scope="session")
def F5():
    return FiniteField(5)


@pytest.fixture(scope="session")
def F7():
    return FiniteField(7)


@pytest.fixture(scope="session")
def F9():
    # z^2 + 1 is irreducible over GF(3)
    return FiniteField(3, 2, [1, 0, 1])


@pytest.fixture(scope="session")
def QQ():
    return Q
