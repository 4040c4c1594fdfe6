import pytest

from leibniz_complex import ComplexContext, build_fixture


@pytest.fixture(scope="session")
def algebras():
    return {name: build_fixture(name) for name in ("A3", "O1", "O2", "AFF_O1")}


@pytest.fixture(scope="session")
def contexts(algebras):
    return {name: ComplexContext(alg) for name, alg in algebras.items()}


@pytest.fixture(scope="session")
def o1(contexts):
    return contexts["O1"]


@pytest.fixture(scope="session")
def o2(contexts):
    return contexts["O2"]


@pytest.fixture(scope="session")
def a3(contexts):
    return contexts["A3"]


@pytest.fixture(scope="session")
def aff_o1(contexts):
    return contexts["AFF_O1"]
