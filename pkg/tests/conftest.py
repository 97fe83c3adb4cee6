import pytest

from geolang import build_cone_automaton, load_group


@pytest.fixture(scope="session")
def f2():
    return load_group("builtin:f2").model


@pytest.fixture(scope="session")
def z2():
    return load_group("builtin:z2").model


@pytest.fixture(scope="session")
def z2xz():
    return load_group("builtin:z2xz").model


@pytest.fixture(scope="session")
def z2xz_spec():
    return load_group("builtin:z2xz")


@pytest.fixture(scope="session")
def f2_spec():
    return load_group("builtin:f2")


@pytest.fixture(scope="session")
def c6():
    return load_group("builtin:c6").model


@pytest.fixture(scope="session")
def f2_cone(f2):
    return build_cone_automaton(f2, 1)


@pytest.fixture(scope="session")
def z2_cone(z2):
    return build_cone_automaton(z2, 1)


def word(text):
    """Tuple of single-character symbols."""
    return tuple(text)
