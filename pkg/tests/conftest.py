import pytest

from prophecke import make_context

_CACHE = {}


def get_context(group, p, f=1, m=None):
    key = (group, p, f, m)
    if key not in _CACHE:
        _CACHE[key] = make_context(group, p, f, m)
    return _CACHE[key]


@pytest.fixture(scope="session")
def ctx_factory():
    """Shared, cached construction chains keyed by (group, p, f, m)."""
    return get_context


@pytest.fixture(scope="session")
def sl2_q3(ctx_factory):
    return ctx_factory("SL2", 3)


@pytest.fixture(scope="session")
def sl3_q3(ctx_factory):
    return ctx_factory("SL3", 3)


@pytest.fixture(scope="session")
def pgl2_q3(ctx_factory):
    return ctx_factory("PGL2", 3)


@pytest.fixture(scope="session")
def sp4_q3(ctx_factory):
    return ctx_factory("Sp4", 3)
