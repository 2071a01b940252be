"""Pytest configuration and fixtures."""

import pytest

from mackeycalc.algebra.grouptab import C2, K4


@pytest.fixture
def mock_settings(monkeypatch, tmp_path):
    """Override settings for testing: cache under tmp_path, every cache hit re-verified."""
    monkeypatch.setenv("MACKEYCALC_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("MACKEYCALC_CACHE_VERIFY_FRACTION", "1.0")
    monkeypatch.setenv("MACKEYCALC_CHART_WORKERS", "1")

    # Clear cached settings
    from mackeycalc.common.config import get_settings

    get_settings.cache_clear()

    yield get_settings()

    get_settings.cache_clear()


@pytest.fixture
def c2():
    return C2


@pytest.fixture
def k4():
    return K4


@pytest.fixture(scope="session")
def burnside_c2():
    from mackeycalc.tambara.burnside import burnside

    return burnside("C2")


@pytest.fixture(scope="session")
def burnside_k4():
    from mackeycalc.tambara.burnside import burnside

    return burnside("K4")


@pytest.fixture(scope="session")
def norm_e():
    """n_e^K(F2)."""
    from mackeycalc.tambara.norms import norm_constant_f2

    return norm_constant_f2(K4, "e")


@pytest.fixture(scope="session")
def norm_d():
    """n_D^K(F2)."""
    from mackeycalc.tambara.norms import norm_constant_f2

    return norm_constant_f2(K4, "D")


@pytest.fixture
def k4_functor():
    """Look up a K4 catalog functor by name."""
    from mackeycalc.mackey.catalog import get_functor

    return lambda name: get_functor("K4", name)


@pytest.fixture
def c2_functor():
    from mackeycalc.mackey.catalog import get_functor

    return lambda name: get_functor("C2", name)
