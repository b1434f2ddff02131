import pytest

from fricke_orbits.orbit_search import full_search


@pytest.fixture(scope="session")
def search_result():
    """One full scan shared by every test that needs the 45 orbits."""
    return full_search(threads=1)
