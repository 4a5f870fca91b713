import pytest

from diracwell import WellConfig, find_eigenstates

TABLE1_POTENTIALS_EV = (0.01, 0.1, 1.0, 10.0)
RADIUS_NM = 10.0


@pytest.fixture(scope="session")
def table1_solutions():
    """(config, all bound states) for each benchmark well depth, solved once."""
    out = {}
    for u in TABLE1_POTENTIALS_EV:
        config = WellConfig(radius_nm=RADIUS_NM, potential_ev=u, azimuthal_l=0)
        out[u] = (config, find_eigenstates(config))
    return out


@pytest.fixture(scope="session")
def shallow_well(table1_solutions):
    """U = 0.01 eV well with its two bound states."""
    return table1_solutions[0.01]


@pytest.fixture(scope="session")
def deep_well(table1_solutions):
    """U = 10 eV well (closest to the infinite-well limit)."""
    return table1_solutions[10.0]


@pytest.fixture(scope="session")
def l1_solution():
    """Ground state of the l = 1 family in the deep well."""
    config = WellConfig(radius_nm=RADIUS_NM, potential_ev=10.0, azimuthal_l=1)
    return config, find_eigenstates(config, 1)[0]
