import pytest

from finheyt.algebra import VarietyClass
from finheyt.catalog import build_catalog

# The decorated discriminator classes exercised by the exhaustive suites.  The
# plain Heyting class only feeds the enumeration checks: the factor-congruence
# and projectivity theorems assume a discriminator variety.
ACCEPTANCE_CLASSES = (
    VarietyClass("ws5"),
    VarietyClass("hri"),
    VarietyClass("hdp", 1),
    VarietyClass("dht", 1),
    VarietyClass("hdp", 2),
    VarietyClass("dht", 2),
)


@pytest.fixture(scope="session")
def catalogs():
    return {cls: build_catalog(cls, 8) for cls in ACCEPTANCE_CLASSES}


@pytest.fixture(scope="session")
def catalog_algebras(catalogs):
    """Every catalog algebra of every acceptance class, sizes 1..8."""
    return [a for cat in catalogs.values() for a in cat.algebras]


@pytest.fixture(scope="session")
def nontrivial_algebras(catalog_algebras):
    return [a for a in catalog_algebras if a.nontrivial]
