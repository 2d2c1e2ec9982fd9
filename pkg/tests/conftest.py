import mpmath
import pytest

mpmath.mp.dps = 40


def mp_varpi():
    """Lemniscate constant pi / agm(1, sqrt 2), independent of any quadrature."""
    return mpmath.pi / mpmath.agm(1, mpmath.sqrt(2))


@pytest.fixture(scope="session")
def varpi_ref():
    return float(mp_varpi())
