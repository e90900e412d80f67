import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rbfam.cohomology import ha_complex, omega_complex, rbf_complex
from rbfam.linalg import Matrix, Tensor
from rbfam.homalg import HomAlgebra, regular_bimodule, zero_cocycle
from rbfam.operators import TwistedRBFamily
from rbfam.semigroups import builtin
from rbfam.workspace import desk_instance


@pytest.fixture(scope="session")
def d0():
    return desk_instance("D0")


@pytest.fixture(scope="session")
def d1():
    return desk_instance("D1")


@pytest.fixture(scope="session")
def d2():
    return desk_instance("D2")


@pytest.fixture(scope="session")
def d0_handle(d0):
    return rbf_complex(d0["operator"])


@pytest.fixture(scope="session")
def d1_handle(d1):
    return rbf_complex(d1["operator"])


@pytest.fixture(scope="session")
def d2_handle(d2):
    return rbf_complex(d2["operator"])


@pytest.fixture(scope="session")
def d1_ha_handle(d1):
    return ha_complex(d1["algebra"], d1["bimodule"])


@pytest.fixture(scope="session")
def d1_omega_handle(d1_handle):
    return omega_complex(d1_handle.omega_algebra, d1_handle.omega_module)


def _matrix_units_algebra():
    """Full 2x2 matrix algebra on basis (E11, E12, E21, E22), p = id."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]

    def mu(k, i, j):
        (a, b), (c, d) = units[i], units[j]
        if b != c:
            return 0
        return 1 if units[k] == (a, d) else 0

    return HomAlgebra(dim=4, mu=Tensor.from_function((4, 4, 4), mu), p=Matrix.identity(4))


@pytest.fixture(scope="session")
def matrix_algebra_operator():
    """Zero twisted family on the (non-commutative) 2x2 matrix algebra."""
    algebra = _matrix_units_algebra()
    module = regular_bimodule(algebra)
    cocycle = zero_cocycle(module)
    return TwistedRBFamily(
        cocycle=cocycle, omega=builtin("trivial"), maps=(Matrix.zero(4, 4),)
    )


def _yau_twisted_triangular():
    """Yau twist of the 2x2 upper-triangular algebra by m = diag(1, 2, 1).

    Basis (E11, E12, E22); product x * y = m(x . y); structure map m.
    A convenient instance with a genuinely non-identity structure map.
    """
    from fractions import Fraction

    n = 3
    mu_assoc = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for k, i, j in ((0, 0, 0), (1, 0, 1), (1, 1, 2), (2, 2, 2)):
        mu_assoc[k][i][j] = Fraction(1)
    m = Matrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    entries = []
    for k in range(n):
        plane = []
        for i in range(n):
            row = []
            for j in range(n):
                col = tuple(mu_assoc[kk][i][j] for kk in range(n))
                row.append(m.apply(col)[k])
            plane.append(row)
        entries.append(plane)
    return HomAlgebra(dim=n, mu=Tensor.from_nested(entries, 3), p=m)


@pytest.fixture(scope="session")
def twisted_triangular_algebra():
    return _yau_twisted_triangular()


@pytest.fixture(scope="session")
def nijenhuis_search(d1):
    """Grid search for Nijenhuis families on the C2 group algebra, omega = C2."""
    from fractions import Fraction

    from rbfam.operators import search_nijenhuis_families

    return search_nijenhuis_families(
        d1["base_algebra"],
        d1["omega"],
        grid=(Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)),
    )
