import random

import pytest

from adjtorelli.fields import QQ
from adjtorelli.jacobian import Hypersurface
from adjtorelli.polyring import Polynomial, monomial_basis


def x(i, nvars=4, field=QQ):
    return Polynomial.variable(nvars, i, field)


def fermat(nvars, degree, field=QQ):
    return sum(
        (Polynomial.variable(nvars, i, field) ** degree for i in range(nvars)),
        Polynomial.zero(nvars, field),
    )


def random_homogeneous(nvars, degree, rng: random.Random, field=QQ, bound=5):
    terms = {
        m: field.coerce(rng.randint(-bound, bound))
        for m in monomial_basis(nvars, degree)
    }
    return Polynomial(nvars, terms, field)


@pytest.fixture(scope="session")
def fermat_quartic():
    return Hypersurface(fermat(4, 4))


@pytest.fixture(scope="session")
def fermat_quintic():
    return Hypersurface(fermat(5, 5))
