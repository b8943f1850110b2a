import json
import random
from fractions import Fraction as Q

import pytest

from pilsys.model import (Interval, Parameter, ParametricSystem,
                          QuantifierAssignment, RhsParameter, TolerableSystem,
                          parse_system)

E1_DOC = {
    "m": 2, "n": 2,
    "constant": {"A": [["1", "0"], ["1", "0"]], "b": ["1", "0"]},
    "parameters": [{"name": "p1", "interval": ["0", "1"],
                    "A": [["0", "0"], ["0", "1"]], "b": ["0", "1"],
                    "quantifier": "exists"}],
}

# [2,4] x = [-2,2] as a two-parameter ordinary system
E2_DOC = {
    "m": 1, "n": 1,
    "constant": {"A": [["3"]], "b": ["0"]},
    "parameters": [
        {"name": "a", "interval": ["-1", "1"], "A": [["1"]]},
        {"name": "b", "interval": ["-2", "2"], "b": ["1"]},
    ],
}

# [-1,1] x = 1
E3_DOC = {
    "m": 1, "n": 1,
    "constant": {"b": ["1"]},
    "parameters": [{"name": "a", "interval": ["-1", "1"], "A": [["1"]]}],
}


def load(doc):
    return parse_system(json.dumps(doc))


@pytest.fixture
def e1():
    return load(E1_DOC)


@pytest.fixture
def e2():
    return load(E2_DOC)


@pytest.fixture
def e3():
    return load(E3_DOC)


def qrand(rng, lo=-3, hi=3, dens=(1, 2)):
    return Q(rng.randint(lo, hi), rng.choice(dens))


def random_point(rng, n, lo=-6, hi=6):
    return [Q(rng.randint(lo, hi), rng.choice((1, 2, 3))) for _ in range(n)]


def gen_ordinary(rng, m=2, n=2):
    """Ordinary interval system: one parameter per uncertain coefficient.

    Integer midpoints in [-3,3] go into the constant term; radii are drawn
    from {0, 1/2, 1} and a radius-zero coefficient contributes no parameter.
    """
    A0 = [[Q(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
    b0 = [Q(rng.randint(-3, 3)) for _ in range(m)]
    params = []
    radii = (Q(0), Q(1, 2), Q(1))
    for i in range(m):
        for j in range(n):
            r = rng.choice(radii)
            if r != 0:
                A = [[Q(0)] * n for _ in range(m)]
                A[i][j] = Q(1)
                params.append(Parameter(f"a{i}{j}", Interval(-r, r), A, [Q(0)] * m))
        r = rng.choice(radii)
        if r != 0:
            b = [Q(0)] * m
            b[i] = Q(1)
            params.append(Parameter(f"b{i}", Interval(-r, r),
                                    [[Q(0)] * n for _ in range(m)], b))
    return ParametricSystem(m, n, A0, b0, params)


def gen_wide_ordinary(rng, m=2, n=2):
    """Ordinary system whose matrix radii dominate the midpoints, so the
    kernel has interior and strict membership actually occurs."""
    A0 = [[Q(0)] * n for _ in range(m)]
    b0 = [Q(rng.randint(-2, 2)) for _ in range(m)]
    params = []
    for i in range(m):
        for j in range(n):
            A = [[Q(0)] * n for _ in range(m)]
            A[i][j] = Q(1)
            params.append(Parameter(f"a{i}{j}", Interval(Q(-1), Q(1)),
                                    A, [Q(0)] * m))
    return ParametricSystem(m, n, A0, b0, params)


def gen_first_class(rng, m=2, n=2, K=None):
    """First-class system: each generator touches a single row."""
    if K is None:
        K = rng.randint(1, 3)
    A0 = [[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
    b0 = [Q(rng.randint(-2, 2)) for _ in range(m)]
    params = []
    for k in range(K):
        row = rng.randrange(m)
        A = [[Q(0)] * n for _ in range(m)]
        b = [Q(0)] * m
        for j in range(n):
            A[row][j] = Q(rng.randint(-2, 2))
        b[row] = Q(rng.randint(-2, 2))
        lo = qrand(rng, -2, 2)
        hi = lo + Q(rng.randint(0, 3), rng.choice((1, 2)))
        params.append(Parameter(f"p{k}", Interval(lo, hi), A, b))
    return ParametricSystem(m, n, A0, b0, params)


def gen_general(rng, m=2, n=2, K=None):
    """General parametric system with dense random generators."""
    if K is None:
        K = rng.randint(1, 3)
    A0 = [[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
    b0 = [Q(rng.randint(-2, 2)) for _ in range(m)]
    params = []
    for k in range(K):
        A = [[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
        b = [Q(rng.randint(-2, 2)) for _ in range(m)]
        lo = qrand(rng, -2, 2)
        hi = lo + Q(rng.randint(0, 3), rng.choice((1, 2)))
        params.append(Parameter(f"p{k}", Interval(lo, hi), A, b))
    return ParametricSystem(m, n, A0, b0, params)


def gen_class_c(rng, m=2, n=2, K=2, L=1):
    """Class-C system: matrix parameters with one nonzero generator row,
    rhs parameters with one nonzero generator entry."""
    A0 = [[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
    b0 = [Q(rng.randint(-2, 2)) for _ in range(m)]
    params = []
    for k in range(K):
        row = rng.randrange(m)
        A = [[Q(0)] * n for _ in range(m)]
        for j in range(n):
            A[row][j] = Q(rng.randint(-2, 2))
        lo = qrand(rng, -2, 2)
        hi = lo + Q(rng.randint(0, 2))
        params.append(Parameter(f"p{k}", Interval(lo, hi), A, [Q(0)] * m))
    for ell in range(L):
        i = rng.randrange(m)
        b = [Q(0)] * m
        b[i] = Q(rng.randint(1, 2))
        lo = qrand(rng, -2, 2)
        hi = lo + Q(rng.randint(0, 2))
        params.append(Parameter(f"q{ell}", Interval(lo, hi),
                                [[Q(0)] * n for _ in range(m)], b))
    return ParametricSystem(m, n, A0, b0, params)


def gen_quantified(rng, m=2, n=2, n_forall=1, n_exists=2):
    sys = gen_general(rng, m, n, K=n_forall + n_exists)
    ks = list(range(sys.K))
    rng.shuffle(ks)
    quant = QuantifierAssignment(frozenset(ks[:n_forall]),
                                 frozenset(ks[n_forall:]))
    return sys, quant


def gen_tolerable_nonempty(rng, m=2, n=2, K=2, common_kernel_col=None):
    """Tolerable system guaranteed nonempty: rhs intervals are widened until
    they absorb the base residual range at a chosen anchor point."""
    A0 = [[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
    b0 = [Q(rng.randint(-2, 2)) for _ in range(m)]
    params = []
    for k in range(K):
        A = [[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
        if common_kernel_col is not None:
            for i in range(m):
                A[i][common_kernel_col] = Q(0)
        b = [Q(rng.randint(-1, 1)) for _ in range(m)]
        lo = qrand(rng, -1, 1)
        hi = lo + Q(rng.randint(0, 2), 2)
        params.append(Parameter(f"p{k}", Interval(lo, hi), A, b))
    if common_kernel_col is not None:
        for i in range(m):
            A0[i][common_kernel_col] = Q(0)
    base = ParametricSystem(m, n, A0, b0, params)

    x0 = random_point(rng, n, -2, 2)
    if common_kernel_col is not None:
        x0[common_kernel_col] = Q(0)
    # residual range of A(p)x0 - b(p) over the box, componentwise
    from pilsys.model import residual_vectors
    res = residual_vectors(base, x0)
    center = res[0][:]
    spread = [Q(0)] * m
    for par, v in zip(base.params, res[1:]):
        for i in range(m):
            center[i] += par.interval.mid * v[i]
            spread[i] += par.interval.rad * abs(v[i])
    rhs = []
    for i in range(m):
        d = [Q(0)] * m
        d[i] = Q(1)
        rhs.append(RhsParameter(
            f"q{i}", Interval(center[i] - spread[i] - 1, center[i] + spread[i] + 1), d))
    return TolerableSystem(base, rhs), x0
