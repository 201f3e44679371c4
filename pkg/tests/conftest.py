import math
import random

import pytest

from otto_tls import CycleFrequencies, Hermitian2, Unitary2, exp_neg_i_h
from otto_tls.tls import KET_MINUS_X, KET_MINUS_Y, KET_PLUS_X, KET_PLUS_Y


@pytest.fixture
def reference_freqs():
    """The frequency pair used throughout the reference figures."""
    return CycleFrequencies(2.0, 3.6)


def random_hermitian(rng: random.Random, scale: float = 2.0) -> Hermitian2:
    a = rng.uniform(-scale, scale)
    d = rng.uniform(-scale, scale)
    b = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
    return Hermitian2(a, b, b.conjugate(), d)


def random_unitary(rng: random.Random) -> Unitary2:
    return exp_neg_i_h(random_hermitian(rng), rng.uniform(0.0, 2.0))


def stroke_unitary(alpha: float, phi1: float = 0.0,
                   phi2: float = 0.0) -> Unitary2:
    """Unitary mapping the x eigenbasis to the y eigenbasis with mixing.

    Sends |+x> -> cos(a) e^{i phi1} |+y> + sin(a) e^{i phi2} |-y> (and the
    orthogonal partner), so its transition probability is exactly sin(a)^2.
    Useful for building test unitaries with a prescribed xi.
    """
    c, s = math.cos(alpha), math.sin(alpha)
    e1 = complex(math.cos(phi1), math.sin(phi1))
    e2 = complex(math.cos(phi2), math.sin(phi2))
    # Columns of V_x / V_y are the basis kets.
    vx = ((KET_PLUS_X[0], KET_MINUS_X[0]), (KET_PLUS_X[1], KET_MINUS_X[1]))
    vy = ((KET_PLUS_Y[0], KET_MINUS_Y[0]), (KET_PLUS_Y[1], KET_MINUS_Y[1]))
    r = ((c * e1, -s * e1), (s * e2, c * e2))
    # U = V_y R V_x^dag
    m = [[0j, 0j], [0j, 0j]]
    for i in range(2):
        for j in range(2):
            acc = 0j
            for k in range(2):
                for l in range(2):
                    acc += vy[i][k] * r[k][l] * vx[j][l].conjugate()
            m[i][j] = acc
    return Unitary2(m[0][0], m[0][1], m[1][0], m[1][1])


def random_stroke_unitary(rng: random.Random) -> Unitary2:
    """Random unitary whose transition probability lies in [0, 1/2]."""
    alpha = math.asin(math.sqrt(rng.uniform(0.0, 0.5)))
    return stroke_unitary(alpha, rng.uniform(0, 2 * math.pi),
                          rng.uniform(0, 2 * math.pi))
