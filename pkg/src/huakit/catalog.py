"""Standard instances used across the test matrix and the CLI."""

from __future__ import annotations

from functools import lru_cache

from .fields import FiniteField, make_field
from .jordan import field_jordan
from .mset import MoufangSetData, from_jordan
from .nearfield import (Nearfield, dickson, make_kt_sigma,
                        quadratic_character_coupling, trivial_coupling)

# prime powers within the exhaustive comfort zone
SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27)

_FACTORISATIONS = {
    2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3),
    9: (3, 2), 11: (11, 1), 13: (13, 1), 16: (2, 4), 17: (17, 1),
    19: (19, 1), 23: (23, 1), 25: (5, 2), 27: (3, 3),
}


class UnsupportedQ(Exception):
    pass


def split_prime_power(q: int):
    if q not in _FACTORISATIONS:
        raise UnsupportedQ(f"q must be one of {SUPPORTED_Q}, got {q}")
    return _FACTORISATIONS[q]


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    p, f = split_prime_power(q)
    return make_field(p, f)


@lru_cache(maxsize=None)
def field_moufang(q: int) -> MoufangSetData:
    """The projective-line Moufang set of GF(q), via its field algebra."""
    return from_jordan(field_jordan(field(q)))


@lru_cache(maxsize=None)
def dickson_nearfield(q: int) -> Nearfield:
    """The quadratic-character twist of GF(q); q must be an even-degree
    prime power (q = 9 is the flagship, q = 25 the second odd-char case)."""
    return dickson(field(q), quadratic_character_coupling(field(q)))


@lru_cache(maxsize=None)
def field_as_nearfield(q: int) -> Nearfield:
    return dickson(field(q), trivial_coupling(field(q)))


def dickson_with_sigma(q: int):
    N = dickson_nearfield(q)
    return N, make_kt_sigma(N)


def field_nearfield_with_sigma(q: int):
    N = field_as_nearfield(q)
    return N, make_kt_sigma(N)
