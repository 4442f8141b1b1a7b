from fractions import Fraction

import pytest

from sawlab import Shape, StuntedSawtoothMap


@pytest.fixture
def tent_shape():
    return Shape.from_string("+-")


@pytest.fixture
def tent(tent_shape):
    """Full tent map as the w = 1 member of the stunted family."""
    return StuntedSawtoothMap(tent_shape, [Fraction(1)]).map


@pytest.fixture
def stunted_tent(tent_shape):
    def make(w):
        return StuntedSawtoothMap(tent_shape, [Fraction(w)])

    return make
