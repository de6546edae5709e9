from fractions import Fraction

import pytest

from planepencil.config import ToolkitConfig
from planepencil.core.multipoly import MultiPoly
from planepencil.core.parse import parse_poly


@pytest.fixture(scope="session")
def config():
    return ToolkitConfig()


def P(text, variables=("x", "y")) -> MultiPoly:
    return parse_poly(text, variables)


def T(text) -> MultiPoly:
    return parse_poly(text, ("t",))


def frac(a, b=1) -> Fraction:
    return Fraction(a, b)
