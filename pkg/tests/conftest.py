"""Shared fixtures: bundled diagrams, their presentations and the GF(3)_chi target."""

import pytest

from crowell.diagram import fixtures
from crowell.presentation import build_presentation, simplify
from crowell.targets import FiniteModuleSpec


@pytest.fixture(scope="session")
def diagrams():
    return fixtures()


@pytest.fixture(scope="session")
def W(diagrams):
    return diagrams["W"]


@pytest.fixture(scope="session")
def L(diagrams):
    return diagrams["L7_2_8"]


@pytest.fixture(scope="session")
def W_raw(W):
    return build_presentation(W)


@pytest.fixture(scope="session")
def L_raw(L):
    return build_presentation(L)


@pytest.fixture(scope="session")
def W_simple(W_raw):
    return simplify(W_raw)


@pytest.fixture(scope="session")
def L_simple(L_raw):
    return simplify(L_raw)


@pytest.fixture(scope="session")
def chi():
    """Z/3 with t1 acting by -1 and t2 by +1."""
    return FiniteModuleSpec(3, 1, (((2,),), ((1,),)))


@pytest.fixture(scope="session")
def fox3():
    return FiniteModuleSpec(3, 1, (((2,),),))
