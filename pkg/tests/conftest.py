import json
from pathlib import Path

import pytest

from qhlab import linalg as la
from qhlab import modules as md
from qhlab.algebra import subalgebra
from qhlab.homology import BorelEmbedding
from qhlab.order import SimpleOrder
from qhlab.presentation import Quiver, bound_quiver_algebra, path_algebra, presentation_from_obj

EXAMPLES = Path(__file__).resolve().parent.parent / "examples"

BASE = {
    "quiver": {"vertices": [1, 2], "arrows": [["α", 1, 2], ["β", 2, 1]]},
    "relations": [[[1, ["α", "β"]]]],
    "degree_bound": 3,
    "order": [[1, 2]],
}


def load_example(name: str) -> dict:
    return json.loads((EXAMPLES / name).read_text(encoding="utf-8"))


def base_algebra():
    spec, order = presentation_from_obj(BASE)
    return bound_quiver_algebra(spec, name="A"), order


def kq2(name="kQ"):
    return path_algebra(Quiver((1, 2), (("a", 1, 2),)), name=name)


def span_borel(a, order, labels, seed=0):
    space = la.Subspace.span([a.element({l: 1}) for l in labels], a.dim)
    b, inc = subalgebra(a, space)
    return BorelEmbedding(md.Embedding(b, a, inc), order, seed=seed)


def ident_borel(a, order):
    return BorelEmbedding(md.identity_embedding(a), order)


NAT = SimpleOrder.chain([1, 2])
OPP = SimpleOrder.chain([2, 1])


@pytest.fixture(scope="session")
def base():
    return base_algebra()


@pytest.fixture(scope="session")
def base_borel(base):
    a, o = base
    return span_borel(a, o, ["e1", "e2", "α"])
