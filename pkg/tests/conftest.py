from pathlib import Path

import pytest

from graphsep import lgr
from graphsep.graph import LayeredGraph

GOLDENS = Path(__file__).resolve().parents[1] / "goldens"


def golden(name: str) -> LayeredGraph:
    return lgr.load(GOLDENS / name)


@pytest.fixture
def goldens_dir():
    return GOLDENS


# Reference graphs, 0-based labels.
STAR4 = LayeredGraph(2, 2, {(0, 2), (1, 2), (2, 3)})
DEG_SYM_ONLY = LayeredGraph(2, 5, {(0, 6), (1, 7), (2, 8), (3, 9), (4, 5)})
SCAFFOLD_H = LayeredGraph(3, 4, {(0, 5), (1, 4), (2, 7), (3, 6), (4, 9), (5, 8), (6, 11), (7, 10)})
PATH_SEP = LayeredGraph(2, 2, {(0, 1), (1, 3), (2, 3)})
PATH_ENT = LayeredGraph(2, 2, {(0, 1), (0, 3), (2, 3)})
SIX_VERTEX = LayeredGraph(2, 3, {(0, 1), (0, 4), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)})
INTERCHANGE_G = LayeredGraph(2, 3, {(0, 4), (1, 3), (1, 5), (2, 4)})
INTERCHANGE_H = LayeredGraph(2, 3, {(0, 3), (0, 5), (1, 4), (2, 4)})
RELABEL_FIRST = LayeredGraph(2, 3, {(0, 4), (1, 4), (1, 3), (1, 5), (2, 4), (3, 4), (4, 5)})
RELABEL_SECOND = LayeredGraph(2, 3, {(0, 4), (0, 3), (0, 1), (1, 4), (2, 4), (3, 4), (4, 5)})
# 1-based source labels (1->6, 2->1, 3->3, 4->4, 5->5, 6->2)
RELABEL_PERM = (5, 0, 2, 3, 4, 1)
STAR_K13 = LayeredGraph(2, 2, {(0, 1), (0, 2), (0, 3)})
K4 = LayeredGraph(2, 2, {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)})

# Werner states as printed (entries rounded to four places for d = 3).
RHO_2_0_PRINTED = [[0, 0, 0, 0], [0, 0.5, -0.5, 0], [0, -0.5, 0.5, 0], [0, 0, 0, 0]]
_s = 0.1667
RHO_3_0_PRINTED = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, _s, 0, -_s, 0, 0, 0, 0, 0],
    [0, 0, _s, 0, 0, 0, -_s, 0, 0],
    [0, -_s, 0, _s, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, _s, 0, -_s, 0],
    [0, 0, -_s, 0, 0, 0, _s, 0, 0],
    [0, 0, 0, 0, 0, -_s, 0, _s, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
]
