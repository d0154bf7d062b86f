import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from tricross import Matching


def all_matchings(n):
    ins = [2 * i for i in range(n)]
    outs = [2 * i + 1 for i in range(n)]
    for perm in itertools.permutations(outs):
        yield Matching.from_dict(n, dict(zip(ins, perm)))


@pytest.fixture
def rotation3():
    return Matching.from_dict(3, {0: 3, 2: 5, 4: 1})


@pytest.fixture
def nested3():
    return Matching.from_dict(3, {0: 5, 2: 1, 4: 3})
