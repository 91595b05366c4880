import pytest

from kfactor.core import Edge


def edges_of(row: str) -> tuple:
    """Parse a factor written in the x_a y_b notation, edges separated by
    double spaces."""
    out = []
    for token in row.split("  "):
        token = token.strip()
        if not token:
            continue
        left, right = token.split(" ")
        x, a = left.split("_")
        y, b = right.split("_")
        out.append(Edge.make(int(x), int(a), int(y), int(b)))
    return tuple(out)


@pytest.fixture
def seed_rows():
    """Golden OF(4,2) table, frozen independently of the package data."""
    return [
        "1_1 2_1  1_2 3_1  2_2 4_1  3_2 4_2",
        "1_1 2_2  2_1 3_1  3_2 4_1  1_2 4_2",
        "1_1 3_1  2_1 3_2  1_2 4_1  2_2 4_2",
        "1_1 3_2  2_1 4_1  3_1 4_2  1_2 2_2",
        "1_1 4_1  2_1 4_2  2_2 3_1  1_2 3_2",
        "1_1 4_2  1_2 2_1  3_1 4_1  2_2 3_2",
    ]
