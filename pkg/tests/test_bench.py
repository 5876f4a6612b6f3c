import pytest

from sfcneighbors.bench import CSV_HEADER, bench_curve, parse_levels, rows_to_csv
from sfcneighbors.errors import ContractError


def test_parse_levels():
    assert parse_levels("5..8") == [5, 6, 7, 8]
    assert parse_levels("5, 10") == [5, 10]
    assert parse_levels("7") == [7]
    with pytest.raises(ContractError):
        parse_levels("9..3")


@pytest.mark.parametrize("curve, kernel", [("peano2", "general"), ("hilbert2d", "iterative"),
                                           ("hilbert2d", "multilevel"), ("hilbert2d", "fast"),
                                           ("sierpinski2d", "fast"), ("peano2_local", "fast")])
def test_one_row_per_level(curve, kernel):
    rows = list(bench_curve(curve, kernel, [5, 6], samples=300, reps=2, depth=2))
    assert [r.level for r in rows] == [5, 6]
    assert all(r.median_ns >= 0 and r.samples == 300 for r in rows)


def test_csv_shape():
    rows = list(bench_curve("peano2", "general", parse_levels("5..30"), samples=50, reps=1))
    text = rows_to_csv(rows).splitlines()
    assert text[0] == ",".join(CSV_HEADER) and len(text) == 27


def test_no_fast_kernel():
    with pytest.raises(ContractError):
        list(bench_curve("hilbert3d", "fast", [3], samples=10, reps=1))
