import os
import pytest
from strata_cli.bench import bench_dataset, run_bench

slow = pytest.mark.skipif(os.getenv("SKIP_SLOW_TESTS") == "1", reason="Skipping slow timing tests")


def test_bench_dataset_shape():
    dataset = bench_dataset(100, 12, seed=0)
    assert dataset.p == 12
    assert dataset.num_strata == 5
    assert dataset.num_events > 0


@slow
def test_iteration_time_is_linear_in_n_and_p():
    points, timings = run_bench(n=500, p=250, doublings=2, iterations=50, repeats=3, seed=1)
    assert [(point.axis, point.p) for point in points if point.axis == "p"] == [("p", 250), ("p", 500), ("p", 1000)]
    ratios = [point.ratio for point in points if point.ratio is not None]
    assert len(ratios) == 4
    for ratio in ratios:
        assert 1.6 <= ratio <= 2.6
    assert len(timings) == 6 * 3 * 50
