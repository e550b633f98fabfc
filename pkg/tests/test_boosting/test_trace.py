import numpy as np
from boosting.config import BoostingConfig
from boosting.engine import boost_path
from boosting.trace import coefficient_path, path_value, selection_frequency
from survival_model.dataset import validate_dataset
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from tests.naive_cox import three_subject_dataset


def run(dataset, iterations, rate=0.1, snapshot_stride=None):
    model = StratifiedPartialLikelihood(dataset)
    return boost_path(model, BoostingConfig(rate=rate, snapshot_stride=snapshot_stride), iterations)


def test_single_iteration_frequency(small_data):
    _, trace, _ = run(small_data, 1)
    frequency = selection_frequency(trace, small_data.variable_names)
    assert frequency["count"].sum() == 1
    assert (frequency["count"] == 1).sum() == 1
    assert frequency["first_selected"].notna().sum() == 1


def test_counts_sum_to_iterations(small_data):
    _, trace, _ = run(small_data, 40)
    frequency = selection_frequency(trace)
    assert frequency["count"].sum() == 40
    assert list(frequency["variable"]) == list(range(small_data.p))


def test_single_covariate_is_selected_every_time():
    _, trace, _ = run(three_subject_dataset(), 10)
    frequency = selection_frequency(trace, ["x"])
    assert frequency["count"].tolist() == [10]
    assert frequency["first_selected"].tolist() == [1]


def test_coefficient_path_of_three_subject_example():
    _, trace, _ = run(three_subject_dataset(), 1)
    path = coefficient_path(trace)
    assert list(path) == [0]
    (iteration, value), = path[0]
    assert iteration == 1
    assert np.isclose(value, -0.2, atol=1e-12)


def test_path_endpoints_equal_final_beta(small_data):
    state, trace, _ = run(small_data, 60)
    path = coefficient_path(trace)
    for j in range(small_data.p):
        assert path_value(path, j, 60) == state.beta[j]
        if j not in path:
            assert state.beta[j] == 0.0
            assert all(path_value(path, j, m) == 0.0 for m in (0, 30, 60))


def test_beta_at_with_snapshots(small_data):
    _, plain, _ = run(small_data, 50)
    _, snapshotted, _ = run(small_data, 50, snapshot_stride=8)
    for m in (0, 1, 8, 13, 16, 49, 50):
        assert np.array_equal(plain.beta_at(m), snapshotted.beta_at(m))


def test_truncated_trace(small_data):
    _, trace, _ = run(small_data, 30)
    head = trace.truncated(12)
    assert len(head) == 12
    assert head.selection_counts.sum() == 12
    assert np.array_equal(head.beta_at(12), trace.beta_at(12))
    assert np.array_equal(head.log_likelihoods, trace.log_likelihoods[:13])


def test_support_sizes_start_at_zero():
    dataset = validate_dataset([3.0, 2.0, 1.0, 4.0], [1, 1, 0, 1], [[1.0, 0.5], [0.0, 0.1], [2.0, 0.9], [0.3, 0.2]])
    _, trace, _ = run(dataset, 5)
    sizes = trace.support_sizes
    assert sizes[0] == 0
    assert np.all(sizes[1:] >= 1)


def test_support_grows_by_at_most_one_per_iteration(small_data):
    _, trace, _ = run(small_data, 60)
    steps = np.diff(trace.support_sizes)
    assert np.all(steps <= 1)
    assert np.all(steps >= -1)
    for m in range(len(trace) + 1):
        assert np.count_nonzero(trace.beta_at(m)) == trace.support_sizes[m]
