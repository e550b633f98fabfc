import numpy as np
import pytest
from survival_model.dataset import validate_dataset
from survival_model.errors import SurvivalDataError


def test_minimal_dataset():
    """Two subjects, one event, one covariate."""
    dataset = validate_dataset([1.0, 2.0], [1, 0], [[0.3], [0.1]])
    assert dataset.n == 2
    assert dataset.p == 1
    assert dataset.num_strata == 1
    assert dataset.num_events == 1
    assert dataset.variable_names == ("V1",)


def test_no_events_rejected():
    with pytest.raises(SurvivalDataError, match="no events"):
        validate_dataset([1.0, 2.0], [0, 0], [[0.0], [1.0]])


def test_stratum_labels_mapped_in_order_of_appearance():
    dataset = validate_dataset([1.0, 2.0, 3.0], [1, 1, 0], [[0.0], [1.0], [2.0]], stratum=["A", "B", "A"])
    assert list(dataset.stratum) == [0, 1, 0]
    assert dataset.stratum_labels == ("A", "B")
    assert dataset.num_strata == 2
    assert list(dataset.events_per_stratum()) == [1, 1]


def test_nonpositive_time_reports_row():
    with pytest.raises(SurvivalDataError) as excinfo:
        validate_dataset([1.0, -2.0, 3.0], [1, 1, 0], [[0.0], [1.0], [2.0]])
    assert excinfo.value.row == 1
    assert excinfo.value.column == "time"


def test_status_outside_zero_one_reports_row():
    with pytest.raises(SurvivalDataError) as excinfo:
        validate_dataset([1.0, 2.0, 3.0], [1, 2, 0], [[0.0], [1.0], [2.0]])
    assert excinfo.value.row == 1
    assert excinfo.value.column == "status"


def test_non_finite_covariate_reports_variable():
    with pytest.raises(SurvivalDataError) as excinfo:
        validate_dataset([1.0, 2.0], [1, 0], [[0.0, 1.0], [np.nan, 2.0]], variable_names=["age", "dose"])
    assert excinfo.value.row == 1
    assert excinfo.value.column == "age"


@pytest.mark.parametrize("time, status, covariates, stratum", [
    ([1.0, 2.0], [1, 0, 1], [[0.0], [1.0]], None),
    ([1.0, 2.0], [1, 0], [[0.0], [1.0], [2.0]], None),
    ([1.0, 2.0], [1, 0], [[0.0], [1.0]], ["a"]),
])
def test_length_mismatch(time, status, covariates, stratum):
    with pytest.raises(SurvivalDataError, match="length mismatch"):
        validate_dataset(time, status, covariates, stratum=stratum)


def test_duplicate_variable_names_rejected():
    with pytest.raises(SurvivalDataError, match="distinct"):
        validate_dataset([1.0, 2.0], [1, 0], [[0.0, 1.0], [1.0, 2.0]], variable_names=["x", "x"])


def test_dataset_arrays_are_read_only():
    dataset = validate_dataset([1.0, 2.0], [1, 0], [[0.3], [0.1]])
    with pytest.raises(ValueError):
        dataset.time[0] = 5.0


def test_input_arrays_are_not_aliased():
    covariates = np.array([[0.3], [0.1]])
    dataset = validate_dataset([1.0, 2.0], [1, 0], covariates)
    covariates[0, 0] = 9.0
    assert dataset.covariates[0, 0] == 0.3


def test_subset_keeps_stratum_mapping():
    dataset = validate_dataset([1.0, 2.0, 3.0], [1, 1, 0], [[0.0], [1.0], [2.0]], stratum=["A", "B", "A"])
    part = dataset.subset([1])
    assert part.n == 1
    assert part.stratum_labels == ("A", "B")
    assert list(part.stratum) == [1]
    assert part.num_strata == 2


def test_column_subset_and_index():
    dataset = validate_dataset([1.0, 2.0], [1, 0], [[0.0, 1.0, 2.0], [3.0, 4.0, 5.0]],
                               variable_names=["a", "b", "c"])
    part = dataset.column_subset([2, 0])
    assert part.variable_names == ("c", "a")
    assert part.covariates.tolist() == [[2.0, 0.0], [5.0, 3.0]]
    assert dataset.column_index("b") == 1
    with pytest.raises(SurvivalDataError, match="unknown variable"):
        dataset.column_index("z")


def test_fingerprint():
    dataset = validate_dataset([1.0, 2.0, 3.0], [1, 1, 0], [[0.0], [1.0], [2.0]], stratum=[1, 2, 1])
    assert dataset.fingerprint() == {"n": 3, "p": 1, "strata": 2, "events": 2}
