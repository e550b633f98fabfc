import json
import pytest
from strata_cli import cli_dispatch
from tests.designs import workflow_config


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Simulated workflow data and its truth document written through the command line."""
    directory = tmp_path_factory.mktemp("cli")
    config = directory / "config.json"
    config.write_text(json.dumps(workflow_config().to_dict()), encoding="utf-8")
    code = cli_dispatch(["simulate", "--config", str(config), "--seed", "42", "--out", str(directory / "data.csv")])
    assert code == 0
    return directory
