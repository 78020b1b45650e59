import os

import pytest

from pagamma import harness


def _workers() -> int:
    return max(1, min(os.cpu_count() or 1, 4))


@pytest.fixture(scope="session")
def default_run(tmp_path_factory):
    """One full default-configuration grid run, shared across the session.

    Takes a couple of minutes; every test that needs default-scale
    statistics reads from this single run.
    """
    out = tmp_path_factory.mktemp("figure1_default")
    config = harness.ExperimentConfig(output_dir=out, workers=_workers())
    table = harness.run_figure1(config)
    return config, table
