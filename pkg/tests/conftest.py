import pytest

from pedintent import PipelineConfig, default_training_set, train_tree


@pytest.fixture(scope="session")
def cfg():
    return PipelineConfig()


@pytest.fixture(scope="session")
def trained(cfg):
    """(tree, gain report) trained once on the default corpus."""
    samples, labels = default_training_set(cfg)
    return train_tree(samples, labels)


@pytest.fixture(scope="session")
def tree(trained):
    return trained[0]
