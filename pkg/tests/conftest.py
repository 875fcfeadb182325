import pytest

from cubeslide import LabeledConfig


@pytest.fixture
def sec1_initial():
    """Opening example board: d=3, k=2, four tokens."""
    return LabeledConfig.from_json(
        {"d": 3, "tokens": {"001": 1, "000": 2, "100": 3, "010": 4}})


@pytest.fixture
def sec1_target():
    return LabeledConfig.from_json(
        {"d": 3, "tokens": {"100": 1, "001": 2, "000": 3, "010": 4}})


@pytest.fixture
def fig1_isolated():
    return LabeledConfig.from_json(
        {"d": 3, "tokens": {"001": 1, "111": 2, "100": 3, "010": 4}})


@pytest.fixture
def fig1_semi():
    """Five tokens; only token 5 can ever move."""
    return LabeledConfig.from_json(
        {"d": 3, "tokens": {"000": 1, "100": 2, "110": 3, "010": 4, "001": 5}})


@pytest.fixture
def fig1_mobile():
    return LabeledConfig.from_json(
        {"d": 3, "tokens": {"000": 1, "100": 2, "010": 3, "001": 4}})
