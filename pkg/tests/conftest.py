from __future__ import annotations

import pathlib

import pytest

from boxology import builtin, default_rules, default_taxonomy

REPO = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def taxonomy():
    return default_taxonomy()


@pytest.fixture(scope="session")
def rules():
    return default_rules()


@pytest.fixture(scope="session")
def cat():
    return builtin()


@pytest.fixture(scope="session")
def corpus_dir() -> pathlib.Path:
    return REPO / "corpus"


@pytest.fixture(scope="session")
def goldens_dir() -> pathlib.Path:
    return pathlib.Path(__file__).resolve().parent / "goldens"
