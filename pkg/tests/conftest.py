"""Pytest configuration and fixtures."""

import os

import pytest

from src.config import get_settings
from src.domain.schemas.verdict import ImageConfig
from src.domain.schemas.word import Word
from src.domain.services.generators import fibonacci
from src.domain.validators.n0 import ImageContext, prepare_image


@pytest.fixture(scope="session")
def fib() -> Word:
    """A 2000-letter Fibonacci prefix."""
    return fibonacci(2000)


@pytest.fixture(scope="session")
def image_l1() -> ImageContext:
    """F(v) for l=1 and epsilon = Fibonacci over 1/0, where n0 = 4."""
    return prepare_image(ImageConfig(l=1, epsilon="fibonacci10", prefix_length=20_000))


@pytest.fixture(scope="session")
def image_l1_slow() -> ImageContext:
    """F(v) for l=1 and epsilon = Fibonacci over 0/1, where n0 = 6."""
    return prepare_image(ImageConfig(l=1, epsilon="fibonacci01", prefix_length=20_000))


@pytest.fixture
def clean_settings(monkeypatch):
    """Settings rebuilt from a clean environment for the duration of a test."""
    for key in list(os.environ):
        if key.startswith("WORDCA_"):
            monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield get_settings()
    get_settings.cache_clear()
