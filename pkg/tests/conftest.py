"""Shared pytest configuration: the ``--extended`` switch for multi-hour searches."""

from __future__ import annotations

import pytest


def pytest_addoption(parser: pytest.Parser) -> None:
    """Register ``--extended``."""
    parser.addoption("--extended", action="store_true", default=False, help="Run tests marked 'extended'.")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """Skip ``extended`` tests unless asked for."""
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
