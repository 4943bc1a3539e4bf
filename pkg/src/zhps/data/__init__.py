"""Bundled circuit fixtures."""

from importlib import resources


def fixture_path(name: str) -> str:
    return str(resources.files(__name__).joinpath(name))
