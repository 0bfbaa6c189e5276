"""Computational companion for wild monodromy of three-point covers.

Submodules: groups, ramification, deformdata, stablegraph, padic, cli.
"""
from pathlib import Path

from .kernels import BACKEND

__version__ = "0.1.0"

FIXTURES = Path(__file__).with_name("fixtures")


def fixture_path(name: str) -> Path:
    if not name.endswith(".json"):
        name += ".json"
    return FIXTURES / name


__all__ = ["BACKEND", "FIXTURES", "fixture_path", "__version__"]
