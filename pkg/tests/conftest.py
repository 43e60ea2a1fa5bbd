"""Shared test setup: imports resolve from src/, cache writes stay in tmp."""

import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import pytest


@pytest.fixture(scope="session", autouse=True)
def _sandbox_cache_dir():
    # never let a test drop ./.expolog-cache into the working tree
    old = os.environ.get("EXPOLOG_CACHE")
    with tempfile.TemporaryDirectory(prefix="expolog-test-cache-") as d:
        os.environ["EXPOLOG_CACHE"] = d
        yield d
    if old is None:
        os.environ.pop("EXPOLOG_CACHE", None)
    else:
        os.environ["EXPOLOG_CACHE"] = old
