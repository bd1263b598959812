import os
import sys

import pytest

# Add src/ to path BEFORE pytest collects any test modules
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
SRC = os.path.join(ROOT, "src")
sys.path.insert(0, SRC)

MANIFEST_PATH = os.path.join(ROOT, "config", "expectations.yaml")


@pytest.fixture(scope="session")
def manifest():
    from core.engine import load_manifest
    from workflows.runner import SCENARIOS

    return load_manifest(MANIFEST_PATH, SCENARIOS)


@pytest.fixture(autouse=True)
def _no_sample_override(monkeypatch):
    monkeypatch.delenv("FOCAL_SAMPLES", raising=False)
