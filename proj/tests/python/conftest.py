import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("TUBEPOLY_CLI", str(ROOT / "build" / "tubepoly"))
    if not pathlib.Path(path).exists():
        pytest.skip("tubepoly executable not built")
    return path


@pytest.fixture(scope="session")
def schema():
    path = os.environ.get("TUBEPOLY_SCHEMA", str(ROOT / "schema" / "report.schema.json"))
    return json.loads(pathlib.Path(path).read_text())
