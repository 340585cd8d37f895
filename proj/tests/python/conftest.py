import json
import os
import pathlib
import shutil
import subprocess

import pytest

SOURCE_DIR = pathlib.Path(os.environ.get("ARAKELOV_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def data_dir():
    return SOURCE_DIR / "data"


@pytest.fixture(scope="session")
def schema_validator():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    schema_dir = SOURCE_DIR / "schemas"
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        contents = json.loads(path.read_text())
        resources.append((path.name, referencing.Resource.from_contents(contents)))
    registry = referencing.Registry().with_resources(resources)

    def validate(instance, name):
        schema = registry.contents(name + ".schema.json")
        jsonschema.Draft202012Validator(schema, registry=registry).validate(instance)

    return validate


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("ARAKELOV_CLI") or shutil.which("arakelov")
    if not exe:
        pytest.skip("arakelov executable not available")

    def run(*args, check=True):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True, timeout=300)
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc

    return run
