"""Pytest configuration and shared fixtures."""

from pathlib import Path
from typing import Callable

import pytest
import yaml
from click.testing import CliRunner

from src.dioperad import load_named
from src.exactalg import GradedSpace
from src.formalgeo import odd_model

REPO_ROOT = Path(__file__).resolve().parents[1]
EXAMPLES_DIR = REPO_ROOT / "data" / "examples"
FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def examples_dir() -> Path:
    """Directory of the shipped tensor, field and map files."""
    return EXAMPLES_DIR


@pytest.fixture(scope="session")
def lie1bi():
    return load_named("lie1bi")


@pytest.fixture(scope="session")
def lie():
    return load_named("lie")


@pytest.fixture(scope="session")
def com():
    return load_named("com")


@pytest.fixture
def runner() -> CliRunner:
    """Click runner for the command-line surface."""
    return CliRunner()


@pytest.fixture
def sample_coords():
    """Odd-model coordinates on V = <e1 (deg 0), e2 (deg 1)>."""
    return odd_model(GradedSpace.from_pairs([("e1", 0), ("e2", 1)]))


@pytest.fixture
def write_file(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write text into a file under tmp_path and return its path."""

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture(scope="session")
def golden() -> Callable[[str], object]:
    """Read a hand-computed golden file from tests/fixtures."""

    def read(name: str):
        text = (FIXTURES_DIR / name).read_text(encoding="utf-8")
        return yaml.safe_load(text) if name.endswith(".yaml") else text

    return read
