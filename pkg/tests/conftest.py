"""Pytest configuration and fixtures."""

import json

import pytest
from click.testing import CliRunner

from app.config import Settings
from app.models.action import GroupWord
from app.services.catalog import CatalogService


@pytest.fixture
def settings():
    """Settings with the documented defaults."""
    return Settings(_env_file=None)


@pytest.fixture
def z1():
    return CatalogService.integer_lattice(1)


@pytest.fixture
def z2():
    return CatalogService.integer_lattice(2)


@pytest.fixture
def free2():
    return CatalogService.free_group(2)


@pytest.fixture
def lamplighter():
    return CatalogService.lamplighter()


@pytest.fixture
def cyclic5():
    return CatalogService.cyclic(5)


@pytest.fixture
def cyclic12():
    return CatalogService.cyclic(12)


@pytest.fixture
def s3():
    return CatalogService.s3_natural()


@pytest.fixture
def two_triangles():
    return CatalogService.two_triangles()


@pytest.fixture
def word():
    """Build a GroupWord from letter tokens written in product order."""

    def build(spec, *tokens):
        return GroupWord(tuple(spec.parse_letter(token) for token in tokens))

    return build


@pytest.fixture
def cli_runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def spec_file(tmp_path):
    """Write an ActionSpec document and return its path."""

    def write(document, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)

    return write
