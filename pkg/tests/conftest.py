from __future__ import annotations

from pathlib import Path

import pytest

from dor.pipeline import RunConfig, run_build

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "data" / "fixtures"
MIXED = FIXTURES / "mixed"
ALL_AGREEMENT = FIXTURES / "all_agreement"
PUBLISHED = REPO_ROOT / "data" / "published"


def mixed_config(**overrides) -> RunConfig:
    defaults = dict(
        catalog_path=MIXED / "papers.csv",
        readings_path=MIXED / "readings.csv",
        claims_path=MIXED / "claims.csv",
        owners_path=MIXED / "owners.csv",
    )
    defaults.update(overrides)
    return RunConfig(**defaults)


def all_agreement_config(**overrides) -> RunConfig:
    defaults = dict(
        catalog_path=ALL_AGREEMENT / "papers.csv",
        readings_path=ALL_AGREEMENT / "readings.csv",
        claims_path=ALL_AGREEMENT / "claims.csv",
    )
    defaults.update(overrides)
    return RunConfig(**defaults)


@pytest.fixture(scope="session")
def mixed_result():
    return run_build(mixed_config())


@pytest.fixture(scope="session")
def all_agreement_result():
    return run_build(all_agreement_config())
