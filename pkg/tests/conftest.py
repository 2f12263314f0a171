import pytest

from kedges.constructions import SrConfig, build_sr


@pytest.fixture(scope="session")
def s3():
    return build_sr(SrConfig(r=3))
