import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def squarefree_levels():
    from rootbias import arith

    return [N for N in range(2, 101) if arith.is_squarefree(N)]
