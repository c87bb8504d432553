import pytest
from hypothesis import HealthCheck, settings

from tdgraph import _backend

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(params=_backend.available())
def backend(request):
    """Every kernel backend that is importable here."""
    return request.param
