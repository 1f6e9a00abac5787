from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from artifact.geometry_model import PolygonD, polygon_d

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)


@st.composite
def orientations(draw: st.DrawFn, nmin: int = 4, nmax: int = 7) -> tuple[int, str]:
    n = draw(st.integers(nmin, nmax))
    dirs = draw(st.text(alphabet="<>", min_size=n - 2, max_size=n - 2))
    return n, dirs


@st.composite
def polygons(draw: st.DrawFn, nmin: int = 4, nmax: int = 7) -> PolygonD:
    n, dirs = draw(orientations(nmin, nmax))
    return polygon_d(n, dirs)
