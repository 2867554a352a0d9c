import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis.extra import numpy as hnp

from tlxs.image import PlanarImage

settings.register_profile(
    "tlxs",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("tlxs")


def plane_arrays(width, height, low, high):
    return hnp.arrays(
        dtype=np.int64, shape=(height, width), elements=st.integers(low, high)
    )


@st.composite
def images(draw, max_dim=24, depths=(8, 10, 12, 16), color=True):
    width = draw(st.integers(1, max_dim))
    height = draw(st.integers(1, max_dim))
    depth = draw(st.sampled_from(depths))
    components = draw(st.sampled_from([1, 3])) if color else 1
    maxv = (1 << depth) - 1
    planes = [
        draw(plane_arrays(width, height, 0, maxv)) for _ in range(components)
    ]
    return PlanarImage.from_planes(planes, depth)


@pytest.fixture(scope="session")
def natural_256():
    from tlxs.synthetic import natural_image

    return natural_image(256, 256, 8)
