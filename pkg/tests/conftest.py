import numpy as np
import pytest

from wrt import store


def random_rotation(rng):
    """Random rotation via QR of a Gaussian matrix, det fixed to +1."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 2] = -q[:, 2]
    return q


def random_pose_matrix(rng):
    m = np.eye(4)
    m[:3, :3] = random_rotation(rng)
    m[:3, 3] = rng.uniform(-5, 5, 3)
    return m


@pytest.fixture
def db_dir(tmp_path):
    """Fresh database directory with no shared in-process world state."""
    store._reset_state_cache()
    yield tmp_path / "db"
    store._reset_state_cache()
