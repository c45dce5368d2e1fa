"""
Shared fixtures for the eigencone tests.
"""
import json
import math

import numpy as np
import pytest

from eigencone.geometry.curves import circle_curve, half_disk_loop, spoke_loop
from eigencone.geometry.symspace import build_curve


@pytest.fixture
def unit_circle():
    """One counterclockwise turn of the unit circle about L."""
    return circle_curve(1.0, 1001)


@pytest.fixture
def half_disk():
    """Upper half-disk boundary, crossing L once."""
    return half_disk_loop(1.0, 401)


@pytest.fixture
def spoke():
    return spoke_loop(1.0, 401)


@pytest.fixture
def offset_circle():
    """A loop that does not enclose L."""
    t = np.linspace(0.0, 2.0 * math.pi, 801)
    points = np.column_stack([3.0 + np.cos(t), np.sin(t), np.zeros_like(t)])
    points[-1] = points[0]
    return build_curve(points)


@pytest.fixture
def write_curve(tmp_path):
    """Write a curve document to a temporary JSON file and return its path."""
    def _write(document, name="curve.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)
    return _write


CIRCLE_DOC = {
    "kind": "circle",
    "center_z": 0.0,
    "radius": 1.0,
    "phi_start": 0.0,
    "phi_end": 2.0 * math.pi,
    "n": 401,
}

HALF_DISK_DOC = {
    "kind": "composite",
    "parts": [
        {"kind": "circle", "center_z": 0.0, "radius": 1.0, "phi_start": 0.0,
         "phi_end": math.pi, "n": 201},
        {"kind": "segment", "from": [-1.0, 0.0, 0.0], "to": [1.0, 0.0, 0.0], "n": 201},
    ],
}


@pytest.fixture
def circle_doc():
    return dict(CIRCLE_DOC)


@pytest.fixture
def half_disk_doc():
    return json.loads(json.dumps(HALF_DISK_DOC))
