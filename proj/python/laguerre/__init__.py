"""Laguerre invariants of hypersurfaces; thin wrapper over the C++ core."""

import json as _json

from ._laguerre import (  # noqa: F401
    LaguerreError,
    b_from_a,
    is_laguerre_transform,
    lag_ip,
    laguerre_immersion_tau,
    laguerre_transform_defect,
    principal_curvatures as _principal_curvatures,
    random_laguerre_rotation,
    run_cli,
    two_curvature_targets,
    vector_P,
    verify_json as _verify_json,
)


def principal_curvatures(surface, params, u):
    return _principal_curvatures(surface, _json.dumps(params), list(u))


def verify(surface, params, half_width=0.4, points_per_axis=5):
    """Run the property suite and return the report as a dict."""
    return _json.loads(_verify_json(surface, _json.dumps(params), half_width, points_per_axis))
