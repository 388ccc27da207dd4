"""Numerical verification of foliation and curvature identities on 4d charts."""

from ._folia import (  # noqa: F401
    EvalDomainError,
    GeometryError,
    Scene,
    SceneIoError,
    __version__,
    builtin_names,
    builtin_scene,
    eval_jet,
    load_scene,
    parse_scene,
    point_residuals,
    run,
    sample_plan,
)

__all__ = [
    "EvalDomainError",
    "GeometryError",
    "Scene",
    "SceneIoError",
    "__version__",
    "builtin_names",
    "builtin_scene",
    "eval_jet",
    "load_scene",
    "parse_scene",
    "point_residuals",
    "run",
    "sample_plan",
]
