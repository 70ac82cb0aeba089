"""Surface pencils with a common line of curvature in Minkowski 3-space."""

import json
import os

from . import _core
from ._core import (
    ConfigError,
    CurveError,
    LorentzPencilError,
    SpecError,
    example_names,
)

__all__ = [
    "ConfigError",
    "CurveError",
    "LorentzPencilError",
    "SpecError",
    "config_text",
    "example_names",
    "frame",
    "obj_text",
    "run_cli",
    "sample_grid",
    "verify",
]


def config_text(config):
    """Config JSON text from a dict, a JSON string, a path, or an example name."""
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, os.PathLike) or (isinstance(config, str) and os.path.isfile(config)):
        with open(config, encoding="utf-8") as fh:
            return fh.read()
    if isinstance(config, str) and not config.lstrip().startswith("{"):
        return _core.example_config_text(config)
    return config


def verify(config, tolerances=None):
    """Verification report as a dict."""
    return json.loads(_core.verify_json(config_text(config), tolerances or {}))


def sample_grid(config, ns=0, nt=0, parallel=True):
    return _core.sample_grid(config_text(config), ns, nt, parallel)


def obj_text(config):
    return _core.obj_text(config_text(config))


def frame(config, s):
    return _core.frame(config_text(config), s)


def run_cli(*args):
    """run_cli("verify", path) or run_cli(["verify", path]); returns (code, stdout, stderr)."""
    if len(args) == 1 and isinstance(args[0], (list, tuple)):
        args = tuple(args[0])
    return _core.run_cli([str(a) for a in args])
