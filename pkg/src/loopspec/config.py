"""Run configuration: JSON files describing a curve plus command parameters.

A curve definition is one of

    {"preset": "circle",  "radius": 1.0, "samples": 1024}
    {"preset": "ellipse", "a": 2.0, "b": 1.0, "samples": 1024}
    {"preset": "wiggly",  "amplitude": 0.3, "lobes": 3, "samples": 1024}
    {"samples_xy": [[x, y], ...], "m": 1024, "interp": "fourier"}
    {"curvature": {"cos": [c0, c1, ...], "sin": [s1, ...], "length": L,
                   "m": 1024, "base_point": [x, y], "base_angle": a}}

The curvature form means gamma(s) = c0 + sum_k c_k cos(2*pi*k*s/L)
+ sum_k s_k sin(2*pi*k*s/L).  Every command echoes its full configuration
into the output header, so a result file identifies its own inputs.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .errors import PreconditionError


@dataclass
class ExperimentConfig:
    """Parsed command configuration; raw dict kept for the output echo."""

    raw: dict
    curve_spec: dict | None = None
    params: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise PreconditionError("config root must be a JSON object")
        curve_spec = raw.get("curve")
        params = {k: v for k, v in raw.items() if k != "curve"}
        return cls(raw=raw, curve_spec=curve_spec, params=params)

    def echo(self):
        """Canonical one-line JSON for the output header."""
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":"))

    def build_curve(self):
        if self.curve_spec is None:
            raise PreconditionError("config lacks a 'curve' section")
        return build_curve(self.curve_spec)

    def get(self, key, default=None):
        return self.params.get(key, default)

    def require(self, key):
        if key not in self.params:
            raise PreconditionError(f"config key '{key}' is required")
        return self.params[key]


def build_curve(spec):
    """Construct a LoopCurve from a curve-definition dict."""
    if not isinstance(spec, dict):
        raise PreconditionError("curve definition must be an object")
    preset = spec.get("preset")
    if preset == "circle":
        return geometry.circle(spec.get("radius", 1.0), spec.get("samples", 1024))
    if preset == "ellipse":
        return geometry.ellipse(
            spec.get("a", 2.0), spec.get("b", 1.0), spec.get("samples", 1024)
        )
    if preset == "wiggly":
        return geometry.wiggly_loop(
            spec.get("amplitude", 0.3), spec.get("lobes", 3), spec.get("samples", 1024)
        )
    if preset is not None:
        raise PreconditionError(f"unknown preset {preset!r}")
    if "samples_xy" in spec:
        return geometry.from_samples(
            np.asarray(spec["samples_xy"], dtype=float),
            m=spec.get("m", 1024),
            interp=spec.get("interp", "fourier"),
        )
    if "curvature" in spec:
        cdef = spec["curvature"]
        length = cdef.get("length")
        if length is None:
            raise PreconditionError("curvature definition needs 'length'")
        cos_c = np.asarray(cdef.get("cos", []), dtype=float)
        sin_c = np.asarray(cdef.get("sin", []), dtype=float)

        def gamma(s):
            out = np.zeros_like(s)
            if cos_c.size:
                out += cos_c[0]
            for k in range(1, cos_c.size):
                out += cos_c[k] * np.cos(2.0 * np.pi * k * s / length)
            for k in range(1, sin_c.size + 1):
                out += sin_c[k - 1] * np.sin(2.0 * np.pi * k * s / length)
            return out

        return geometry.from_curvature(
            gamma,
            length,
            base_point=tuple(cdef.get("base_point", (0.0, 0.0))),
            base_angle=cdef.get("base_angle", 0.0),
            m=cdef.get("m", 1024),
        )
    raise PreconditionError("curve definition not recognized")
