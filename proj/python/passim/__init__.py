"""Multizone thermal simulation of naturally ventilated houses.

Buildings, configs and study matrices are passed as JSON text, dicts or file
paths; weather as CSV text or a file path.
"""

import json

from . import _passim
from ._passim import ConvergenceError, Error, InputError

__all__ = [
    "ConvergenceError",
    "Error",
    "InputError",
    "inspect_weather",
    "run_study",
    "simulate",
    "synth_weather",
    "typical_house",
    "validate",
]


def _json_text(value):
    if value is None or isinstance(value, str) and value.lstrip().startswith(("{", "[")):
        return value
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    with open(value, encoding="utf-8") as f:
        return f.read()


def _weather_text(value):
    if isinstance(value, str) and "\n" in value:
        return value
    with open(value, encoding="utf-8") as f:
        return f.read()


def typical_house():
    """The reference house as a dict."""
    return json.loads(_passim.typical_house())


def validate(building):
    """List of (field path, message) violations; empty when the model is valid."""
    return _passim.validate(_json_text(building))


def simulate(building, weather, config=None):
    return _passim.simulate(_json_text(building), _weather_text(weather), _json_text(config))


def run_study(building, weather, matrix=None, threads=1, config=None):
    return _passim.run_study(
        _json_text(building), _weather_text(weather), _json_text(matrix), threads, _json_text(config)
    )


def synth_weather(t_min=5.6, t_max=20.6, clearness=0.7, days=7, start="2001-07-01T00:00", building=None):
    return _passim.synth_weather(t_min, t_max, clearness, days, start, _json_text(building))


def inspect_weather(weather, window_days=7):
    return _passim.inspect_weather(_weather_text(weather), window_days)

