"""Run configuration: flat ``key = value`` text with dotted sections.

Example::

    q = 1
    kappa.start = 0.0
    kappa.stop = 6.283185307179586
    kappa.count = 315
    measurement.n = 1

Blank lines and ``#`` comments are ignored.  Later assignments win, which
is how command-line overrides are layered on top of a file.
"""
from dataclasses import dataclass, field, fields, is_dataclass
from typing import Optional

import numpy as np

from .fourier import is_power_of_two
from .spectral import PARITIES


class ConfigError(ValueError):
    pass


@dataclass
class KappaGrid:
    start: float = 0.0
    stop: float = 2 * np.pi
    count: int = 315

    def values(self):
        if self.count == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.count)


@dataclass
class MomentumRange:
    min: int = -6
    max: int = 6
    parity: str = "all"
    max_abs: int = 64  # widening limit when the minimiser sits on the range edge


@dataclass
class MeasurementConfig:
    n: int = 1
    theta0: float = 0.0


@dataclass
class EvolveConfig:
    t_max: float = 2 * np.pi
    frames: int = 200


@dataclass
class PartitionConfig:
    n_bins: int = 64


@dataclass
class OutputConfig:
    directory: str = "."
    format: str = "csv"


@dataclass
class RunConfig:
    q: int = 1
    kappa: KappaGrid = field(default_factory=KappaGrid)
    p_range: MomentumRange = field(default_factory=MomentumRange)
    p: Optional[int] = None  # fixed sector for ground/density2d/measure; None = ground state
    n_basis: Optional[int] = None  # None = max(129, 8q + 1)
    n_grid: int = 256
    workers: int = 1
    measurement: MeasurementConfig = field(default_factory=MeasurementConfig)
    evolve: EvolveConfig = field(default_factory=EvolveConfig)
    partition: PartitionConfig = field(default_factory=PartitionConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def validate(self):
        problems = []
        if self.q < 1:
            problems.append("q must be >= 1")
        if self.kappa.count < 1:
            problems.append("kappa grid is empty")
        if self.p_range.min > self.p_range.max:
            problems.append("p_range.min exceeds p_range.max")
        if self.p_range.max_abs < max(abs(self.p_range.min), abs(self.p_range.max)):
            problems.append("p_range.max_abs must cover p_range.min and p_range.max")
        if self.p_range.parity not in PARITIES:
            problems.append(f"p_range.parity must be one of {PARITIES}")
        if self.n_basis is not None and self.n_basis < 4 * self.q + 1:
            problems.append(f"n_basis must be >= 4q + 1 = {4 * self.q + 1}")
        if self.n_grid < 64 or not is_power_of_two(self.n_grid):
            problems.append("n_grid must be a power of two >= 64")
        if self.workers < 1:
            problems.append("workers must be >= 1")
        if self.measurement.n < 1:
            problems.append("measurement.n must be >= 1")
        if self.evolve.frames < 2:
            problems.append("evolve.frames must be >= 2")
        if self.partition.n_bins < 1:
            problems.append("partition.n_bins must be >= 1")
        if self.output.format not in ("csv", "json"):
            problems.append("output.format must be csv or json")
        if problems:
            raise ConfigError("; ".join(problems))
        return self


def _flatten(obj, prefix=""):
    for f in fields(obj):
        value = getattr(obj, f.name)
        key = prefix + f.name
        if is_dataclass(value):
            yield from _flatten(value, key + ".")
        else:
            yield key, value, f.type


def to_text(cfg):
    lines = []
    for key, value, _ in _flatten(cfg):
        lines.append(f"{key} = {'none' if value is None else repr(value) if isinstance(value, float) else value}")
    return "\n".join(lines) + "\n"


def _coerce(raw, typ, key):
    raw = raw.strip()
    optional = typ in (Optional[int], Optional[float])
    if optional and raw.lower() in ("none", "auto", ""):
        return None
    base = {Optional[int]: int, Optional[float]: float}.get(typ, typ)
    try:
        if base is int:
            return int(raw)
        if base is float:
            return float(raw)
        return raw
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {base.__name__}") from None


def _resolve(cfg, key):
    parts = key.split(".")
    obj = cfg
    for part in parts[:-1]:
        if not hasattr(obj, part) or not is_dataclass(getattr(obj, part)):
            raise ConfigError(f"unknown config section {key!r}")
        obj = getattr(obj, part)
    name = parts[-1]
    match = [f for f in fields(obj) if f.name == name and not is_dataclass(getattr(obj, name))]
    if not match:
        raise ConfigError(f"unknown config key {key!r}")
    return obj, match[0]


def apply(cfg, assignments):
    """Apply ``key = value`` strings (or (key, value) pairs) in order."""
    for item in assignments:
        if isinstance(item, str):
            if "=" not in item:
                raise ConfigError(f"expected key = value, got {item!r}")
            key, raw = item.split("=", 1)
        else:
            key, raw = item
        key = key.strip()
        obj, f = _resolve(cfg, key)
        setattr(obj, f.name, _coerce(str(raw), f.type, key))
    return cfg


def parse(text, base=None):
    cfg = RunConfig() if base is None else base
    lines = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        lines.append(line)
    return apply(cfg, lines)


def load(path):
    with open(path) as fh:
        return parse(fh.read())
