"""File formats.

CSV: ``#``-prefixed metadata lines (``# key: <json>``), one header row of
column names, LF endings, floats with 17 significant digits.
Wavefunction JSON: ``{version, grid: {n, theta0, dtheta}, amplitudes: [[re, im], ...]}``.
Relative eigenstates use the same envelope with ``kind = "relative_eigenstate"``.
"""
import json
from pathlib import Path

import numpy as np

from . import __version__
from .domain import GaugeShape, MomentumSector
from .spectral import PlaneWaveBasis, RelativeEigenstate
from .wavefunction import RingWavefunction

FORMAT_VERSION = 1


class FormatVersionError(ValueError):
    pass


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def header(meta):
    base = {"format_version": FORMAT_VERSION, "package_version": __version__}
    base.update(meta or {})
    return base


def write_csv(path, columns, rows, meta=None):
    path = Path(path)
    lines = [f"# {k}: {json.dumps(v, default=_json_default)}" for k, v in header(meta).items()]
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} fields, expected {len(columns)}")
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def _check_version(meta, path):
    version = meta.get("format_version", meta.get("version"))
    if version != FORMAT_VERSION:
        raise FormatVersionError(f"{path}: format version {version!r}, expected {FORMAT_VERSION}")


def read_csv(path):
    """Return (meta, columns, data) with data as a float array."""
    meta, body = {}, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = json.loads(value)
        elif line:
            body.append(line)
    _check_version(meta, path)
    columns = body[0].split(",")
    data = np.array([[float(v) for v in row.split(",")] for row in body[1:]]).reshape(-1, len(columns))
    return meta, columns, data


def _pairs(z):
    return [[float(c.real), float(c.imag)] for c in np.asarray(z, dtype=complex)]


def _complex(pairs):
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    return arr[:, 0] + 1j * arr[:, 1]


def _dump(path, doc):
    Path(path).write_text(json.dumps(doc, indent=1, default=_json_default) + "\n", newline="\n")
    return Path(path)


def _load(path, kind):
    doc = json.loads(Path(path).read_text())
    _check_version(doc, path)
    if doc.get("kind", kind) != kind:
        raise ValueError(f"{path}: expected a {kind} file, found {doc.get('kind')!r}")
    return doc


def write_wavefunction(path, psi, meta=None):
    doc = {
        "version": FORMAT_VERSION,
        "kind": "ring_wavefunction",
        "grid": {"n": psi.n, "theta0": -np.pi, "dtheta": psi.dtheta},
        "meta": dict(psi.meta, **(meta or {})),
        "amplitudes": _pairs(psi.amplitudes),
    }
    return _dump(path, doc)


def read_wavefunction(path):
    doc = _load(path, "ring_wavefunction")
    amps = _complex(doc["amplitudes"])
    if len(amps) != doc["grid"]["n"]:
        raise ValueError(f"{path}: grid size {doc['grid']['n']} does not match {len(amps)} amplitudes")
    return RingWavefunction(amps, doc.get("meta", {}))


def write_eigenstate(path, state, meta=None):
    doc = {
        "version": FORMAT_VERSION,
        "kind": "relative_eigenstate",
        "q": state.shape.q,
        "kappa": state.shape.kappa,
        "p": state.p,
        "cutoff": state.basis.cutoff,
        "energy": state.energy,
        "wavenumbers": state.wavenumbers,
        "meta": meta or {},
        "amplitudes": _pairs(state.amplitudes),
    }
    return _dump(path, doc)


def read_eigenstate(path):
    doc = _load(path, "relative_eigenstate")
    basis = PlaneWaveBasis(MomentumSector(doc["p"]), int(doc["cutoff"]))
    amps = _complex(doc["amplitudes"])
    if np.all(amps.imag == 0):
        amps = amps.real
    return RelativeEigenstate(float(doc["energy"]), amps, basis, GaugeShape(doc["q"], doc["kappa"]))
