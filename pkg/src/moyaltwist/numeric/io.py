"""Binary and CSV storage of grid functions.

Binary layout (little-endian)::

    8 bytes   magic b"MOYALGRD"
    uint32    format version (1)
    uint32    m
    uint32    N
    uint32    reserved (0)
    float64   L
    float64   re, im interleaved, row-major over the N^m samples
"""
from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from .grid import GridFunction, GridSpec

__all__ = ["write_grid", "read_grid", "export_csv"]

MAGIC = b"MOYALGRD"
VERSION = 1
_HEADER = struct.Struct("<8sIIIId")


def write_grid(path, f: GridFunction) -> None:
    spec = f.spec
    head = _HEADER.pack(MAGIC, VERSION, spec.m, spec.N, 0, float(spec.L))
    body = np.ascontiguousarray(f.values, dtype="<c16").tobytes(order="C")
    Path(path).write_bytes(head + body)


def read_grid(path) -> GridFunction:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: file too short for a grid header")
    magic, version, m, N, _, L = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path}: not a grid file")
    if version != VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    spec = GridSpec(m, N, L)
    expected = _HEADER.size + 16 * N ** m
    if len(raw) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(raw)}")
    vals = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(spec.shape)
    return GridFunction(spec, vals.copy())


def export_csv(path, f: GridFunction) -> None:
    """One row per sample: coordinates, real part, imaginary part."""
    X = [x.reshape(-1) for x in f.spec.mesh()]
    v = f.values.reshape(-1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{a + 1}" for a in range(f.spec.m)] + ["re", "im"])
        for row in zip(*X, v.real, v.imag):
            w.writerow([repr(float(c)) for c in row])
