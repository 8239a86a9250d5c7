"""Binary trajectory dumps for cross-run comparison and reference caching.

Format: little-endian float64 throughout.  Header of four values
(alpha, M, J, T), then (J+1) rows of M-1 values each: U_0 followed by the
J slab values.  Writes are atomic (temp file + rename) so concurrent readers
never observe a partial file.
"""

from __future__ import annotations

import hashlib
import os
import tempfile

import numpy as np

from .dg_solver import Trajectory
from .fem1d import SpaceGrid1D
from .timegrid import TimeGrid

__all__ = ["write_trajectory", "read_trajectory", "file_sha256"]


def write_trajectory(path: str, traj: Trajectory) -> None:
    header = np.array([traj.alpha, traj.sgrid.M, traj.tgrid.J, traj.tgrid.T], dtype="<f8")
    payload = np.ascontiguousarray(traj.data, dtype="<f8")
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header.tobytes())
            fh.write(payload.tobytes())
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def read_trajectory(path: str) -> Trajectory:
    with open(path, "rb") as fh:
        header = np.frombuffer(fh.read(32), dtype="<f8")
        if header.shape != (4,):
            raise ValueError(f"truncated trajectory header in {path}")
        alpha, M, J, T = float(header[0]), int(header[1]), int(header[2]), float(header[3])
        data = np.frombuffer(fh.read(), dtype="<f8").reshape(J + 1, M - 1).copy()
    return Trajectory(alpha=alpha, sgrid=SpaceGrid1D(M), tgrid=TimeGrid(T, J), data=data)


def file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()
