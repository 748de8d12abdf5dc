"""Readers and writers for the file formats: JSON states, POVMs and
Hamiltonians (re/im layout), relation-report JSON, and the CSV tables.

Floats in CSV carry 12 significant digits with a '.' decimal separator.
Non-finite floats are encoded as the strings "inf", "-inf", "nan" in JSON
(strict parsers reject bare Infinity tokens).
"""

from __future__ import annotations

import json
import math

import numpy as np

from .core import DensityMatrix
from .dissipation import Trajectory
from .measurement import Povm
from .relations import RelationReport
from .thermo import Hamiltonian


def fmt(x) -> str:
    """12-significant-digit decimal rendering used in every CSV column."""
    return f"{float(x):.12g}"


def _matrix_to_json(m: np.ndarray) -> dict:
    return {
        "re": [[float(v.real) for v in row] for row in m],
        "im": [[float(v.imag) for v in row] for row in m],
    }


def _matrix_from_json(obj) -> np.ndarray:
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError(f"re/im shapes disagree: {re.shape} vs {im.shape}")
    return re + 1.0j * im


def write_state(path, rho: DensityMatrix) -> None:
    obj = {
        "dims": list(rho.dims) if rho.dims is not None else None,
        **_matrix_to_json(rho.matrix),
    }
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def read_state(path) -> DensityMatrix:
    """Load a state file and validate the density-matrix invariants."""
    with open(path) as fh:
        obj = json.load(fh)
    dims = obj.get("dims")
    return DensityMatrix(_matrix_from_json(obj), dims=tuple(dims) if dims else None)


def write_povm(path, povm: Povm) -> None:
    with open(path, "w") as fh:
        json.dump([_matrix_to_json(m) for m in povm.operators], fh, indent=1)
        fh.write("\n")


def read_povm(path) -> Povm:
    with open(path) as fh:
        entries = json.load(fh)
    return Povm([_matrix_from_json(e) for e in entries])


def write_hamiltonian(path, h: Hamiltonian) -> None:
    with open(path, "w") as fh:
        json.dump(_matrix_to_json(h.matrix), fh, indent=1)
        fh.write("\n")


def read_hamiltonian(path) -> Hamiltonian:
    with open(path) as fh:
        return Hamiltonian(_matrix_from_json(json.load(fh)))


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        v = float(value)
        if math.isfinite(v):
            return v
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    return value


def reports_json(reports: list[RelationReport]) -> str:
    return json.dumps([_jsonable(r.to_dict()) for r in reports], indent=1)


def write_reports(path, reports: list[RelationReport]) -> None:
    with open(path, "w") as fh:
        fh.write(reports_json(reports))
        fh.write("\n")


def trajectory_header() -> list[str]:
    cols = ["t"]
    for i in range(4):
        for j in range(4):
            cols.append(f"re_{i}{j}")
            cols.append(f"im_{i}{j}")
    cols.extend(["trace", "min_eigenvalue"])
    return cols


def write_trajectory_csv(path, trajectory: Trajectory) -> None:
    """One row per stored step: t, the 16 entries re/im interleaved, trace,
    and the smallest eigenvalue."""
    lines = [",".join(trajectory_header())]
    for t, state in zip(trajectory.times, trajectory.states):
        m = state.matrix
        fields = [fmt(t)]
        for i in range(4):
            for j in range(4):
                fields.append(fmt(m[i, j].real))
                fields.append(fmt(m[i, j].imag))
        fields.append(fmt(np.trace(m).real))
        fields.append(fmt(state.eigenvalues().min()))
        lines.append(",".join(fields))
    with open(path, "w") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def write_csv(path, columns: list[str], rows: list[dict]) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt(row[c]) for c in columns))
    with open(path, "w") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
