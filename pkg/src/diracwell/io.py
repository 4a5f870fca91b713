"""Deterministic file output: CSV/JSON tables, atomic writes, run manifests.

Data files are byte-reproducible for identical inputs: floats are printed
with 17 significant digits (shortest exact round trip), the decimal
separator is always ".", and timestamps live only in the manifest.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any

from .units import PhysicalConstants


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def table_to_csv_text(columns: list[str], rows: list[dict[str, Any]]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def table_to_json_text(columns: list[str], rows: list[dict[str, Any]]) -> str:
    payload = {"columns": columns, "rows": [{c: row[c] for c in columns} for row in rows]}
    return json.dumps(payload, indent=2) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class RunManifest:
    """Provenance record emitted alongside every command's outputs."""

    command: str
    config: dict[str, Any]
    states_solved: list[dict[str, Any]]
    output_paths: list[str]
    tool_version: str
    constants_used: dict[str, float]
    created_utc: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    notes: list[str] = field(default_factory=list)

    def write(self, path: str) -> None:
        write_text_atomic(path, json.dumps(asdict(self), indent=2) + "\n")


def constants_snapshot(constants: PhysicalConstants) -> dict[str, float]:
    return {
        "hbar_c_ev_nm": constants.hbar_c_ev_nm,
        "electron_rest_energy_ev": constants.electron_rest_energy_ev,
        "elementary_charge_c": constants.elementary_charge_c,
        "speed_of_light_m_per_s": constants.speed_of_light_m_per_s,
    }


def state_summary(state) -> dict[str, Any]:
    return {
        "l": state.azimuthal_l,
        "n": state.radial_n,
        "e_kin_mev": state.energy_kinetic_mev,
        "zeta_per_m": state.wave_numbers.zeta_per_m,
        "xi_per_m": state.wave_numbers.xi_per_m,
        "ln_kappa": state.ln_kappa,
        "kappa_sign": state.kappa_sign,
        "boundary_residual": state.boundary_residual,
    }
