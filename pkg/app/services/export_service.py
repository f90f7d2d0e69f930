"""
Deterministic CSV and JSON output.
"""

from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, IO, Optional, Union
import io
import json
import logging

import numpy as np

from app.config.settings import settings
from app.models.envelope import RateEnvelope
from app.models.trajectory import Trajectory
from app.utils.errors import ModelFileError

logger = logging.getLogger(__name__)

ENVELOPE_HEADER = "r,f_max,f_min,nmax1,nmax2,nmax3,nmin1,nmin2,nmin3"
TRAJECTORY_HEADER = "t,n1,n2,n3,r,u1,u2,u3"
CSV_FORMAT = "%.16e"  # 17 significant digits round-trip a double


def _to_builtin(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


class ExportService:

    @staticmethod
    def csv_text(rows: np.ndarray, header: str) -> str:
        buffer = io.StringIO()
        np.savetxt(buffer, rows, fmt=CSV_FORMAT, delimiter=",", header=header, comments="")
        return buffer.getvalue()

    @classmethod
    def write_csv(cls, path: Union[str, Path], rows: np.ndarray, header: str) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(cls.csv_text(rows, header), encoding="utf-8")
        except OSError as e:
            raise ModelFileError(f"Cannot write {path}: {e}") from e
        logger.info(f"Wrote {len(rows)} rows to {path}")
        return path

    @classmethod
    def write_envelope(cls, path: Union[str, Path], envelope: RateEnvelope) -> Path:
        return cls.write_csv(path, envelope.rows(), ENVELOPE_HEADER)

    @classmethod
    def write_trajectory(cls, path: Union[str, Path], trajectory: Trajectory) -> Path:
        return cls.write_csv(path, trajectory.rows(), TRAJECTORY_HEADER)

    @staticmethod
    def read_controls(path: Union[str, Path]) -> np.ndarray:
        """Read a t,u1,u2,u3 CSV (header optional) into an (N, 4) array."""
        try:
            data = np.genfromtxt(Path(path), delimiter=",", comments="#", skip_header=0)
        except OSError as e:
            raise ModelFileError(f"Cannot read controls file {path}: {e}") from e
        data = np.atleast_2d(data)
        data = data[~np.isnan(data).any(axis=1)]  # drops a header row
        if data.ndim != 2 or data.shape[1] != 4 or len(data) == 0:
            raise ModelFileError(f"Controls file {path} must have columns t,u1,u2,u3")
        if np.any(np.diff(data[:, 0]) <= 0):
            raise ModelFileError(f"Controls file {path}: times must be strictly increasing")
        return data

    @staticmethod
    def json_text(payload: Dict, indent: Optional[int] = None, timestamp: bool = False) -> str:
        """Stable JSON; a generation time is added only on request."""
        if timestamp:
            payload = {**payload, "generated_at": datetime.now(timezone.utc).isoformat()}
        indent = settings.JSON_INDENT if indent is None else indent
        return json.dumps(payload, indent=indent, default=_to_builtin, allow_nan=True)

    @classmethod
    def emit_json(cls, payload: Dict, stream: IO[str], indent: Optional[int] = None, timestamp: bool = False):
        stream.write(cls.json_text(payload, indent=indent, timestamp=timestamp))
        stream.write("\n")
