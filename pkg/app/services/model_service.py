"""
Model ingestion: model file -> validated operators / GKS matrix / projected system.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union
import logging

import numpy as np
from pydantic import ValidationError

from app.models.model_file import ModelFile, pairs_to_matrix
from app.models.quantum import GksModel, LindbladOp, ProjectedSystem
from app.pipelines.lindblad.core_model import (
    discard_drift,
    gks_from_lindblad,
    is_physical,
    project_to_six_params,
    validate_inequality,
)
from app.utils.enums import ModelKind
from app.utils.errors import InvalidModelError, ModelFileError, NotPsdError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LoadedModel:
    """A parsed model in every representation derivable from its input."""
    kind: ModelKind
    system: ProjectedSystem
    ops: Optional[List[LindbladOp]] = None
    gks: Optional[GksModel] = None
    label: Optional[str] = None
    control_offset: Optional[np.ndarray] = None  # from a discarded drift Hamiltonian

    @property
    def inequality_ok(self) -> bool:
        return validate_inequality(self.system)

    @property
    def physical(self) -> bool:
        return is_physical(self.system)

    def require_physical(self) -> "LoadedModel":
        """Raise NotPsdError unless the projected system is a valid dissipator."""
        if not self.physical:
            raise NotPsdError("Projected system is not positive semidefinite")
        if not self.inequality_ok:
            raise NotPsdError("Projected system violates a.b^2 <= 4 a1 a2 a3")
        return self

    def require_ops(self) -> List[LindbladOp]:
        if self.ops is None:
            raise InvalidModelError(
                f"Model given as '{self.kind.value}'; classification needs lindblad_ops "
                f"since the operator decomposition is not unique"
            )
        return self.ops


def _field_name(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "<root>"
    return f"{location}: {first.get('msg', 'invalid value')}"


class ModelService:

    @staticmethod
    def parse(data: Union[str, bytes, Dict]) -> ModelFile:
        """Validate raw JSON text or an already-decoded mapping."""
        try:
            if isinstance(data, (str, bytes)):
                return ModelFile.model_validate_json(data)
            return ModelFile.model_validate(data)
        except ValidationError as e:
            raise ModelFileError(f"Malformed model file at {_field_name(e)}") from e

    @classmethod
    def load(cls, path: Union[str, Path]) -> ModelFile:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ModelFileError(f"Cannot read model file {path}: {e}") from e
        return cls.parse(text)

    @staticmethod
    def build(model: ModelFile) -> LoadedModel:
        """
        Convert a parsed model file into domain objects.

        Operators are made traceless; a non-PSD matrix raises NotPsdError.
        """
        offset = None
        if model.hamiltonian_drift is not None:
            offset = discard_drift(pairs_to_matrix(model.hamiltonian_drift))

        kind = model.kind
        ops = None
        gks = None
        if kind is ModelKind.LINDBLAD_OPS:
            matrices = [pairs_to_matrix(op) for op in model.lindblad_ops]
            for i, m in enumerate(matrices):
                if abs(np.trace(m)) > 1e-12 * max(1.0, float(np.linalg.norm(m))):
                    logger.warning(
                        f"lindblad_ops.{i} has trace {np.trace(m):.3g}; identity part moved "
                        f"into the (controllable) Hamiltonian"
                    )
            ops = [LindbladOp.canonical(m) for m in matrices]
            gks = gks_from_lindblad(ops)
            system = project_to_six_params(gks)
        elif kind is ModelKind.GKS:
            gks = GksModel(a=pairs_to_matrix(model.gks))
            system = project_to_six_params(gks)
        else:
            system = ProjectedSystem.from_params(model.projected.a, model.projected.b)

        logger.debug(f"Loaded {kind.value} model '{model.label or ''}': a={system.a.tolist()}, b={system.b.tolist()}")
        return LoadedModel(
            kind=kind,
            system=system,
            ops=ops,
            gks=gks,
            label=model.label,
            control_offset=offset,
        )

    @classmethod
    def load_model(cls, path: Union[str, Path]) -> LoadedModel:
        return cls.build(cls.load(path))
