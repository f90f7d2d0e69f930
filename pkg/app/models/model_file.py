"""
JSON model file accepted by the CLI and the HTTP API.

Complex numbers are written as [re, im] pairs; exactly one of the three
model representations must be present.
"""

from typing import Annotated, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.utils.enums import ModelKind

ComplexPair = Annotated[List[float], Field(min_length=2, max_length=2)]
ComplexMatrix = List[List[ComplexPair]]
RealTriple = Annotated[List[float], Field(min_length=3, max_length=3)]


def pairs_to_matrix(rows: ComplexMatrix) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _check_square(rows: ComplexMatrix, size: int, what: str) -> ComplexMatrix:
    if len(rows) != size or any(len(row) != size for row in rows):
        raise ValueError(f"{what} must be a {size}x{size} matrix of [re, im] pairs")
    return rows


class ProjectedParams(BaseModel):
    """Six real parameters; a is sorted on ingestion."""
    model_config = ConfigDict(extra="forbid")

    a: RealTriple
    b: RealTriple


class ModelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lindblad_ops: Optional[List[ComplexMatrix]] = Field(None, description="2x2 Lindblad operators")
    gks: Optional[ComplexMatrix] = Field(None, description="3x3 GKS matrix in the Pauli basis")
    projected: Optional[ProjectedParams] = Field(None, description="a and b in the intrinsic frame")
    hamiltonian_drift: Optional[ComplexMatrix] = Field(None, description="discarded with a warning")
    label: Optional[str] = None

    @field_validator("lindblad_ops")
    @classmethod
    def _ops_are_2x2(cls, ops):
        if ops is not None:
            if not ops:
                raise ValueError("lindblad_ops must not be empty")
            for op in ops:
                _check_square(op, 2, "each Lindblad operator")
        return ops

    @field_validator("gks")
    @classmethod
    def _gks_is_3x3(cls, gks):
        return gks if gks is None else _check_square(gks, 3, "gks")

    @field_validator("hamiltonian_drift")
    @classmethod
    def _drift_is_2x2(cls, drift):
        return drift if drift is None else _check_square(drift, 2, "hamiltonian_drift")

    @model_validator(mode="after")
    def _exactly_one_representation(self):
        present = [kind.value for kind in ModelKind if getattr(self, kind.value) is not None]
        if len(present) != 1:
            raise ValueError(
                f"exactly one of lindblad_ops, gks, projected is required, got {present or 'none'}"
            )
        return self

    @property
    def kind(self) -> ModelKind:
        return next(kind for kind in ModelKind if getattr(self, kind.value) is not None)
