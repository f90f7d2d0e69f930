"""
Analysis API

Runs the projection, envelope, trap and purifiability workflows on model
files posted as JSON (same format as the CLI model file).
"""

from typing import Any, Dict, List, Optional
import logging

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.models.model_file import ModelFile
from app.pipelines.lindblad.runner import LindbladPipeline
from app.services.model_service import LoadedModel, ModelService
from app.utils.errors import (
    InfeasibleSteeringError,
    InvalidModelError,
    LindbladControlError,
    ModelFileError,
)

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/analysis", tags=["Analysis"])

MAX_API_GRID = 10_000


# ============================================================================
# Request/Response Models
# ============================================================================

class EnvelopeRequest(BaseModel):
    """Model plus grid options for the envelope endpoint."""
    model: ModelFile
    grid: int = Field(1000, ge=2, le=MAX_API_GRID, description="Grid size N (r = i/N)")
    include_curve: bool = Field(False, description="Return the sampled curves as well")


class EnvelopeResponse(BaseModel):
    summary: Dict[str, Any]
    r: Optional[List[float]] = None
    f_max: Optional[List[float]] = None
    f_min: Optional[List[float]] = None


# ============================================================================
# Helpers
# ============================================================================

def _load(model: ModelFile) -> LoadedModel:
    try:
        return ModelService.build(model)
    except LindbladControlError as e:
        raise _http_error(e)


def _http_error(e: LindbladControlError) -> HTTPException:
    if isinstance(e, (InvalidModelError, ModelFileError)):
        status = 400
    elif isinstance(e, InfeasibleSteeringError):
        status = 422
    else:
        status = 500
    logger.error(f"Analysis request failed ({status}): {type(e).__name__}: {e}")
    return HTTPException(status_code=status, detail=f"{type(e).__name__}: {e}")


# ============================================================================
# Endpoints
# ============================================================================

@router.post("/project")
async def project(model: ModelFile):
    """Six-parameter projected system with validity flags."""
    return LindbladPipeline.project(_load(model))


@router.post("/trap")
async def trap(model: ModelFile):
    """Trap radius r_T."""
    try:
        return LindbladPipeline.trap(_load(model))
    except LindbladControlError as e:
        raise _http_error(e)


@router.post("/envelope", response_model=EnvelopeResponse)
async def envelope(request: EnvelopeRequest):
    """Envelope summary, optionally with the curves."""
    try:
        curve, summary = LindbladPipeline.envelope(_load(request.model), grid_size=request.grid)
    except LindbladControlError as e:
        raise _http_error(e)
    if not request.include_curve:
        return EnvelopeResponse(summary=summary)
    return EnvelopeResponse(
        summary=summary,
        r=curve.r_grid.tolist(),
        f_max=curve.f_max.tolist(),
        f_min=curve.f_min.tolist(),
    )


@router.post("/classify")
async def classify(model: ModelFile):
    """Purifiability verdict; the model must list its Lindblad operators."""
    try:
        return LindbladPipeline.classify(_load(model))
    except LindbladControlError as e:
        raise _http_error(e)
