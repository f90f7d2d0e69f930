from app.models.quantum import (
    LindbladOp,
    GksModel,
    ProjectedSystem,
    BlochState,
    DensityMatrix,
)

__all__ = ["LindbladOp", "GksModel", "ProjectedSystem", "BlochState", "DensityMatrix"]
