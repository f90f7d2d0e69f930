from enum import Enum

class CandidateBranch(str, Enum):
    """Origin of a stationary point of the radial rate on the sphere"""
    INTERIOR_ROOT = "interior-root"   # root of the secular equation in lambda
    AXIS_BRANCH = "axis-branch"       # lambda pinned to r*a_j on a b_j = 0 axis
    ANALYTIC = "analytic"             # closed form of the axial case
    DEGENERATE = "degenerate"         # every direction is stationary

class TrapMethod(str, Enum):
    """How the trap radius was obtained"""
    ANALYTIC = "analytic"
    BISECTION = "bisection"
    NONE = "none"

class PurifiabilityCategory(str, Enum):
    """Characterizations of purifiable two-level systems"""
    SINGLE_SINGULAR = "single-singular"
    SINGLE_NONSINGULAR_NONORTHOGONAL = "single-nonsingular-nonorthogonal"
    MIXED_SHARED_EIGENVECTOR = "mixed-shared-eigenvector"
    NONSINGULAR_SHARED_EIGENVECTOR = "nonsingular-shared-eigenvector"
    NOT_PURIFIABLE = "not-purifiable"

class ModelKind(str, Enum):
    """Representation a model file was given in"""
    LINDBLAD_OPS = "lindblad_ops"
    GKS = "gks"
    PROJECTED = "projected"
