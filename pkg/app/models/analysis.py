from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from app.models.quantum import complex_to_pair
from app.utils.enums import PurifiabilityCategory, TrapMethod


@dataclass(frozen=True)
class TrapReport:
    """Zero crossing r_T of f_M; radii below it are fully controllable."""
    r_t: float
    trap_exists: bool
    method: TrapMethod
    residual: float  # |f_M(r_T)|

    def to_dict(self) -> Dict:
        return {
            "r_T": self.r_t,
            "trap_exists": self.trap_exists,
            "method": self.method.value,
            "residual": self.residual,
        }


@dataclass(frozen=True, eq=False)
class PurifiabilityVerdict:
    """Structural purifiability decision with its numeric cross-check."""
    purifiable: bool
    category: PurifiabilityCategory
    shared_eigenvector: Optional[np.ndarray]
    reason: str
    operator_count: int       # after merging scalar multiples
    trap_radius: float        # r_T of the projected system
    cross_check_ok: bool      # structural verdict agrees with r_T == 1

    def to_dict(self) -> Dict:
        vector = None
        if self.shared_eigenvector is not None:
            vector = [complex_to_pair(z) for z in self.shared_eigenvector]
        return {
            "purifiable": self.purifiable,
            "category": self.category.value,
            "shared_eigenvector": vector,
            "reason": self.reason,
            "operator_count": self.operator_count,
            "r_T": self.trap_radius,
            "cross_check_ok": self.cross_check_ok,
        }
