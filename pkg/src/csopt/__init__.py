"""Complex-step differentiation and stochastic Newton-Krylov training."""

from . import csdd, csfd, datasets, multicomplex, newton_krylov, objectives, tensor_net
from .errors import DataFormatError, DomainError, EvaluationError, NumericError

__all__ = [
    "csdd",
    "csfd",
    "datasets",
    "multicomplex",
    "newton_krylov",
    "objectives",
    "tensor_net",
    "DataFormatError",
    "DomainError",
    "EvaluationError",
    "NumericError",
]
