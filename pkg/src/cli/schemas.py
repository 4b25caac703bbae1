"""
JSON documents for states and channels
"""

import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from errors import DimensionMismatchError, DocumentError
from gaussian_channels import GaussianChannel
from gaussian_states import GaussianState
from symplectic import DEFAULT_TOL, max_residual

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


def round_float(x: float) -> float:
    """12 significant digits, no negative zero"""
    value = float(f"{float(x):.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if value == 0.0 else value


def to_list(a: Union[np.ndarray, Sequence]) -> list:
    """Nested lists of rounded floats"""
    a = np.asarray(a, dtype=float)
    if a.ndim == 0:
        return round_float(a)
    return [to_list(row) for row in a] if a.ndim > 1 else [round_float(v) for v in a]


def _require_shape(name: str, value: list, rows: int, cols: int = None) -> None:
    array = np.asarray(value, dtype=float)
    expected = (rows,) if cols is None else (rows, cols)
    if array.shape != expected:
        raise ValueError(f"{name} must have shape {expected}, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} has non-finite entries")


class StateDocument(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    s: int
    l: List[float]
    alpha: List[List[float]]

    @model_validator(mode='after')
    def check_shapes(self):
        if self.s < 1:
            raise ValueError("s must be positive")
        _require_shape('l', self.l, 2 * self.s)
        _require_shape('alpha', self.alpha, 2 * self.s, 2 * self.s)
        return self


class ChannelDocument(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    s_A: int
    s_B: int
    K: List[List[float]]
    l: List[float]
    mu: List[List[float]]

    @model_validator(mode='after')
    def check_shapes(self):
        if self.s_A < 1 or self.s_B < 1:
            raise ValueError("s_A and s_B must be positive")
        _require_shape('K', self.K, 2 * self.s_A, 2 * self.s_B)
        _require_shape('l', self.l, 2 * self.s_B)
        _require_shape('mu', self.mu, 2 * self.s_B, 2 * self.s_B)
        return self


def state_to_document(state: GaussianState) -> StateDocument:
    return StateDocument(s=state.s, l=to_list(state.l), alpha=to_list(state.alpha))


def state_from_document(doc: StateDocument, tol: float = DEFAULT_TOL) -> GaussianState:
    alpha = np.asarray(doc.alpha, dtype=float)
    if max_residual(alpha, alpha.T) > tol * max(1.0, float(np.max(np.abs(alpha)))):
        raise DocumentError("alpha is not symmetric")
    return GaussianState(s=doc.s, l=doc.l, alpha=alpha)


def channel_to_document(ch: GaussianChannel) -> ChannelDocument:
    return ChannelDocument(s_A=ch.s_A, s_B=ch.s_B, K=to_list(ch.K), l=to_list(ch.l), mu=to_list(ch.mu))


def channel_from_document(doc: ChannelDocument, tol: float = DEFAULT_TOL) -> GaussianChannel:
    mu = np.asarray(doc.mu, dtype=float)
    if max_residual(mu, mu.T) > tol * max(1.0, float(np.max(np.abs(mu)))):
        raise DocumentError("mu is not symmetric")
    return GaussianChannel(s_A=doc.s_A, s_B=doc.s_B, K=doc.K, l=doc.l, mu=mu)


def _read(path: Union[str, Path], model):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise DocumentError(f"cannot read file: {e.strerror or e}", source=str(path))
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'document'}: {err['msg']}" for err in e.errors()
        )
        raise DocumentError(problems, source=str(path))


def load_channel(path: Union[str, Path], tol: float = DEFAULT_TOL) -> GaussianChannel:
    doc = _read(path, ChannelDocument)
    try:
        return channel_from_document(doc, tol)
    except DimensionMismatchError as e:
        raise DocumentError(str(e), source=str(path))


def load_state(path: Union[str, Path], tol: float = DEFAULT_TOL) -> GaussianState:
    doc = _read(path, StateDocument)
    try:
        return state_from_document(doc, tol)
    except DimensionMismatchError as e:
        raise DocumentError(str(e), source=str(path))


def dump_document(doc: BaseModel) -> str:
    return doc.model_dump_json(indent=2)


def write_document(doc: BaseModel, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_document(doc) + "\n")
    logger.info(f"Wrote {type(doc).__name__} to {path}")

