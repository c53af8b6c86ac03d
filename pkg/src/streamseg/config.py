from __future__ import annotations

from dataclasses import dataclass

from .memory import f32

POW_MODES = ("float", "double")


@dataclass(frozen=True)
class EngineConfig:
    """Tuned parameters of a segmentation session.

    ``threshold_prob`` is the validity cutoff, usually K divided by the
    letter count of the text being learned. ``pow_mode`` picks how the
    word-score power is evaluated in the second-level pass: ``"float"``
    multiplies in single precision by repeated squaring, ``"double"``
    raises in double precision and rounds the product back.
    """

    threshold_prob: float
    bias: float = 4.567
    window_capacity: int = 32
    min_columns: int = 16
    gate_score: float = 0.50
    flush_sentinel: str = "x"
    second_level: bool = True
    pow_mode: str = "float"

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold_prob < 1.0:
            raise ValueError("threshold_prob must lie in (0, 1)")
        if self.window_capacity < 2:
            raise ValueError("window_capacity must be at least 2")
        if not 0 <= self.min_columns <= self.window_capacity // 2:
            raise ValueError("min_columns must be in [0, window_capacity/2]")
        if not 0.0 < self.gate_score < 1.0:
            raise ValueError("gate_score must lie in (0, 1)")
        if len(self.flush_sentinel) != 1 or not "a" <= self.flush_sentinel <= "z":
            raise ValueError("flush_sentinel must be a letter a-z")
        if self.pow_mode not in POW_MODES:
            raise ValueError(f"pow_mode must be one of {POW_MODES}")

    @classmethod
    def from_k(cls, k: float, letter_count: int, **overrides) -> EngineConfig:
        if k <= 0:
            raise ValueError("K must be positive")
        if letter_count <= 0:
            raise ValueError("letter count must be positive")
        return cls(threshold_prob=k / letter_count, **overrides)

    @property
    def threshold_f32(self) -> float:
        return f32(self.threshold_prob)

    @property
    def bias_f32(self) -> float:
        return f32(self.bias)
