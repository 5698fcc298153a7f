"""Encoder hyperparameter configuration."""
from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class EncoderConfig:
    vocab_size: int
    num_layers: int = 2
    hidden_dim: int = 64
    num_heads: int = 2
    ffn_dim: int = 128
    max_len: int = 64
    dropout: float = 0.1

    def __post_init__(self):
        if self.num_layers < 1:
            raise ValueError("num_layers must be >= 1")
        if self.hidden_dim % self.num_heads != 0:
            raise ValueError("hidden_dim must be divisible by num_heads")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must be in [0, 1)")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EncoderConfig":
        return cls(**d)


def student_config(vocab_size: int, max_len: int = 64, dropout: float = 0.1) -> EncoderConfig:
    """Default small model trained by every strategy."""
    return EncoderConfig(
        vocab_size=vocab_size, num_layers=2, hidden_dim=64, num_heads=2,
        ffn_dim=128, max_len=max_len, dropout=dropout,
    )


def teacher_config(vocab_size: int, max_len: int = 64, dropout: float = 0.1) -> EncoderConfig:
    """Default larger model used as the distillation teacher."""
    return EncoderConfig(
        vocab_size=vocab_size, num_layers=4, hidden_dim=128, num_heads=4,
        ffn_dim=256, max_len=max_len, dropout=dropout,
    )
