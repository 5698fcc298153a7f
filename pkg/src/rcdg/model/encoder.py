"""A small transformer encoder with span-prediction heads."""
from __future__ import annotations

import math

import torch
from torch import Tensor, nn

from .config import EncoderConfig


class SelfAttention(nn.Module):
    def __init__(self, hidden_dim: int, num_heads: int, dropout: float):
        super().__init__()
        self.num_heads = num_heads
        self.head_dim = hidden_dim // num_heads
        self.query = nn.Linear(hidden_dim, hidden_dim)
        self.key = nn.Linear(hidden_dim, hidden_dim)
        self.value = nn.Linear(hidden_dim, hidden_dim)
        self.out = nn.Linear(hidden_dim, hidden_dim)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x: Tensor, attention_mask: Tensor) -> Tensor:
        b, t, d = x.shape
        shape = (b, t, self.num_heads, self.head_dim)
        q = self.query(x).view(shape).transpose(1, 2)
        k = self.key(x).view(shape).transpose(1, 2)
        v = self.value(x).view(shape).transpose(1, 2)
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.head_dim)
        # keys at padding positions are removed from every query's context
        bias = torch.where(attention_mask[:, None, None, :], 0.0, float("-inf"))
        attn = torch.softmax(scores + bias.to(scores.dtype), dim=-1)
        attn = self.dropout(attn)
        ctx = (attn @ v).transpose(1, 2).reshape(b, t, d)
        return self.out(ctx)


class TransformerBlock(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.attention = SelfAttention(cfg.hidden_dim, cfg.num_heads, cfg.dropout)
        self.attn_norm = nn.LayerNorm(cfg.hidden_dim)
        self.ffn = nn.Sequential(
            nn.Linear(cfg.hidden_dim, cfg.ffn_dim),
            nn.GELU(),
            nn.Linear(cfg.ffn_dim, cfg.hidden_dim),
        )
        self.ffn_norm = nn.LayerNorm(cfg.hidden_dim)
        self.dropout = nn.Dropout(cfg.dropout)

    def forward(self, x: Tensor, attention_mask: Tensor) -> Tensor:
        x = self.attn_norm(x + self.dropout(self.attention(x, attention_mask)))
        x = self.ffn_norm(x + self.dropout(self.ffn(x)))
        return x


class Embeddings(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.word = nn.Embedding(cfg.vocab_size, cfg.hidden_dim)
        self.position = nn.Embedding(cfg.max_len, cfg.hidden_dim)
        self.norm = nn.LayerNorm(cfg.hidden_dim)
        self.dropout = nn.Dropout(cfg.dropout)

    def forward(self, input_ids: Tensor) -> Tensor:
        positions = torch.arange(input_ids.shape[1], device=input_ids.device)
        x = self.word(input_ids) + self.position(positions)[None]
        return self.dropout(self.norm(x))


class SpanHead(nn.Module):
    """Per-token start and end scores."""

    def __init__(self, hidden_dim: int):
        super().__init__()
        self.start = nn.Linear(hidden_dim, 1)
        self.end = nn.Linear(hidden_dim, 1)

    def forward(self, hidden: Tensor) -> tuple[Tensor, Tensor]:
        return self.start(hidden).squeeze(-1), self.end(hidden).squeeze(-1)


class SpanModel(nn.Module):
    """Transformer encoder + span heads, with an optional domain classifier.

    The domain head is registered last so that models with and without it
    share identical base-parameter initialization for a given seed.
    """

    def __init__(self, config: EncoderConfig, n_domains: int | None = None):
        super().__init__()
        self.config = config
        self.embeddings = Embeddings(config)
        self.blocks = nn.ModuleList(TransformerBlock(config) for _ in range(config.num_layers))
        self.span_head = SpanHead(config.hidden_dim)
        self.apply(_init_weights)
        self.domain_head = None
        if n_domains is not None:
            self.domain_head = nn.Linear(config.hidden_dim, n_domains)
            self.domain_head.apply(_init_weights)

    def forward(
        self, input_ids: Tensor, attention_mask: Tensor
    ) -> tuple[Tensor, Tensor, Tensor]:
        """Return (start_logits, end_logits, hidden_states).

        Logits are produced at every position, padding included; consumers
        mask them (losses and decoding never look at padding or, for
        decoding, outside the passage span).
        """
        x = self.embeddings(input_ids)
        for block in self.blocks:
            x = block(x, attention_mask)
        start_logits, end_logits = self.span_head(x)
        return start_logits, end_logits, x


def _init_weights(module: nn.Module) -> None:
    if isinstance(module, (nn.Linear, nn.Embedding)):
        nn.init.normal_(module.weight, mean=0.0, std=0.02)
        if isinstance(module, nn.Linear) and module.bias is not None:
            nn.init.zeros_(module.bias)


def pooled_repr(hidden: Tensor, attention_mask: Tensor) -> Tensor:
    """Mean of hidden states over non-padding positions, per window."""
    mask = attention_mask.to(hidden.dtype)[..., None]
    return (hidden * mask).sum(dim=1) / mask.sum(dim=1)


def build_model(
    config: EncoderConfig, seed: int, n_domains: int | None = None
) -> SpanModel:
    """Construct a SpanModel with seeded initialization."""
    torch.manual_seed(seed)
    return SpanModel(config, n_domains=n_domains)
