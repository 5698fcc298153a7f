"""Partitioning model parameters at a transformer-layer boundary."""
from __future__ import annotations

from dataclasses import dataclass

from torch import nn

EMBEDDINGS_GROUP = "embeddings"
SPAN_HEAD_GROUP = "span_head"
DOMAIN_HEAD_GROUP = "domain_head"


def block_group(index: int) -> str:
    """1-based group name of a transformer block."""
    return f"block{index}"


def parameter_groups(model: nn.Module) -> dict[str, list[str]]:
    """Map each named group to its parameter names; every parameter belongs
    to exactly one group."""
    groups: dict[str, list[str]] = {}
    for name, _ in model.named_parameters():
        if name.startswith("embeddings."):
            key = EMBEDDINGS_GROUP
        elif name.startswith("blocks."):
            key = block_group(int(name.split(".")[1]) + 1)
        elif name.startswith("span_head."):
            key = SPAN_HEAD_GROUP
        elif name.startswith("domain_head."):
            key = DOMAIN_HEAD_GROUP
        else:
            raise ValueError(f"parameter {name!r} belongs to no known group")
        groups.setdefault(key, []).append(name)
    return groups


@dataclass(frozen=True)
class ParameterSplit:
    """Lower/upper halves of the parameter groups around layer ``split_layer``.

    Embeddings always travel with the lower side and heads with the upper
    side, so each side is a functional half-network.
    """

    split_layer: int
    lower: tuple[str, ...]
    upper: tuple[str, ...]
    trainable_side: str  # "lower" | "upper"

    @property
    def trainable_groups(self) -> tuple[str, ...]:
        return self.lower if self.trainable_side == "lower" else self.upper

    @property
    def frozen_groups(self) -> tuple[str, ...]:
        return self.upper if self.trainable_side == "lower" else self.lower


def split_parameters(model: nn.Module, k: int, trainable_side: str) -> ParameterSplit:
    """Split groups after block ``k`` (1-based, interior: 1 <= k <= L-1)."""
    num_layers = model.config.num_layers
    if not 1 <= k <= num_layers - 1:
        raise ValueError(f"split layer must be in [1, {num_layers - 1}]; got {k}")
    if trainable_side not in ("lower", "upper"):
        raise ValueError(f"trainable_side must be 'lower' or 'upper'; got {trainable_side!r}")
    groups = parameter_groups(model)
    lower = [EMBEDDINGS_GROUP] + [block_group(i) for i in range(1, k + 1)]
    upper = [block_group(i) for i in range(k + 1, num_layers + 1)] + [SPAN_HEAD_GROUP]
    if DOMAIN_HEAD_GROUP in groups:
        upper.append(DOMAIN_HEAD_GROUP)
    assert set(lower) | set(upper) == set(groups)
    return ParameterSplit(
        split_layer=k, lower=tuple(lower), upper=tuple(upper), trainable_side=trainable_side
    )


def group_of(param_name: str, groups: dict[str, list[str]]) -> str:
    for group, names in groups.items():
        if param_name in names:
            return group
    raise KeyError(param_name)
