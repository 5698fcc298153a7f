"""Domain balancing and single-domain mini-batch streams."""
from __future__ import annotations

import numpy as np

from .types import DomainDataset, Window


def upsample_domains(train_sets: list[DomainDataset], seed: int) -> list[DomainDataset]:
    """Equalize example counts by sampling smaller sets with replacement.

    Every original example is retained; the extra examples are uniform draws
    (with replacement), so counts match exactly for any size ratio. Sampling
    happens at the example level, before windowing.
    """
    if not train_sets:
        raise ValueError("no datasets to upsample")
    for ds in train_sets:
        if not ds.examples:
            raise ValueError(f"dataset {ds.name!r} is empty")
    target = max(len(ds.examples) for ds in train_sets)
    rng = np.random.default_rng(seed)
    out: list[DomainDataset] = []
    for ds in train_sets:
        deficit = target - len(ds.examples)
        if deficit == 0:
            out.append(ds)
            continue
        picks = rng.integers(0, len(ds.examples), size=deficit)
        extra = [ds.examples[i] for i in picks]
        out.append(
            DomainDataset(name=ds.name, split=ds.split, examples=ds.examples + extra)
        )
    return out


def single_domain_batches(
    train_sets: list[DomainDataset], batch_size: int, seed: int
) -> list[tuple[str, list[Window]]]:
    """One epoch of shuffled mini-batches, each drawn from a single domain.

    Every window appears exactly once per epoch; the final batch of each
    domain may be short. Identical seeds yield identical batch sequences.
    """
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    rng = np.random.default_rng(seed)
    batches: list[tuple[str, list[Window]]] = []
    for ds in train_sets:
        order = rng.permutation(len(ds.windows))
        for lo in range(0, len(order), batch_size):
            chunk = [ds.windows[i] for i in order[lo : lo + batch_size]]
            if chunk:
                batches.append((ds.name, chunk))
    rng.shuffle(batches)
    return batches


def domain_parallel_batches(
    train_sets: list[DomainDataset], batch_size: int, seed: int
) -> list[dict[str, list[Window]]]:
    """One epoch of steps, each holding one same-index batch per domain.

    Used by meta-learning, which needs every domain represented at each
    step. Steps are truncated to the shortest domain's batch count, so call
    this on balanced (upsampled) datasets to cover each domain fully.
    """
    per_domain = {
        ds.name: [b for _, b in single_domain_batches([ds], batch_size, seed + i)]
        for i, ds in enumerate(train_sets)
    }
    n_steps = min(len(b) for b in per_domain.values())
    return [
        {name: batches[i] for name, batches in per_domain.items()}
        for i in range(n_steps)
    ]
