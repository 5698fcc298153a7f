"""Core record types shared across the data pipeline."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations


@dataclass
class RCExample:
    """One question/passage/answers record.

    ``answer_char_spans`` are half-open ``(start, end)`` character offsets into
    ``passage`` (``passage[start:end]`` is the answer occurrence). Synthetic
    examples carry empty ``answers`` and ``answer_char_spans``.
    """

    qid: str
    question: str
    passage: str
    domain: str
    answers: list[str] = field(default_factory=list)
    answer_char_spans: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class Window:
    """A tokenized sliding-window view of one example's passage.

    ``token_ids`` is padded to a fixed length; ``n_tokens`` is the unpadded
    count. ``question_span`` / ``passage_span`` are half-open token ranges.
    ``start_label`` / ``end_label`` are inclusive token indices of a gold
    answer inside ``passage_span``, or None for unlabeled windows.
    ``passage_char_offsets`` maps each passage-position token back to its
    character range in the original passage text.
    """

    window_id: str
    qid: str
    domain: str
    token_ids: list[int]
    n_tokens: int
    question_span: tuple[int, int]
    passage_span: tuple[int, int]
    passage_char_offsets: list[tuple[int, int]]
    start_label: int | None = None
    end_label: int | None = None

    @property
    def labeled(self) -> bool:
        return self.start_label is not None and self.end_label is not None


@dataclass
class DomainDataset:
    """All examples (and, once windowed, windows) of one dataset split."""

    name: str
    split: str  # train | dev | test
    examples: list[RCExample] = field(default_factory=list)
    windows: list[Window] = field(default_factory=list)

    def example_by_qid(self) -> dict[str, RCExample]:
        return {ex.qid: ex for ex in self.examples}

    def __len__(self) -> int:
        return len(self.examples)


@dataclass(frozen=True)
class LeaveOneOutPlan:
    """All (n-1)-sized source combinations, one per omitted dataset."""

    source_names: tuple[str, ...]
    combos: tuple[tuple[str, ...], ...]

    def combo_id(self, index: int) -> str:
        return f"omit-{self.omitted(index)}"

    def omitted(self, index: int) -> str:
        (name,) = set(self.source_names) - set(self.combos[index])
        return name

    @property
    def combo_ids(self) -> list[str]:
        return [self.combo_id(i) for i in range(len(self.combos))]


def leave_one_out_splits(source_names: list[str]) -> LeaveOneOutPlan:
    """Build the plan of all combinations that omit exactly one source."""
    if len(source_names) < 2:
        raise ValueError("need at least 2 source datasets for leave-one-out")
    if len(set(source_names)) != len(source_names):
        dupes = sorted({n for n in source_names if source_names.count(n) > 1})
        raise ValueError(f"duplicate source names: {dupes}")
    names = tuple(source_names)
    combos = tuple(
        tuple(n for n in names if n != omitted) for omitted in names
    )
    # sanity: identical to enumerating all (n-1)-subsets
    assert {frozenset(c) for c in combos} == {
        frozenset(c) for c in combinations(names, len(names) - 1)
    }
    return LeaveOneOutPlan(source_names=names, combos=combos)
