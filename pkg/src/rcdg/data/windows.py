"""Sliding-window tokenization of passages and the on-disk window cache."""
from __future__ import annotations

import gzip
import json
from pathlib import Path

from .types import DomainDataset, RCExample, Window

CACHE_FORMAT = "rcdg-windows"
CACHE_VERSION = 1


def make_windows(
    dataset: DomainDataset,
    tokenizer,
    max_len: int,
    stride: int | None = None,
    keep_unanswered: bool = False,
) -> DomainDataset:
    """Tokenize every example into fixed-length question+passage windows.

    Layout per window: question tokens, separator, passage tokens, separator,
    padding. With ``keep_unanswered=False`` (training) only windows that fully
    contain a gold answer are emitted, each labeled with that answer's token
    span; dev/test windowing passes ``keep_unanswered=True`` and keeps every
    window, labeling those where an answer happens to fit.
    """
    stride = max_len // 2 if stride is None else stride
    if stride < 1 or stride >= max_len:
        raise ValueError(f"stride must be in [1, max_len); got {stride}")
    windows: list[Window] = []
    for ex in dataset.examples:
        windows.extend(
            _example_windows(ex, tokenizer, max_len, stride, keep_unanswered)
        )
    return DomainDataset(
        name=dataset.name,
        split=dataset.split,
        examples=dataset.examples,
        windows=windows,
    )


def _example_windows(
    ex: RCExample, tokenizer, max_len: int, stride: int, keep_unanswered: bool
) -> list[Window]:
    q_tokens, _ = tokenizer.tokenize_with_offsets(ex.question)
    q_ids = tokenizer.encode(q_tokens)
    # room for at least one passage token next to the two separators
    budget = max_len - len(q_ids) - 2
    if budget < 1:
        raise ValueError(
            f"question of qid {ex.qid!r} leaves no room in max_len={max_len} "
            f"({len(q_ids)} question tokens + 2 separators)"
        )
    p_tokens, p_offsets = tokenizer.tokenize_with_offsets(ex.passage)
    p_ids = tokenizer.encode(p_tokens)
    answer_token_spans = _answer_token_spans(ex, p_offsets)

    windows: list[Window] = []
    start = 0
    while True:
        stop = min(start + budget, len(p_ids))
        window = _build_window(
            ex, tokenizer, max_len, q_ids, p_ids, p_offsets,
            answer_token_spans, start, stop,
        )
        if window.labeled or keep_unanswered:
            windows.append(window)
        if stop >= len(p_ids):
            break
        start += stride
    return windows


def _answer_token_spans(ex: RCExample, p_offsets) -> list[tuple[int, int]]:
    """Inclusive token spans of each gold answer occurrence in the passage."""
    spans = []
    for char_start, char_end in ex.answer_char_spans:
        covered = [
            i
            for i, (ts, te) in enumerate(p_offsets)
            if ts < char_end and te > char_start
        ]
        if covered:
            spans.append((covered[0], covered[-1]))
    return spans


def _build_window(
    ex, tokenizer, max_len, q_ids, p_ids, p_offsets, answer_token_spans, start, stop
) -> Window:
    p_slice = p_ids[start:stop]
    n_tokens = len(q_ids) + len(p_slice) + 2
    token_ids = (
        q_ids
        + [tokenizer.sep_id]
        + p_slice
        + [tokenizer.sep_id]
        + [tokenizer.pad_id] * (max_len - n_tokens)
    )
    passage_base = len(q_ids) + 1
    start_label = end_label = None
    for ts, te in answer_token_spans:
        if start <= ts and te < stop:
            start_label = passage_base + (ts - start)
            end_label = passage_base + (te - start)
            break
    return Window(
        window_id=f"{ex.qid}@{start}",
        qid=ex.qid,
        domain=ex.domain,
        token_ids=token_ids,
        n_tokens=n_tokens,
        question_span=(0, len(q_ids)),
        passage_span=(passage_base, passage_base + len(p_slice)),
        passage_char_offsets=[p_offsets[i] for i in range(start, stop)],
        start_label=start_label,
        end_label=end_label,
    )


def window_cache_meta(tokenizer_id: str, max_len: int, stride: int, keep_unanswered: bool) -> dict:
    return {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "tokenizer_id": tokenizer_id,
        "max_len": max_len,
        "stride": stride,
        "keep_unanswered": keep_unanswered,
    }


def save_window_cache(dataset: DomainDataset, path: str | Path, meta: dict) -> None:
    """Write a windowed dataset as a self-describing gzipped JSONL container."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = dict(meta)
    header.update(
        {
            "dataset": dataset.name,
            "split": dataset.split,
            "n_examples": len(dataset.examples),
            "n_windows": len(dataset.windows),
        }
    )
    with gzip.open(path, "wt", encoding="utf-8", mtime=0) as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for ex in dataset.examples:
            fh.write(json.dumps({"kind": "example", **_example_record(ex)}) + "\n")
        for w in dataset.windows:
            fh.write(json.dumps({"kind": "window", **_window_record(w)}) + "\n")


def load_window_cache(path: str | Path) -> tuple[DomainDataset, dict]:
    path = Path(path)
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("format") != CACHE_FORMAT:
            raise ValueError(f"{path}: not a window cache file")
        if header.get("version") != CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version {header.get('version')}")
        examples, windows = [], []
        for line in fh:
            record = json.loads(line)
            kind = record.pop("kind")
            if kind == "example":
                record["answer_char_spans"] = [tuple(s) for s in record["answer_char_spans"]]
                examples.append(RCExample(**record))
            else:
                record["question_span"] = tuple(record["question_span"])
                record["passage_span"] = tuple(record["passage_span"])
                record["passage_char_offsets"] = [
                    tuple(o) for o in record["passage_char_offsets"]
                ]
                windows.append(Window(**record))
    dataset = DomainDataset(
        name=header["dataset"], split=header["split"], examples=examples, windows=windows
    )
    return dataset, header


def _example_record(ex: RCExample) -> dict:
    return {
        "qid": ex.qid,
        "question": ex.question,
        "passage": ex.passage,
        "domain": ex.domain,
        "answers": ex.answers,
        "answer_char_spans": [list(s) for s in ex.answer_char_spans],
    }


def _window_record(w: Window) -> dict:
    return {
        "window_id": w.window_id,
        "qid": w.qid,
        "domain": w.domain,
        "token_ids": w.token_ids,
        "n_tokens": w.n_tokens,
        "question_span": list(w.question_span),
        "passage_span": list(w.passage_span),
        "passage_char_offsets": [list(o) for o in w.passage_char_offsets],
        "start_label": w.start_label,
        "end_label": w.end_label,
    }
