"""Reading and writing MRQA-style JSON-lines dataset files."""
from __future__ import annotations

import gzip
import json
import logging
from pathlib import Path

from .types import DomainDataset, RCExample

logger = logging.getLogger(__name__)

SPLITS = ("train", "dev", "test")

GZIP_MAGIC = b"\x1f\x8b"


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def _open_maybe_gzip(path: Path):
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == GZIP_MAGIC:
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, "rt", encoding="utf-8")


def load_mrqa_jsonl(
    path: str | Path,
    split: str,
    *,
    domain: str | None = None,
    allow_unanswered: bool = False,
) -> DomainDataset:
    """Load an (optionally gzipped) MRQA JSON-lines file into a DomainDataset.

    The first line may be a header record (``{"header": ...}``); each other
    line holds one context with its ``qas``. Detected-answer char spans (MRQA
    uses inclusive ends) become half-open ``answer_char_spans``. When a
    detected answer's text disagrees with the substring at its offsets, the
    offsets win and a warning is logged.

    ``allow_unanswered`` admits records with an empty ``answers`` list, as
    produced for synthetic question sets.
    """
    if split not in SPLITS:
        raise ValueError(f"unknown split {split!r}; expected one of {SPLITS}")
    path = Path(path)
    name = domain
    examples: list[RCExample] = []
    seen_qids: set[str] = set()
    with _open_maybe_gzip(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: malformed JSON on line {lineno}: {exc}") from exc
            if "header" in record and "context" not in record:
                header = record["header"]
                if name is None and isinstance(header, dict):
                    name = header.get("dataset")
                continue
            if "context" not in record or "qas" not in record:
                raise ValueError(
                    f"{path}: line {lineno} lacks required fields 'context'/'qas'"
                )
            context = record["context"]
            for qa in record["qas"]:
                qid = str(qa.get("qid") or qa.get("id") or "")
                if not qid:
                    raise ValueError(f"{path}: line {lineno}: qa record without qid")
                if qid in seen_qids:
                    raise ValueError(f"{path}: duplicate qid {qid!r}")
                seen_qids.add(qid)
                answers = [str(a) for a in qa.get("answers", [])]
                spans = _detected_spans(path, qid, context, qa.get("detected_answers", []))
                if not answers and not allow_unanswered:
                    raise ValueError(
                        f"{path}: qid {qid!r} has no answers on labeled split {split!r}"
                    )
                examples.append(
                    RCExample(
                        qid=qid,
                        question=str(qa["question"]),
                        passage=context,
                        domain="",  # filled once the dataset name is final
                        answers=answers,
                        answer_char_spans=spans,
                    )
                )
    if name is None:
        name = path.name.split(".")[0]
    for ex in examples:
        ex.domain = name
    return DomainDataset(name=name, split=split, examples=examples)


def _detected_spans(path, qid, context, detected) -> list[tuple[int, int]]:
    spans: list[tuple[int, int]] = []
    for det in detected:
        text = str(det.get("text", ""))
        for char_span in det.get("char_spans", []):
            start, end_incl = int(char_span[0]), int(char_span[1])
            if not (0 <= start <= end_incl < len(context)):
                raise ValueError(
                    f"{path}: qid {qid!r} char span {char_span} outside passage"
                )
            substring = context[start : end_incl + 1]
            if _normalize_ws(substring) != _normalize_ws(text):
                logger.warning(
                    "qid %s: detected answer text %r mismatches passage substring %r; "
                    "keeping the character offsets",
                    qid,
                    text,
                    substring,
                )
            spans.append((start, end_incl + 1))
    return spans


def save_mrqa_jsonl(dataset: DomainDataset, path: str | Path) -> None:
    """Write a DomainDataset back out in the MRQA JSON-lines layout."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    opener = gzip.open if path.suffix == ".gz" else open
    kwargs = {"mtime": 0} if path.suffix == ".gz" else {}
    with opener(path, "wt", encoding="utf-8", **kwargs) as fh:
        fh.write(json.dumps({"header": {"dataset": dataset.name, "split": dataset.split}}) + "\n")
        for ex in dataset.examples:
            record = {
                "context": ex.passage,
                "qas": [
                    {
                        "qid": ex.qid,
                        "question": ex.question,
                        "answers": ex.answers,
                        "detected_answers": [
                            {"text": ex.passage[s:e], "char_spans": [[s, e - 1]]}
                            for s, e in ex.answer_char_spans
                        ],
                    }
                ],
            }
            fh.write(json.dumps(record) + "\n")
