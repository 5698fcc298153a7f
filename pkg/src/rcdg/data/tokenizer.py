"""Word-level tokenizer with a corpus-built vocabulary.

Lowercased whitespace+punctuation splitting with a fixed vocabulary is enough
at the scale this package targets; anything implementing the same small
surface (``tokenize_with_offsets``, ``encode``, the special ids and
``tokenizer_id``) can be injected in its place.
"""
from __future__ import annotations

import hashlib
import json
import re
from collections import Counter
from collections.abc import Iterable
from pathlib import Path

TOKEN_RE = re.compile(r"\w+|[^\w\s]")

PAD_TOKEN = "[PAD]"
UNK_TOKEN = "[UNK]"
SEP_TOKEN = "[SEP]"
SPECIAL_TOKENS = (PAD_TOKEN, UNK_TOKEN, SEP_TOKEN)


def split_tokens(text: str) -> list[str]:
    """Lowercased word/punctuation tokens of ``text``."""
    return [m.group(0).lower() for m in TOKEN_RE.finditer(text)]


def split_tokens_with_offsets(text: str) -> tuple[list[str], list[tuple[int, int]]]:
    tokens, offsets = [], []
    for m in TOKEN_RE.finditer(text):
        tokens.append(m.group(0).lower())
        offsets.append((m.start(), m.end()))
    return tokens, offsets


class WordTokenizer:
    def __init__(self, vocab: dict[str, int]):
        for i, tok in enumerate(SPECIAL_TOKENS):
            if vocab.get(tok) != i:
                raise ValueError(f"vocabulary must map {tok!r} to id {i}")
        self.vocab = dict(vocab)

    @classmethod
    def fit(
        cls,
        texts: Iterable[str],
        max_vocab: int = 50_000,
        min_freq: int = 1,
    ) -> "WordTokenizer":
        """Build a vocabulary from a text corpus (typically all training
        questions and passages)."""
        counts: Counter[str] = Counter()
        for text in texts:
            counts.update(split_tokens(text))
        vocab = {tok: i for i, tok in enumerate(SPECIAL_TOKENS)}
        # frequency then lexicographic order keeps the mapping reproducible
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        for tok, freq in ranked:
            if freq < min_freq or len(vocab) >= max_vocab:
                break
            vocab[tok] = len(vocab)
        return cls(vocab)

    @property
    def pad_id(self) -> int:
        return self.vocab[PAD_TOKEN]

    @property
    def unk_id(self) -> int:
        return self.vocab[UNK_TOKEN]

    @property
    def sep_id(self) -> int:
        return self.vocab[SEP_TOKEN]

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    @property
    def tokenizer_id(self) -> str:
        """Stable content hash identifying this tokenizer configuration."""
        blob = json.dumps(self.vocab, sort_keys=True).encode()
        return "wt1-" + hashlib.sha256(blob).hexdigest()[:12]

    def tokenize_with_offsets(self, text: str) -> tuple[list[str], list[tuple[int, int]]]:
        return split_tokens_with_offsets(text)

    def encode(self, tokens: list[str]) -> list[int]:
        unk = self.unk_id
        return [self.vocab.get(t, unk) for t in tokens]

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.vocab, sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "WordTokenizer":
        return cls(json.loads(Path(path).read_text()))
