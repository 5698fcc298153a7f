from .batching import domain_parallel_batches, single_domain_batches, upsample_domains
from .mrqa import load_mrqa_jsonl, save_mrqa_jsonl
from .tokenizer import WordTokenizer, split_tokens
from .types import DomainDataset, LeaveOneOutPlan, RCExample, Window, leave_one_out_splits
from .windows import (
    load_window_cache,
    make_windows,
    save_window_cache,
    window_cache_meta,
)

__all__ = [
    "DomainDataset",
    "LeaveOneOutPlan",
    "RCExample",
    "Window",
    "WordTokenizer",
    "domain_parallel_batches",
    "leave_one_out_splits",
    "load_mrqa_jsonl",
    "load_window_cache",
    "make_windows",
    "save_mrqa_jsonl",
    "save_window_cache",
    "single_domain_batches",
    "split_tokens",
    "upsample_domains",
    "window_cache_meta",
]
