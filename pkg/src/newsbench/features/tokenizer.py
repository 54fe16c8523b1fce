"""Unigram tokenizer shared by vocabulary construction and vectorization."""

from __future__ import annotations

import re

# Scrub placeholders survive tokenization as single stable tokens.
_PLACEHOLDER_TOKENS = {
    "[URL]": "url_tok",
    "[EMAIL]": "email_tok",
    "[USER]": "user_tok",
}
_PLACEHOLDER_RE = re.compile(r"(\[(?:URL|EMAIL|USER)\])")
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)  # alphanumeric runs; underscore splits


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, drop short and all-digit tokens.

    Tokens shorter than 2 characters and pure-digit tokens are dropped. The
    PII placeholders map to url_tok / email_tok / user_tok so they cannot be
    confused with article vocabulary.
    """
    tokens: list[str] = []
    for segment in _PLACEHOLDER_RE.split(text):
        mapped = _PLACEHOLDER_TOKENS.get(segment)
        if mapped is not None:
            tokens.append(mapped)
            continue
        for token in _WORD_RE.findall(segment.lower()):
            if len(token) < 2 or token.isdigit():
                continue
            tokens.append(token)
    return tokens
