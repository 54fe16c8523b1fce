"""Snippet extraction, keyword-group assignment, and PII scrubbing.

All three operations are pure string functions with deterministic output, so
downstream artifacts (corpus files, feature matrices) are reproducible
byte-for-byte.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from newsbench.errors import EmptyInputError
from newsbench.ingest.records import KeywordGroup

# A period never ends a sentence when it closes one of these.
PROTECTED_ABBREVIATIONS = ("Mr.", "Mrs.", "Dr.", "U.S.", "St.", "vs.")

# PII patterns, applied in this order. Replacements contain no '@', '://' or a
# token-initial 'www.', so one pass reaches a fixed point (scrubbing is
# idempotent). The same compiled patterns are the reference for "no residual
# PII" checks.
URL_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*://\S+|(?:^|(?<=\s))www\.\S+", re.IGNORECASE)
EMAIL_PATTERN = re.compile(r"\S+@\S+\.\S+")
USERNAME_PATTERN = re.compile(r"@\w+")

URL_PLACEHOLDER = "[URL]"
EMAIL_PLACEHOLDER = "[EMAIL]"
USERNAME_PLACEHOLDER = "[USER]"


def _is_protected(text: str, dot_index: int) -> bool:
    """True when the word ending at ``dot_index`` is a protected abbreviation."""
    end = dot_index + 1
    for abbr in PROTECTED_ABBREVIATIONS:
        start = end - len(abbr)
        if start < 0 or text[start:end] != abbr:
            continue
        if start == 0 or not text[start - 1].isalnum():
            return True
    return False


def split_sentences(text: str) -> list[str]:
    """Split text into sentences.

    A boundary is '.', '!' or '?' followed by whitespace and an uppercase
    letter, or by end of text. Protected abbreviations never end a sentence.
    Trailing text without a terminator counts as a final sentence.
    """
    sentences: list[str] = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        ch = text[i]
        if ch in ".!?":
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            at_end = j >= n
            boundary = at_end or (j > i + 1 and text[j].isupper())
            if boundary and ch == "." and _is_protected(text, i):
                boundary = False
            if boundary:
                sentence = text[start : i + 1].strip()
                if sentence:
                    sentences.append(sentence)
                start = j
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def extract_snippet(body_text: str, max_sentences: int = 5) -> str:
    """Return the first ``max_sentences`` sentences joined by single spaces.

    Raises EmptyInputError on empty or whitespace-only input.
    """
    if max_sentences < 1:
        raise ValueError(f"max_sentences must be >= 1, got {max_sentences}")
    if not body_text or not body_text.strip():
        raise EmptyInputError("body text is empty")
    return " ".join(split_sentences(body_text)[:max_sentences])


def count_keyword_hits(text: str, keywords: Sequence[str]) -> int:
    """Count keyword-phrase occurrences, case-insensitive.

    A phrase matches where it starts at a word boundary; suffix continuation
    is allowed so that 'vote' also counts 'votes'.
    """
    total = 0
    for keyword in keywords:
        pattern = r"\b" + re.escape(keyword)
        total += len(re.findall(pattern, text, re.IGNORECASE))
    return total


def assign_keyword_group(text: str, groups: Sequence[KeywordGroup]) -> Optional[str]:
    """Return the id of the group with the most keyword hits, or None.

    Ties go to the earlier group in configuration order; zero hits overall
    yields None.
    """
    best_id: Optional[str] = None
    best_count = 0
    for group in groups:
        count = count_keyword_hits(text, group.keywords)
        if count > best_count:
            best_id = group.id
            best_count = count
    return best_id


def scrub_pii(text: str) -> str:
    """Replace URLs, emails, and usernames with fixed placeholder tokens.

    Pass order gives URLs precedence over emails over usernames. The
    placeholders cannot re-match any pattern, so the function is idempotent.
    """
    text = URL_PATTERN.sub(URL_PLACEHOLDER, text)
    text = EMAIL_PATTERN.sub(EMAIL_PLACEHOLDER, text)
    return USERNAME_PATTERN.sub(USERNAME_PLACEHOLDER, text)


def contains_pii(text: str) -> bool:
    """True when any scrub pattern still matches ``text``."""
    return bool(
        URL_PATTERN.search(text)
        or EMAIL_PATTERN.search(text)
        or USERNAME_PATTERN.search(text)
    )
