from __future__ import annotations

from hypothesis import given, strategies as st

from newsbench.features.tokenizer import tokenize
from newsbench.ingest.text import scrub_pii


def test_basic_tokens():
    assert tokenize("Votes COUNTED, again!") == ["votes", "counted", "again"]


def test_empty():
    assert tokenize("") == []


def test_filters_and_placeholder():
    assert tokenize("a 2024 [URL]") == ["url_tok"]


def test_all_placeholders():
    assert tokenize("[URL] [EMAIL] [USER]") == ["url_tok", "email_tok", "user_tok"]


def test_underscore_splits():
    assert tokenize("foo_bar") == ["foo", "bar"]


def test_mixed_alnum_kept():
    assert tokenize("covid19 2nd 42") == ["covid19", "2nd"]


@given(st.text(max_size=300))
def test_no_pii_fragments_after_scrub(text):
    for token in tokenize(scrub_pii(text)):
        assert "@" not in token
        assert "://" not in token
