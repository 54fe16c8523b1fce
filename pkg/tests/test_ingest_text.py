"""Snippet extraction, keyword assignment, and PII scrubbing."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from newsbench.errors import EmptyInputError
from newsbench.ingest.records import KeywordGroup
from newsbench.ingest.text import (
    assign_keyword_group,
    contains_pii,
    extract_snippet,
    scrub_pii,
    split_sentences,
)

SEVEN_SENTENCES = (
    "One thing happened. Two things happened! Did three happen? "
    "Four follows. Five is here. Six arrives. Seven closes."
)


class TestExtractSnippet:
    def test_first_five_of_seven(self):
        expected = "One thing happened. Two things happened! Did three happen? Four follows. Five is here."
        assert extract_snippet(SEVEN_SENTENCES, 5) == expected

    def test_fewer_sentences_than_limit(self):
        text = "First here. Second there. Third everywhere."
        assert extract_snippet(text, 5) == text

    def test_protected_abbreviation_does_not_split(self):
        assert extract_snippet("He met Dr. Smith. It rained.", 1) == "He met Dr. Smith."

    @pytest.mark.parametrize("abbr", ["Mr.", "Mrs.", "Dr.", "U.S.", "St.", "vs."])
    def test_protected_abbreviations(self, abbr):
        text = f"Something about {abbr} Always happens. Second sentence."
        assert extract_snippet(text, 1) == f"Something about {abbr} Always happens."

    def test_lowercase_after_period_is_not_a_boundary(self):
        assert extract_snippet("He went to abc. state and stayed. Then left.", 1) == (
            "He went to abc. state and stayed."
        )

    def test_empty_input_raises(self):
        with pytest.raises(EmptyInputError):
            extract_snippet("", 5)
        with pytest.raises(EmptyInputError):
            extract_snippet("   \n\t", 5)

    def test_max_sentences_validated(self):
        with pytest.raises(ValueError):
            extract_snippet("Some text.", 0)

    def test_at_most_max_sentences(self):
        for limit in (1, 2, 3, 9):
            snippet = extract_snippet(SEVEN_SENTENCES, limit)
            assert len(split_sentences(snippet)) <= limit

    def test_unterminated_tail_is_a_sentence(self):
        assert extract_snippet("Ends abruptly", 5) == "Ends abruptly"


GROUPS = [
    KeywordGroup(id="elections", name="Elections", keywords=("election", "vote")),
    KeywordGroup(id="health", name="Health", keywords=("vaccine",)),
]


class TestAssignKeywordGroup:
    def test_highest_count_wins(self):
        assert assign_keyword_group("the election votes were counted", GROUPS) == "elections"

    def test_zero_matches_gives_none(self):
        assert assign_keyword_group("weather stays calm this weekend", GROUPS) is None

    def test_tie_breaks_to_first_configured(self):
        groups = [
            KeywordGroup(id="a", name="A", keywords=("apple",)),
            KeywordGroup(id="b", name="B", keywords=("banana",)),
        ]
        assert assign_keyword_group("apple banana", groups) == "a"
        assert assign_keyword_group("banana apple", groups) == "a"

    def test_case_insensitive(self):
        assert assign_keyword_group("VACCINE rollout complete", GROUPS) == "health"

    def test_phrase_must_start_at_word_boundary(self):
        groups = [KeywordGroup(id="g", name="G", keywords=("vote",))]
        # suffix continuation counts, embedded occurrences do not
        assert assign_keyword_group("votes were cast", groups) == "g"
        assert assign_keyword_group("devotee of chess", groups) is None


class TestScrubPii:
    def test_email(self):
        assert scrub_pii("contact a@b.com") == "contact [EMAIL]"

    def test_no_pii_unchanged(self):
        assert scrub_pii("no personal data here") == "no personal data here"

    def test_username_and_url(self):
        assert scrub_pii("@alice shared http://x.y/z") == "[USER] shared [URL]"

    def test_www_token(self):
        assert scrub_pii("see www.example.com/page now") == "see [URL] now"

    def test_url_takes_precedence_over_username(self):
        assert scrub_pii("https://host.example/@handle") == "[URL]"

    def test_email_inside_sentence(self):
        assert scrub_pii("write to bob.smith+news@mail.example.org today") == "write to [EMAIL] today"

    @given(st.text(max_size=200))
    def test_idempotent(self, text):
        once = scrub_pii(text)
        assert scrub_pii(once) == once

    @given(st.text(max_size=200))
    def test_no_residual_pii(self, text):
        assert not contains_pii(scrub_pii(text))

    def test_placeholders_survive(self):
        assert scrub_pii("[URL] and [EMAIL] and [USER]") == "[URL] and [EMAIL] and [USER]"
