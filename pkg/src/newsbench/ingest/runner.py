"""End-to-end ingestion: feeds to curated records to the consolidated corpus."""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path
from typing import Optional, Sequence
from urllib.parse import urlparse

from newsbench.ingest.consolidate import consolidate
from newsbench.ingest.feeds import fetch_feed
from newsbench.ingest.records import ConsolidatedRecord, IngestConfig, KeywordGroup, RawArticle
from newsbench.ingest.text import assign_keyword_group, extract_snippet, scrub_pii

logger = logging.getLogger(__name__)


def record_id_for(dataset: str, link: str, title: str) -> str:
    """Stable id from content, so repeated runs produce identical corpora."""
    digest = hashlib.sha1(f"{dataset}|{link}|{title}".encode("utf-8")).hexdigest()
    return digest[:16]


def dataset_tag(feed_url: str) -> str:
    parsed = urlparse(feed_url)
    if parsed.scheme in ("http", "https") and parsed.netloc:
        return parsed.netloc
    return Path(parsed.path or feed_url).stem


def article_to_record(
    article: RawArticle,
    groups: Sequence[KeywordGroup],
    max_sentences: int,
) -> Optional[ConsolidatedRecord]:
    """Convert one feed entry; returns None for entries without body text."""
    if not article.body_text.strip():
        logger.warning("skipping %r: feed entry has no body text", article.link)
        return None
    snippet = scrub_pii(extract_snippet(article.body_text, max_sentences))
    if not snippet.strip():
        logger.warning("skipping %r: empty snippet after scrubbing", article.link)
        return None
    dataset = dataset_tag(article.feed_url)
    return ConsolidatedRecord(
        id=record_id_for(dataset, article.link, article.title),
        dataset=dataset,
        text=snippet,
        label=None,
        url=article.link,
        published_at=article.published_at,
        keyword_group=assign_keyword_group(snippet, groups) if groups else None,
    )


def ingest_feeds(
    config: IngestConfig,
    groups: Sequence[KeywordGroup],
    timeout: float = 10.0,
) -> list[ConsolidatedRecord]:
    """Fetch every configured feed and build curated records.

    Results are merged in (feed order, entry order), which makes concurrent
    fetching safe to add later without changing output.
    """
    curated: list[ConsolidatedRecord] = []
    group_by_id = {g.id: g for g in groups}
    for feed_url, group_id in config.feeds:
        articles = fetch_feed(feed_url, timeout=timeout)
        feed_groups: Sequence[KeywordGroup]
        if group_id is not None:
            feed_groups = [group_by_id[group_id]]
        else:
            feed_groups = list(groups)
        for article in articles:
            record = article_to_record(article, feed_groups, config.max_sentences)
            if record is not None:
                curated.append(record)
    return curated


def run_ingest(
    config: IngestConfig,
    groups: Sequence[KeywordGroup],
    benchmark: Sequence[ConsolidatedRecord],
    timeout: float = 10.0,
) -> list[ConsolidatedRecord]:
    curated = ingest_feeds(config, groups, timeout=timeout)
    return consolidate(curated, benchmark, config)
