from newsbench.ingest.records import ConsolidatedRecord, IngestConfig, KeywordGroup, RawArticle
from newsbench.ingest.feeds import fetch_feed, parse_feed_bytes
from newsbench.ingest.text import assign_keyword_group, extract_snippet, scrub_pii
from newsbench.ingest.consolidate import consolidate

__all__ = [
    "ConsolidatedRecord",
    "IngestConfig",
    "KeywordGroup",
    "RawArticle",
    "fetch_feed",
    "parse_feed_bytes",
    "assign_keyword_group",
    "extract_snippet",
    "scrub_pii",
    "consolidate",
]
