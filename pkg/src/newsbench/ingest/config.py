"""Keyword-group and feed-list configuration file.

INI-style key/value format, one section per group or feed:

    [group:elections]
    name = Elections
    keywords = election, vote, ballot box

    [feed:national]
    url = https://news.example.com/rss
    group = elections

Keyword phrases are comma-separated and lowercased on load. A feed's group is
optional; when present it must name a configured group.
"""

from __future__ import annotations

import configparser
from pathlib import Path
from typing import Optional

from newsbench.errors import ConfigurationError
from newsbench.ingest.records import KeywordGroup


def load_feed_config(path: str | Path) -> tuple[list[KeywordGroup], list[tuple[str, Optional[str]]]]:
    """Parse the config file into (groups, feeds).

    Feeds are (url, group_id) pairs in file order; groups keep file order,
    which is also the keyword-assignment tie-break order.
    """
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep case in values and keys
    try:
        read = parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse {path}: {exc}") from exc
    if not read:
        raise ConfigurationError(f"config file not found: {path}")

    groups: list[KeywordGroup] = []
    seen_ids: set[str] = set()
    feeds: list[tuple[str, Optional[str]]] = []

    for section in parser.sections():
        if section.startswith("group:"):
            group_id = section.split(":", 1)[1].strip()
            if group_id in seen_ids:
                raise ConfigurationError(f"duplicate group id {group_id!r}")
            seen_ids.add(group_id)
            keywords = tuple(
                k.strip() for k in parser.get(section, "keywords", fallback="").split(",") if k.strip()
            )
            if not keywords:
                raise ConfigurationError(f"group {group_id!r} has no keywords")
            name = parser.get(section, "name", fallback=group_id)
            groups.append(KeywordGroup(id=group_id, name=name, keywords=keywords))
        elif section.startswith("feed:"):
            url = parser.get(section, "url", fallback="").strip()
            if not url:
                raise ConfigurationError(f"feed section {section!r} has no url")
            group = parser.get(section, "group", fallback="").strip() or None
            feeds.append((url, group))

    group_ids = {g.id for g in groups}
    for url, group in feeds:
        if group is not None and group not in group_ids:
            raise ConfigurationError(f"feed {url!r} references unknown group {group!r}")
    return groups, feeds
