"""Fetch and parse news feeds (RSS 2.0 and Atom) into raw articles.

Feeds are fetched over HTTP or read from a local fixture path (plain path or
file:// URL), so tests never need the network. Parsing is deliberately strict:
a payload that is not well-formed XML raises FeedParseError carrying the byte
offset of the failure, and a well-formed document whose root is not a feed is
rejected the same way.
"""

from __future__ import annotations

import html
import logging
import re
import xml.etree.ElementTree as ET
from datetime import datetime
from email.utils import parsedate_to_datetime
from pathlib import Path
from urllib.parse import urlparse

import requests

from newsbench.errors import FeedParseError, FeedTransportError, FeedUpstreamError
from newsbench.ingest.records import RawArticle, as_utc

logger = logging.getLogger(__name__)

ATOM_NS = "{http://www.w3.org/2005/Atom}"
_TAG_RE = re.compile(r"<[^>]+>")


def fetch_feed(feed_url: str, timeout: float = 10.0) -> list[RawArticle]:
    """Fetch a feed and return one RawArticle per entry, in document order."""
    raw = _load_bytes(feed_url, timeout)
    return parse_feed_bytes(raw, feed_url)


def _load_bytes(feed_url: str, timeout: float) -> bytes:
    parsed = urlparse(feed_url)
    if parsed.scheme in ("http", "https"):
        try:
            response = requests.get(feed_url, timeout=timeout)
        except requests.RequestException as exc:
            raise FeedTransportError(f"feed fetch failed: {exc}") from exc
        if response.status_code >= 400:
            raise FeedUpstreamError(response.status_code, feed_url)
        return response.content
    if parsed.scheme == "file":
        path = Path(parsed.path)
    else:
        path = Path(feed_url)
    try:
        return path.read_bytes()
    except OSError as exc:
        raise FeedTransportError(f"cannot read feed fixture {feed_url!r}: {exc}") from exc


def _byte_offset(raw: bytes, line: int, column: int) -> int:
    """Translate a 1-based line / 0-based column position into a byte offset."""
    lines = raw.split(b"\n")
    offset = sum(len(l) + 1 for l in lines[: line - 1])
    return offset + column


def parse_feed_bytes(raw: bytes, feed_url: str) -> list[RawArticle]:
    """Parse RSS or Atom bytes. Deterministic: identical bytes, identical output."""
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        line, column = exc.position
        raise FeedParseError(f"not well-formed XML: {exc.msg}", _byte_offset(raw, line, column)) from exc

    tag = root.tag.split("}")[-1].lower()
    if tag == "rss":
        items = root.findall("./channel/item")
        entries = [_rss_entry(item, feed_url) for item in items]
    elif tag == "feed":
        items = root.findall(f"./{ATOM_NS}entry") or root.findall("./entry")
        entries = [_atom_entry(item, feed_url) for item in items]
    else:
        raise FeedParseError(f"root element {root.tag!r} is not a feed", 0)
    return [entry for entry in entries if entry is not None]


def _clean_text(value: str | None) -> str:
    if not value:
        return ""
    text = _TAG_RE.sub(" ", value)
    text = html.unescape(text)
    return re.sub(r"\s+", " ", text).strip()


def _parse_entry_date(value: str | None) -> datetime | None:
    if not value or not value.strip():
        return None
    text = value.strip()
    try:
        return as_utc(parsedate_to_datetime(text))
    except (TypeError, ValueError):
        pass
    try:
        if text.endswith("Z"):
            text = text[:-1] + "+00:00"
        return as_utc(datetime.fromisoformat(text))
    except ValueError:
        return None


def _rss_entry(item: ET.Element, feed_url: str) -> RawArticle | None:
    link = (item.findtext("link") or "").strip()
    if not link:
        logger.warning("skipping feed entry without a link in %s", feed_url)
        return None
    published = _parse_entry_date(item.findtext("pubDate"))
    if published is None:
        logger.warning("entry %r in %s has no parseable publication date", link, feed_url)
    return RawArticle(
        feed_url=feed_url,
        title=_clean_text(item.findtext("title")),
        link=link,
        published_at=published,
        body_text=_clean_text(item.findtext("description")),
    )


def _atom_entry(item: ET.Element, feed_url: str) -> RawArticle | None:
    link = ""
    for link_el in item.findall(f"{ATOM_NS}link") + item.findall("link"):
        href = (link_el.get("href") or "").strip()
        if href and link_el.get("rel") in (None, "alternate"):
            link = href
            break
    if not link:
        logger.warning("skipping feed entry without a link in %s", feed_url)
        return None
    date_text = None
    for field in ("published", "updated"):
        date_text = item.findtext(f"{ATOM_NS}{field}") or item.findtext(field)
        if date_text:
            break
    published = _parse_entry_date(date_text)
    if published is None:
        logger.warning("entry %r in %s has no parseable publication date", link, feed_url)
    body = None
    for field in ("content", "summary"):
        body = item.findtext(f"{ATOM_NS}{field}") or item.findtext(field)
        if body:
            break
    title = item.findtext(f"{ATOM_NS}title") or item.findtext("title")
    return RawArticle(
        feed_url=feed_url,
        title=_clean_text(title),
        link=link,
        published_at=published,
        body_text=_clean_text(body),
    )
