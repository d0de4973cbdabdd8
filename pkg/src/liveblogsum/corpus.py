"""Canonical data model for live blogs and corpora.

A corpus is one JSON file; serialization is canonical (sorted keys,
2-space indent, UTF-8, LF, explicit nulls) so that byte-level diffs and
content digests are stable across runs and machines.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
import unicodedata
from dataclasses import dataclass, field, replace
from pathlib import Path
from urllib.parse import parse_qsl, urlencode, urlsplit, urlunsplit

from .errors import DuplicateId, SchemaError, StageError
from .textutils import word_count

STAGES = ("crawled", "parsed", "pruned")
KNOWN_SOURCES = ("bbc", "guardian")

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")

# query parameters that only track campaigns/clicks; stripped during URL
# normalization so recrawls of the same page dedupe
_TRACKING_PARAMS = re.compile(r"^(utm_\w+|gclid|fbclid|ref|cmpid|ocid|ns_\w+)$")


@dataclass(frozen=True)
class Snippet:
    """One timestamped micro-update within a live blog."""

    index: int
    timestamp: str | None
    text: str
    media_refs: tuple[str, ...] = ()


@dataclass(frozen=True)
class LiveBlog:
    """One crawled event: metadata, ordered snippets, bullet summary."""

    blog_id: str
    url: str
    author: str | None
    date: str | None
    genre: str
    title: str
    summary: tuple[str, ...]
    snippets: tuple[Snippet, ...]


@dataclass(frozen=True)
class Corpus:
    """A named collection of live blogs with pipeline provenance."""

    source: str
    stage: str
    blogs: tuple[LiveBlog, ...]
    created_at: str
    tool_version: str

    def at_stage(self, expected: str) -> "Corpus":
        """Return self if at `expected` stage, else raise StageError."""
        if self.stage != expected:
            raise StageError(expected, self.stage)
        return self

    def with_blogs(self, blogs, stage: str | None = None) -> "Corpus":
        return replace(self, blogs=tuple(blogs), stage=stage or self.stage)


def normalize_url(url: str, *, keep_query: bool = True) -> str:
    """Lowercase scheme/host, drop fragment and tracking params.

    With keep_query=False the whole query string is dropped as well
    (the blog-identity form).
    """
    parts = urlsplit(url.strip())
    query = ""
    if keep_query and parts.query:
        kept = [(k, v) for k, v in parse_qsl(parts.query, keep_blank_values=True)
                if not _TRACKING_PARAMS.match(k)]
        query = urlencode(kept)
    path = parts.path.rstrip("/") or "/"
    return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), path, query, ""))


def blog_id_for_url(url: str) -> str:
    """Stable blog key: hex digest of the normalized scheme+host+path."""
    canonical = normalize_url(url, keep_query=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise SchemaError(f"{where}.{key}", "missing field")
    value = obj[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _optional_str(obj: dict, key: str, where: str) -> str | None:
    if key not in obj:
        raise SchemaError(f"{where}.{key}", "missing field (optional fields must be explicit null)")
    value = obj[key]
    if value is None:
        return None
    if not isinstance(value, str):
        raise SchemaError(f"{where}.{key}", f"expected string or null, got {type(value).__name__}")
    return _nfc(value)


def _parse_snippet(obj, where: str, expected_index: int) -> Snippet:
    if not isinstance(obj, dict):
        raise SchemaError(where, "snippet must be an object")
    index = _require(obj, "index", int, where)
    if isinstance(index, bool) or index != expected_index:
        raise SchemaError(f"{where}.index", f"indices must be contiguous from 0, expected {expected_index}")
    timestamp = _optional_str(obj, "timestamp", where)
    text = _nfc(_require(obj, "text", str, where))
    if not text.strip():
        raise SchemaError(f"{where}.text", "snippet text is empty after whitespace normalization")
    media = _require(obj, "media_refs", list, where)
    for i, ref in enumerate(media):
        if not isinstance(ref, str):
            raise SchemaError(f"{where}.media_refs[{i}]", "media ref must be a string")
    return Snippet(index=index, timestamp=timestamp, text=text, media_refs=tuple(media))


def _parse_blog(obj, where: str, stage: str) -> LiveBlog:
    if not isinstance(obj, dict):
        raise SchemaError(where, "blog must be an object")
    blog_id = _require(obj, "blog_id", str, where)
    url = _nfc(_require(obj, "url", str, where))
    author = _optional_str(obj, "author", where)
    date = _optional_str(obj, "date", where)
    if date is not None and not _DATE_RE.match(date):
        raise SchemaError(f"{where}.date", f"not an ISO date (YYYY-MM-DD): {date!r}")
    genre = _nfc(_require(obj, "genre", str, where))
    title = _nfc(_require(obj, "title", str, where))
    summary = _require(obj, "summary", list, where)
    bullets = []
    for i, bullet in enumerate(summary):
        if not isinstance(bullet, str):
            raise SchemaError(f"{where}.summary[{i}]", "summary bullet must be a string")
        bullets.append(_nfc(bullet))
    raw_snippets = _require(obj, "snippets", list, where)
    snippets = tuple(_parse_snippet(s, f"{where}.snippets[{i}]", i) for i, s in enumerate(raw_snippets))

    if stage in ("parsed", "pruned") and not snippets:
        raise SchemaError(f"{where}.snippets", f"stage '{stage}' requires at least one snippet")
    if stage == "pruned":
        if len(bullets) < 3:
            raise SchemaError(f"{where}.summary", "stage 'pruned' requires >= 3 summary sentences")
        for i, bullet in enumerate(bullets):
            if word_count(bullet) < 3:
                raise SchemaError(f"{where}.summary[{i}]", "pruned summary sentences need >= 3 words")
    return LiveBlog(blog_id=blog_id, url=url, author=author, date=date, genre=genre,
                    title=title, summary=tuple(bullets), snippets=snippets)


def corpus_from_payload(payload) -> Corpus:
    """Validate a decoded JSON document and build an immutable Corpus."""
    if not isinstance(payload, dict):
        raise SchemaError("$", "corpus document must be a JSON object")
    source = _require(payload, "source", str, "$")
    if not source:
        raise SchemaError("$.source", "source must be a non-empty string")
    stage = _require(payload, "stage", str, "$")
    if stage not in STAGES:
        raise SchemaError("$.stage", f"unknown stage {stage!r}, expected one of {STAGES}")
    created_at = _require(payload, "created_at", str, "$")
    tool_version = _require(payload, "tool_version", str, "$")
    raw_blogs = _require(payload, "blogs", list, "$")
    blogs = tuple(_parse_blog(b, f"$.blogs[{i}]", stage) for i, b in enumerate(raw_blogs))

    seen_ids: set[str] = set()
    seen_urls: set[str] = set()
    for blog in blogs:
        if blog.blog_id in seen_ids:
            raise DuplicateId(blog.blog_id)
        if blog.url in seen_urls:
            raise DuplicateId(blog.blog_id)
        seen_ids.add(blog.blog_id)
        seen_urls.add(blog.url)
    return Corpus(source=source, stage=stage, blogs=blogs,
                  created_at=created_at, tool_version=tool_version)


def corpus_to_payload(corpus: Corpus) -> dict:
    return {
        "source": corpus.source,
        "stage": corpus.stage,
        "created_at": corpus.created_at,
        "tool_version": corpus.tool_version,
        "blogs": [
            {
                "blog_id": b.blog_id,
                "url": b.url,
                "author": b.author,
                "date": b.date,
                "genre": b.genre,
                "title": b.title,
                "summary": list(b.summary),
                "snippets": [
                    {"index": s.index, "timestamp": s.timestamp, "text": s.text,
                     "media_refs": list(s.media_refs)}
                    for s in b.snippets
                ],
            }
            for b in corpus.blogs
        ],
    }


def canonical_json_bytes(payload) -> bytes:
    """Canonical JSON: sorted keys, 2-space indent, LF, UTF-8, final newline."""
    text = json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2)
    return (text + "\n").encode("utf-8")


def canonical_bytes(corpus: Corpus) -> bytes:
    return canonical_json_bytes(corpus_to_payload(corpus))


def load_corpus(path) -> Corpus:
    """Load and validate one corpus file; rejects anything off-schema."""
    raw = Path(path).read_bytes()
    try:
        payload = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise SchemaError("$", f"not valid UTF-8: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON: {exc}") from exc
    return corpus_from_payload(payload)


def atomic_write_bytes(path, data: bytes) -> None:
    """Write via a sibling temp file + rename so readers never see a torn file."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_corpus(corpus: Corpus, path) -> None:
    """Write the canonical serialization of `corpus` to `path` atomically."""
    try:
        atomic_write_bytes(path, canonical_bytes(corpus))
    except OSError as exc:
        raise OSError(f"saving corpus to {path}: {exc}") from exc


def corpus_digest(corpus: Corpus) -> str:
    """Deterministic content hash (sha256 hex of the canonical bytes)."""
    return hashlib.sha256(canonical_bytes(corpus)).hexdigest()
