"""Site profiles and live-blog page parsing.

A SiteProfile is versioned data, not code: ordered selector lists for
the summary bullets and the snippet stream, plus metadata selectors and
the pruning patterns. Selector lists are fallback chains; the first
selector that matches anything wins, which lets one profile span years
of template drift on the same site.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import LiveBlog, Snippet, blog_id_for_url
from .errors import NoSnippetsFound, NoSummaryFound, SchemaError
from .htmldom import Node, extract, parse_html, select

_DATE_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})")

BUNDLED_PROFILES = ("bbc", "guardian")


@dataclass(frozen=True)
class SiteProfile:
    name: str
    summary_selectors: tuple[str, ...]
    snippet_selectors: tuple[str, ...]
    metadata_selectors: dict[str, tuple[str, ...]]
    exclusion_genres: frozenset[str]
    multi_topic_title_patterns: tuple[str, ...]
    snippet_fields: dict[str, tuple[str, ...]]

    @classmethod
    def from_payload(cls, payload: dict) -> "SiteProfile":
        def str_list(key, required=False):
            value = payload.get(key, [])
            if not isinstance(value, list) or any(not isinstance(x, str) for x in value):
                raise SchemaError(key, "must be a list of strings")
            if required and not value:
                raise SchemaError(key, "needs at least one selector")
            return tuple(value)

        name = payload.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError("name", "must be a non-empty string")
        metadata = payload.get("metadata_selectors", {})
        if not isinstance(metadata, dict):
            raise SchemaError("metadata_selectors", "must be a map of field -> selector list")
        snippet_fields = payload.get("snippet_fields", {})
        if not isinstance(snippet_fields, dict):
            raise SchemaError("snippet_fields", "must be a map of field -> selector list")
        return cls(
            name=name,
            summary_selectors=str_list("summary_selectors", required=True),
            snippet_selectors=str_list("snippet_selectors", required=True),
            metadata_selectors={k: tuple(v) for k, v in metadata.items()},
            exclusion_genres=frozenset(payload.get("exclusion_genres", [])),
            multi_topic_title_patterns=str_list("multi_topic_title_patterns"),
            snippet_fields={k: tuple(v) for k, v in snippet_fields.items()},
        )

    @classmethod
    def load(cls, name_or_path: str) -> "SiteProfile":
        """A bundled profile name ("bbc", "guardian") or a JSON file path."""
        if name_or_path in BUNDLED_PROFILES:
            ref = resources.files("liveblogsum.data").joinpath(f"profiles/{name_or_path}.json")
            text = ref.read_text(encoding="utf-8")
        else:
            text = Path(name_or_path).read_text(encoding="utf-8")
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"profile is not valid JSON: {exc}") from exc
        return cls.from_payload(payload)


def _first_extract(root: Node, selectors: tuple[str, ...]) -> list[str]:
    for selector in selectors:
        values = extract(root, selector)
        if values:
            return values
    return []


def _normalize_date(raw: str) -> str | None:
    match = _DATE_RE.search(raw)
    if not match:
        return None
    return "-".join(match.groups())


def parse_live_blog(html: str, profile: SiteProfile, url: str) -> LiveBlog:
    """One page -> one LiveBlog record; snippet order is document order.

    Raises NoSummaryFound / NoSnippetsFound when the page lacks either
    block; such blogs are discarded upstream. Metadata is best-effort:
    a missing author or date stays null, a missing genre is "unknown".
    """
    if not html:
        raise SchemaError("html", "empty payload")
    root = parse_html(html)

    bullets = []
    for selector in profile.summary_selectors:
        bullets = extract(root, selector)
        if bullets:
            break
    if not bullets:
        raise NoSummaryFound(f"no summary block in {url}")

    snippet_nodes: list[Node] = []
    for selector in profile.snippet_selectors:
        snippet_nodes = select(root, selector)
        if snippet_nodes:
            break
    if not snippet_nodes:
        raise NoSnippetsFound(f"no snippet stream in {url}")

    text_selectors = profile.snippet_fields.get("text", ())
    time_selectors = profile.snippet_fields.get("timestamp", ())
    media_selectors = profile.snippet_fields.get("media", ())
    snippets: list[Snippet] = []
    for node in snippet_nodes:
        parts = _first_extract(node, text_selectors) if text_selectors else []
        text = " ".join(parts) if parts else node.text()
        if not text:
            continue
        stamps = _first_extract(node, time_selectors) if time_selectors else []
        media: list[str] = []
        for selector in media_selectors:
            for ref in extract(node, selector):
                if ref not in media:
                    media.append(ref)
        snippets.append(Snippet(index=len(snippets),
                                timestamp=stamps[0] if stamps else None,
                                text=text, media_refs=tuple(media)))
    if not snippets:
        raise NoSnippetsFound(f"snippet nodes carry no text in {url}")

    titles = _first_extract(root, profile.metadata_selectors.get("title", ()))
    if not titles:
        titles = extract(root, "title")
    title = titles[0] if titles else "untitled"

    authors = _first_extract(root, profile.metadata_selectors.get("author", ()))
    author = authors[0] if authors else None

    date = None
    for raw in _first_extract(root, profile.metadata_selectors.get("date", ())):
        date = _normalize_date(raw)
        if date:
            break

    genres = _first_extract(root, profile.metadata_selectors.get("genre", ()))
    genre = genres[0].lower() if genres else "unknown"

    return LiveBlog(blog_id=blog_id_for_url(url), url=url, author=author, date=date,
                    genre=genre, title=title, summary=tuple(bullets),
                    snippets=tuple(snippets))
