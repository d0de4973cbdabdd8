"""Iterative live-blog URL discovery from seed terms.

Each round turns the previous round's key terms into site-restricted
search queries, unions the returned links, and mines the newly found
pages for fresh key terms. The loop stops at a fixed point (a round
that adds no new link), when no unused key terms remain, or at the
iteration cap. Every round appends one JSON audit line, and with the
fixture backends the whole run is byte-reproducible.
"""

from __future__ import annotations

import json
import time
import urllib.error
import urllib.parse
import urllib.request
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import LiveBlog, Snippet, blog_id_for_url, normalize_url
from .errors import BackendUnavailable, EmptyTermSet, NotHtml, Unreachable
from .htmldom import strip_boilerplate
from .textutils import is_stopword, tokenize


@dataclass(frozen=True)
class UrlPattern:
    """Query template with one `[key term]` hole, plus the URL prefix a
    result must carry to count as an on-site live blog."""

    name: str
    template: str
    site_filter: str

    def __post_init__(self):
        if self.template.count("[key term]") != 1:
            raise ValueError("template needs exactly one [key term] placeholder")

    @classmethod
    def load(cls, name: str, path: str | None = None) -> "UrlPattern":
        if path is not None:
            text = Path(path).read_text(encoding="utf-8")
        else:
            text = resources.files("liveblogsum.data").joinpath("patterns.json").read_text(encoding="utf-8")
        table = json.loads(text)
        if name not in table:
            raise KeyError(f"unknown URL pattern {name!r}; have {sorted(table)}")
        entry = table[name]
        return cls(name=name, template=entry["template"], site_filter=entry["site_filter"])


@dataclass
class CrawlLimits:
    max_iterations: int = 10
    terms_per_iteration: int = 50
    results_per_query: int = 100


@dataclass(frozen=True)
class CrawlState:
    iteration: int
    used_terms: frozenset[str]
    links: frozenset[str]
    per_iteration_new: tuple[int, ...]
    termination_reason: str
    truncated: bool
    warnings: tuple[str, ...]
    audit: tuple[str, ...]


class FixtureSearchBackend:
    """Deterministic backend over a JSON fixture; unmapped queries yield []."""

    def __init__(self, queries: dict[str, list[str]]):
        self._queries = dict(queries)

    def query(self, q: str) -> list[str]:
        return list(self._queries.get(q, []))


class FixtureHttpBackend:
    """URL -> HTML map; values are inline HTML or paths relative to base_dir."""

    def __init__(self, pages: dict[str, str], base_dir: str | Path | None = None):
        self._pages = dict(pages)
        self._base = Path(base_dir) if base_dir else None

    def get(self, url: str) -> str:
        if url not in self._pages:
            raise Unreachable(url, "not in fixture")
        value = self._pages[url]
        if self._base is not None and not value.lstrip().startswith("<"):
            return (self._base / value).read_text(encoding="utf-8")
        return value


def load_fixture_backends(path: str | Path) -> tuple[FixtureSearchBackend, FixtureHttpBackend]:
    """One fixture file serves both roles:
    {"queries": {query: [url, ...]}, "pages": {url: "relative.html" | inline}}"""
    path = Path(path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    return (FixtureSearchBackend(payload.get("queries", {})),
            FixtureHttpBackend(payload.get("pages", {}), base_dir=path.parent))


class UrllibHttpBackend:
    """Plain HTTP fetcher: 3 attempts with exponential backoff."""

    def __init__(self, timeout: float = 20.0, attempts: int = 3, delay: float = 0.5):
        self.timeout = timeout
        self.attempts = attempts
        self.delay = delay

    def get(self, url: str) -> str:
        request = urllib.request.Request(url, headers={"User-Agent": "liveblogsum/0.1"})
        last: Exception | None = None
        for attempt in range(self.attempts):
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as response:
                    charset = response.headers.get_content_charset() or "utf-8"
                    return response.read().decode(charset, errors="replace")
            except (urllib.error.URLError, TimeoutError, OSError) as exc:
                last = exc
                time.sleep(self.delay * (2 ** attempt))
        raise Unreachable(url, str(last))


class JsonSearchBackend:
    """Adapter for any endpoint that answers GET <endpoint>?...{q}... with a
    JSON array of URL strings. Stands in for a commercial search API."""

    def __init__(self, endpoint_template: str, http: UrllibHttpBackend | None = None):
        if "{q}" not in endpoint_template:
            raise ValueError("endpoint template needs a {q} placeholder")
        self.endpoint_template = endpoint_template
        self.http = http or UrllibHttpBackend()

    def query(self, q: str) -> list[str]:
        url = self.endpoint_template.format(q=urllib.parse.quote(q))
        try:
            body = self.http.get(url)
            results = json.loads(body)
        except (Unreachable, json.JSONDecodeError) as exc:
            raise BackendUnavailable(f"search endpoint failed for {q!r}: {exc}") from exc
        if not isinstance(results, list) or any(not isinstance(u, str) for u in results):
            raise BackendUnavailable("search endpoint must return a JSON array of URLs")
        return results


def make_queries(key_terms, pattern: UrlPattern) -> list[str]:
    """One query per term, lexicographic term order for determinism."""
    if not key_terms:
        raise EmptyTermSet("cannot build queries from an empty term set")
    return [pattern.template.replace("[key term]", term) for term in sorted(key_terms)]


def get_links(queries, backend, pattern: UrlPattern,
              cap: int = 100) -> tuple[set[str], list[str]]:
    """Union of on-site result URLs (normalized); per-query failures are
    skipped and returned as warnings rather than aborting the round."""
    links: set[str] = set()
    warnings: list[str] = []
    for query in queries:
        try:
            results = backend.query(query)
        except BackendUnavailable:
            raise
        except Exception as exc:
            warnings.append(f"query failed ({type(exc).__name__}): {query}")
            continue
        for url in results[:cap]:
            normalized = normalize_url(url)
            if normalized.startswith(pattern.site_filter):
                links.add(normalized)
    return links, warnings


def extract_key_terms(blogs, used, k: int) -> set[str]:
    """Top-k TF*IDF terms over the given blogs after dropping used terms,
    stop words, and tokens under 3 characters; ties go lexicographically.

    The idf factor is smoothed, ln(n/df) + 1, so a single-document batch
    still ranks by raw frequency instead of zeroing out.
    """
    import math

    if k < 1:
        raise ValueError("k must be >= 1")
    docs: list[Counter] = []
    for blog in blogs:
        text = " ".join([blog.title, *blog.summary, *[s.text for s in blog.snippets]])
        tokens = tokenize(text).tokens
        if tokens:
            docs.append(Counter(tokens))
    if not docs:
        return set()
    df: Counter = Counter()
    for doc in docs:
        df.update(doc.keys())
    tf: Counter = Counter()
    for doc in docs:
        tf.update(doc)
    n_docs = len(docs)
    scored = []
    for term, frequency in tf.items():
        if term in used or is_stopword(term) or len(term) < 3:
            continue
        scored.append((-(frequency * (math.log(n_docs / df[term]) + 1.0)), term))
    scored.sort()
    return {term for _, term in scored[:k]}


def fetch_html(url: str, http) -> str:
    """Raw page body; failures become Unreachable(url, cause)."""
    try:
        return http.get(url)
    except Unreachable:
        raise
    except Exception as exc:
        raise Unreachable(url, str(exc)) from exc


def _interim_blog(url: str, html: str) -> LiveBlog | None:
    """Minimal record for key-term mining before real parsing happens."""
    try:
        text = strip_boilerplate(html)
    except NotHtml:
        return None
    if not text.strip():
        return None
    return LiveBlog(blog_id=blog_id_for_url(url), url=url, author=None, date=None,
                    genre="unknown", title="", summary=(),
                    snippets=(Snippet(index=0, timestamp=None, text=text, media_refs=()),))


def run_retrieval(seeds, pattern: UrlPattern, backend, http,
                  limits: CrawlLimits | None = None) -> CrawlState:
    """The full retrieval loop; see the module docstring for the protocol.

    Returns the final CrawlState; its audit holds one JSON line per round
    with the round's queries, new links, and new terms, all sorted.
    """
    if not seeds:
        raise EmptyTermSet("run_retrieval needs at least one seed term")
    limits = limits or CrawlLimits()
    used_terms: set[str] = set(seeds)
    current_terms: set[str] = set(seeds)
    links: set[str] = set()
    per_new: list[int] = []
    warnings: list[str] = []
    audit: list[str] = []
    reason = "max_iterations"
    truncated = False
    iteration = 0

    def audit_line(t, queries, new_links, new_terms):
        record = {"t": t, "queries": list(queries),
                  "new_links": sorted(new_links), "new_terms": sorted(new_terms)}
        audit.append(json.dumps(record, ensure_ascii=False, sort_keys=True))

    for t in range(1, limits.max_iterations + 1):
        iteration = t
        queries = make_queries(current_terms, pattern)
        found, round_warnings = get_links(queries, backend, pattern,
                                          cap=limits.results_per_query)
        warnings.extend(round_warnings)
        new_links = found - links
        links |= found
        per_new.append(len(new_links))
        if not new_links:
            reason = "fixed_point"
            audit_line(t, queries, [], [])
            break
        blogs = []
        for url in sorted(new_links):
            try:
                blog = _interim_blog(url, fetch_html(url, http))
            except Unreachable as exc:
                warnings.append(f"unreachable: {exc}")
                continue
            if blog is not None:
                blogs.append(blog)
        new_terms = extract_key_terms(blogs, used_terms, limits.terms_per_iteration)
        audit_line(t, queries, new_links, new_terms)
        used_terms |= new_terms
        if not new_terms:
            reason = "no_new_terms"
            break
        current_terms = new_terms
    else:
        truncated = True

    return CrawlState(iteration=iteration, used_terms=frozenset(used_terms),
                      links=frozenset(links), per_iteration_new=tuple(per_new),
                      termination_reason=reason, truncated=truncated,
                      warnings=tuple(warnings), audit=tuple(audit))
