"""Exception types shared across the toolkit.

Every error carries enough context to be actionable from a log line;
pipeline stages catch the per-item errors (Unreachable, NoSummaryFound,
...) and record them, while contract errors (SchemaError, StageError)
abort the operation.
"""


class LiveBlogError(Exception):
    """Base class for all toolkit errors."""


class SchemaError(LiveBlogError):
    """A corpus file violates the JSON schema or a model invariant."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class DuplicateId(LiveBlogError):
    """Two blogs in one corpus share a blog_id or URL."""

    def __init__(self, blog_id: str):
        self.blog_id = blog_id
        super().__init__(f"duplicate blog id or url: {blog_id}")


class StageError(LiveBlogError):
    """An operation received a corpus at the wrong pipeline stage."""

    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(f"corpus stage is '{actual}', operation requires '{expected}'")


class EmptyTermSet(LiveBlogError):
    """Query construction was asked to run with no key terms."""


class BackendUnavailable(LiveBlogError):
    """A search backend failed hard (all retries exhausted)."""


class Unreachable(LiveBlogError):
    """A URL could not be fetched; recorded per URL, never fatal."""

    def __init__(self, url: str, cause: str):
        self.url = url
        self.cause = cause
        super().__init__(f"unreachable: {url} ({cause})")


class NotHtml(LiveBlogError):
    """Payload handed to the HTML pipeline is not text at all."""


class NoSummaryFound(LiveBlogError):
    """No summary block matched any profile selector; the blog is discarded."""


class NoSnippetsFound(LiveBlogError):
    """No snippet block matched any profile selector; the blog is discarded."""


class EmptyDistribution(LiveBlogError):
    """A word distribution with zero total mass was used where mass is required."""


class DegenerateTopic(LiveBlogError):
    """Heterogeneity is undefined: fewer than two snippets, or an empty one."""


class NoConcepts(LiveBlogError):
    """No bigram concept passed the document-frequency threshold."""


class EmptyReference(LiveBlogError):
    """ROUGE needs at least one reference n-gram of the required order."""


class EmptySummary(LiveBlogError):
    """Budget computation needs a non-empty human summary."""
