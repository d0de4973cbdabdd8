"""Live-blog corpus construction and extractive summarization benchmark toolkit."""

__version__ = "0.1.0"
