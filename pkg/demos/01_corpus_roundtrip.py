"""Walk through the corpus container: load the bundled 20-topic fixture,
poke at one blog, and show that save -> load is byte-stable.

Run from anywhere:  python3 demos/01_corpus_roundtrip.py
"""

import tempfile
from pathlib import Path

from liveblogsum.corpus import corpus_digest, load_corpus, save_corpus

ROOT = Path(__file__).resolve().parents[1]

corpus = load_corpus(ROOT / "fixtures" / "corpus" / "benchmark20.json")
print(f"stage={corpus.stage}  source={corpus.source}  blogs={len(corpus.blogs)}")

# every blog carries metadata, a bullet-list summary, and timestamped snippets
blog = corpus.blogs[0]
print(f"\nfirst blog: {blog.blog_id}")
print(f"  title:   {blog.title}")
print(f"  genre:   {blog.genre}  date: {blog.date}")
print(f"  summary: {len(blog.summary)} bullets, {len(blog.snippets)} snippets")
for bullet in blog.summary:
    print(f"    - {bullet}")
print(f"  snippet[0] @ {blog.snippets[0].timestamp}:")
print(f"    {blog.snippets[0].text}")

# the digest is a sha256 over canonical JSON bytes: sorted keys, fixed
# separators, trailing newline. Same corpus -> same digest, always.
digest = corpus_digest(corpus)
print(f"\ndigest: {digest}")

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "copy.json"
    save_corpus(corpus, out)
    again = load_corpus(out)
    print(f"round trip digest matches: {corpus_digest(again) == digest}")
