"""Pipeline front end: crawl -> parse -> prune -> stats -> summarize -> evaluate.

Every command reads and writes canonical JSON through atomic renames, so
re-running with identical inputs reproduces outputs byte for byte and an
interrupted run never leaves a truncated file behind. Exit codes: 0 ok,
1 runtime failure, 2 usage or contract error (argparse uses 2 as well).

Warnings and per-item drops go to a JSON-lines log (stderr by default,
--log FILE to redirect).
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from pathlib import Path
from statistics import fmean

from . import __version__
from .analysis import corpus_stats, domain_distribution, textual_heterogeneity
from .corpus import (Corpus, LiveBlog, atomic_write_bytes, blog_id_for_url,
                     canonical_json_bytes, corpus_digest, load_corpus, save_corpus)
from .crawler import (CrawlLimits, JsonSearchBackend, UrllibHttpBackend, UrlPattern,
                      fetch_html, load_fixture_backends, run_retrieval)
from .errors import (DegenerateTopic, EmptySummary, EmptyTermSet, LiveBlogError,
                     SchemaError, StageError, Unreachable)
from .evaluate import MODES, budget_for, run_benchmark
from .parsing import SiteProfile, parse_live_blog
from .pruning import prune_corpus
from .summarize import SYSTEMS, split_candidates

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

_SEARCH_ENDPOINT_VAR = "LIVEBLOGSUM_SEARCH_ENDPOINT"


class _Logger:
    """JSON-lines event log; one record per line, keys sorted."""

    def __init__(self, path: str | None):
        self.path = path
        if path:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            # truncate so a rerun's log reflects only that run
            Path(path).write_text("", encoding="utf-8")

    def emit(self, record: dict) -> None:
        line = json.dumps(record, ensure_ascii=False, sort_keys=True)
        if self.path:
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(line + "\n")
        else:
            print(line, file=sys.stderr)


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _read_seeds(path: str) -> set[str]:
    seeds = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip()
        if term and not term.startswith("#"):
            seeds.add(term)
    return seeds


def _load_params(path: str | None) -> dict:
    if not path:
        return {}
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(payload, dict):
        raise SchemaError("params", "must be a JSON object of system -> overrides")
    return payload


def cmd_crawl(args, log: _Logger) -> int:
    seeds = _read_seeds(args.seeds)
    try:
        pattern = UrlPattern.load(args.pattern, path=args.patterns)
    except KeyError as exc:
        log.emit({"event": "error", "kind": "config", "detail": str(exc)})
        return EXIT_USAGE

    if args.backend == "fixture":
        if not args.fixture:
            log.emit({"event": "error", "kind": "config",
                      "detail": "--backend fixture requires --fixture FILE"})
            return EXIT_USAGE
        search, http = load_fixture_backends(args.fixture)
    else:
        endpoint = os.environ.get(_SEARCH_ENDPOINT_VAR)
        if not endpoint:
            log.emit({"event": "error", "kind": "config",
                      "detail": f"--backend live requires {_SEARCH_ENDPOINT_VAR}"})
            return EXIT_USAGE
        http = UrllibHttpBackend()
        search = JsonSearchBackend(endpoint, http=http)

    limits = CrawlLimits(max_iterations=args.max_iter)
    state = run_retrieval(seeds, pattern, search, http, limits=limits)
    for warning in state.warnings:
        log.emit({"event": "warning", "detail": warning})

    audit_path = args.audit or (args.out + ".audit.jsonl")
    audit_text = "".join(line + "\n" for line in state.audit)
    atomic_write_bytes(audit_path, audit_text.encode("utf-8"))

    blogs = []
    html_dir = Path(args.html_out) if args.html_out else None
    if html_dir:
        html_dir.mkdir(parents=True, exist_ok=True)
    for url in sorted(state.links):
        blog_id = blog_id_for_url(url)
        if html_dir:
            try:
                html = fetch_html(url, http)
            except Unreachable as exc:
                log.emit({"event": "drop", "url": url, "reason": "Unreachable",
                          "detail": str(exc)})
                continue
            atomic_write_bytes(html_dir / f"{blog_id}.html", html.encode("utf-8"))
        blogs.append(LiveBlog(blog_id=blog_id, url=url, author=None, date=None,
                              genre="unknown", title="", summary=(), snippets=()))

    corpus = Corpus(source=args.pattern, stage="crawled", blogs=tuple(blogs),
                    created_at=args.created_at or _utc_now(), tool_version=__version__)
    save_corpus(corpus, args.out)
    log.emit({"event": "crawl", "links": len(blogs), "iterations": state.iteration,
              "reason": state.termination_reason, "truncated": state.truncated})
    return EXIT_OK


def cmd_parse(args, log: _Logger) -> int:
    corpus = load_corpus(args.infile).at_stage("crawled")
    profile = SiteProfile.load(args.profile)
    html_dir = Path(args.html_dir)
    parsed: dict[str, LiveBlog] = {}
    for blog in corpus.blogs:
        page = html_dir / f"{blog.blog_id}.html"
        if not page.exists():
            log.emit({"event": "drop", "blog_id": blog.blog_id,
                      "reason": "missing-html", "detail": str(page)})
            continue
        try:
            record = parse_live_blog(page.read_text(encoding="utf-8"), profile, blog.url)
        except LiveBlogError as exc:
            log.emit({"event": "drop", "blog_id": blog.blog_id,
                      "reason": type(exc).__name__, "detail": str(exc)})
            continue
        if record.blog_id in parsed:
            log.emit({"event": "drop", "blog_id": record.blog_id,
                      "reason": "duplicate", "detail": record.url})
            continue
        parsed[record.blog_id] = record

    out = Corpus(source=profile.name, stage="parsed", blogs=tuple(parsed.values()),
                 created_at=corpus.created_at, tool_version=__version__)
    save_corpus(out, args.out)
    log.emit({"event": "parse", "in": len(corpus.blogs), "out": len(parsed.values())})
    return EXIT_OK


def cmd_prune(args, log: _Logger) -> int:
    corpus = load_corpus(args.infile).at_stage("parsed")
    profile = SiteProfile.load(args.profile or corpus.source)
    pruned, report = prune_corpus(corpus, profile)
    save_corpus(pruned, args.out)
    if args.report:
        atomic_write_bytes(args.report, canonical_json_bytes(report.to_payload()))
    for removal in report.removals:
        log.emit({"event": "removed", **removal})
    log.emit({"event": "prune", "in": report.after_parse_count,
              "out": report.after_prune_count})
    return EXIT_OK


def cmd_stats(args, log: _Logger) -> int:
    corpus = load_corpus(args.infile).at_stage("pruned")
    per_topic: dict[str, float | None] = {}
    for blog in corpus.blogs:
        try:
            per_topic[blog.blog_id] = textual_heterogeneity(blog)
        except DegenerateTopic as exc:
            per_topic[blog.blog_id] = None
            log.emit({"event": "warning", "blog_id": blog.blog_id,
                      "reason": "DegenerateTopic", "detail": str(exc)})
    usable = [v for v in per_topic.values() if v is not None]
    payload = {
        "corpus": corpus_stats(corpus).to_payload(),
        "domains": {genre: {"topics": count, "percent": pct}
                    for genre, (count, pct) in domain_distribution(corpus).items()},
        "heterogeneity": {"per_topic": per_topic,
                          "mean": fmean(usable) if usable else None},
        "digest": corpus_digest(corpus),
    }
    data = canonical_json_bytes(payload)
    if args.out:
        atomic_write_bytes(args.out, data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def cmd_summarize(args, log: _Logger) -> int:
    corpus = load_corpus(args.infile).at_stage("pruned")
    overrides = _load_params(args.params).get(args.system, {})
    extracts: dict[str, dict] = {}
    failures: list[dict] = []
    for blog in corpus.blogs:
        cands = split_candidates(blog)
        try:
            budget = budget_for(blog, args.budget_mode)
            extract = SYSTEMS[args.system](cands, budget, **overrides)
        except (LiveBlogError, ValueError) as exc:
            failures.append({"blog_id": blog.blog_id, "error": type(exc).__name__,
                             "detail": str(exc)})
            log.emit({"event": "failure", "blog_id": blog.blog_id,
                      "reason": type(exc).__name__})
            continue
        extracts[blog.blog_id] = {
            "budget": budget,
            "sentence_ids": list(extract.sentence_ids),
            "total_words": extract.total_words,
            "text": " ".join(c.text for c in cands if c.sent_id in extract.sentence_ids),
        }
    payload = {"system": args.system, "budget_mode": args.budget_mode,
               "params": overrides, "extracts": extracts, "failures": failures}
    atomic_write_bytes(args.out, canonical_json_bytes(payload))
    log.emit({"event": "summarize", "system": args.system,
              "topics": len(extracts), "failures": len(failures)})
    return EXIT_OK


def cmd_evaluate(args, log: _Logger) -> int:
    corpus = load_corpus(args.infile).at_stage("pruned")
    systems = None if args.systems == "all" else args.systems.split(",")
    modes = args.modes.split(",")
    params = _load_params(args.params)
    report = run_benchmark(corpus, systems=systems, modes=modes, params=params,
                           jobs=args.jobs, dump_dir=args.dump_ilp)
    atomic_write_bytes(args.out, report.to_bytes())
    if args.md:
        atomic_write_bytes(args.md, report.to_markdown().encode("utf-8"))
    for failure in report.failures:
        log.emit({"event": "failure", **failure})
    log.emit({"event": "evaluate", "topics": report.n_topics,
              "failures": len(report.failures)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liveblogsum",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    crawl = sub.add_parser("crawl", help="discover live-blog URLs from seed terms")
    crawl.add_argument("--seeds", required=True, help="seed terms, one per line")
    crawl.add_argument("--pattern", required=True, help="URL pattern name")
    crawl.add_argument("--patterns", default=None, help="alternate patterns.json")
    crawl.add_argument("--backend", choices=("fixture", "live"), default="fixture")
    crawl.add_argument("--fixture", default=None, help="fixture backend JSON file")
    crawl.add_argument("--out", required=True, help="crawled-stage corpus path")
    crawl.add_argument("--max-iter", type=int, default=10)
    crawl.add_argument("--html-out", default=None, help="directory for raw pages")
    crawl.add_argument("--audit", default=None, help="audit log path (JSON lines)")
    crawl.add_argument("--created-at", default=None, help="pin corpus created_at")
    crawl.set_defaults(func=cmd_crawl)

    parse = sub.add_parser("parse", help="extract summaries and snippets from HTML")
    parse.add_argument("--in", dest="infile", required=True)
    parse.add_argument("--profile", required=True, help="site profile name or path")
    parse.add_argument("--html-dir", required=True)
    parse.add_argument("--out", required=True)
    parse.set_defaults(func=cmd_parse)

    prune = sub.add_parser("prune", help="drop multi-topic, excluded-genre, thin-summary blogs")
    prune.add_argument("--in", dest="infile", required=True)
    prune.add_argument("--profile", default=None, help="defaults to the corpus source")
    prune.add_argument("--out", required=True)
    prune.add_argument("--report", default=None, help="prune report JSON path")
    prune.set_defaults(func=cmd_prune)

    stats = sub.add_parser("stats", help="corpus statistics and heterogeneity")
    stats.add_argument("--in", dest="infile", required=True)
    stats.add_argument("--out", default=None, help="stdout when omitted")
    stats.set_defaults(func=cmd_stats)

    summarize = sub.add_parser("summarize", help="run one extractive system")
    summarize.add_argument("--in", dest="infile", required=True)
    summarize.add_argument("--system", required=True, choices=sorted(SYSTEMS))
    summarize.add_argument("--budget-mode", choices=MODES, default="L")
    summarize.add_argument("--params", default=None, help="JSON overrides per system")
    summarize.add_argument("--out", required=True)
    summarize.set_defaults(func=cmd_summarize)

    evaluate = sub.add_parser("evaluate", help="full benchmark with upper bounds")
    evaluate.add_argument("--in", dest="infile", required=True)
    evaluate.add_argument("--systems", default="all", help="comma list or 'all'")
    evaluate.add_argument("--modes", default="L,2L")
    evaluate.add_argument("--params", default=None)
    evaluate.add_argument("--out", required=True)
    evaluate.add_argument("--md", default=None, help="markdown table path")
    evaluate.add_argument("--jobs", type=int, default=1)
    evaluate.add_argument("--dump-ilp", default=None, help="directory for instance dumps")
    evaluate.set_defaults(func=cmd_evaluate)

    for command in (crawl, parse, prune, stats, summarize, evaluate):
        command.add_argument("--log", default=None, help="JSON-lines log file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    log = _Logger(args.log)
    try:
        return args.func(args, log)
    except StageError as exc:
        log.emit({"event": "error", "kind": "stage", "detail": str(exc)})
        return EXIT_USAGE
    except (EmptyTermSet, SchemaError, EmptySummary) as exc:
        log.emit({"event": "error", "kind": "contract", "detail": str(exc)})
        return EXIT_USAGE
    except FileNotFoundError as exc:
        log.emit({"event": "error", "kind": "missing-file", "detail": str(exc)})
        return EXIT_USAGE
    except (LiveBlogError, ValueError) as exc:
        log.emit({"event": "error", "kind": type(exc).__name__, "detail": str(exc)})
        return EXIT_RUNTIME
    except OSError as exc:
        log.emit({"event": "error", "kind": "io", "detail": str(exc)})
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
