"""Tolerant HTML tree + a small selector engine for site profiles.

Real live-blog archives are full of unclosed tags and vendor markup, so
the parser never raises on malformed structure: stray end tags are
ignored, void elements never nest, and unclosed siblings (<p>, <li>,
table cells) are closed implicitly. Selectors cover what profiles
need and nothing more: tag names, .class, [attr=value], the descendant
combinator, and a trailing @attr to read an attribute instead of text.
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

from .errors import NotHtml

_VOID = frozenset("""
    area base br col embed hr img input link meta param source track wbr
""".split())

# implicit end tags: a new <p> closes an open <p>, a new <li> an open
# <li>, and so on, mirroring how browsers repair unclosed siblings
_CLOSES = {
    "p": frozenset({"p"}),
    "li": frozenset({"li"}),
    "dt": frozenset({"dt", "dd"}),
    "dd": frozenset({"dt", "dd"}),
    "tr": frozenset({"tr", "td", "th"}),
    "td": frozenset({"td", "th"}),
    "th": frozenset({"td", "th"}),
    "option": frozenset({"option"}),
}

_P_CLOSERS = frozenset("""
    address article aside blockquote details div dl fieldset figcaption
    figure footer form h1 h2 h3 h4 h5 h6 header hr li main menu nav ol
    p pre section table ul
""".split())

_BLOCK = frozenset("""
    p div li ul ol h1 h2 h3 h4 h5 h6 br tr td th table article section
    blockquote figure figcaption pre dd dt dl main time
""".split())

_WS_RE = re.compile(r"\s+")


class Node:
    __slots__ = ("tag", "attrs", "children")

    def __init__(self, tag: str, attrs: dict[str, str]):
        self.tag = tag
        self.attrs = attrs
        self.children: list = []  # Node or str

    def __repr__(self):
        return f"<Node {self.tag} {self.attrs}>"

    def iter_nodes(self):
        """Self plus all descendant elements, document order."""
        yield self
        for child in self.children:
            if isinstance(child, Node):
                yield from child.iter_nodes()

    def text(self) -> str:
        chunks: list[str] = []
        for child in self.children:
            if isinstance(child, str):
                chunks.append(child)
            else:
                chunks.append(child.text())
        return _WS_RE.sub(" ", " ".join(chunks)).strip()

    def classes(self) -> set[str]:
        return set(self.attrs.get("class", "").split())


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Node("#document", {})
        self.stack = [self.root]
        self.saw_tag = False

    def handle_starttag(self, tag, attrs):
        self.saw_tag = True
        while len(self.stack) > 1:
            top = self.stack[-1].tag
            if top in _CLOSES.get(tag, ()) or (top == "p" and tag in _P_CLOSERS):
                self.stack.pop()
            else:
                break
        node = Node(tag, {k: (v if v is not None else "") for k, v in attrs})
        self.stack[-1].children.append(node)
        if tag not in _VOID:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        self.saw_tag = True
        self.stack[-1].children.append(Node(tag, {k: (v if v is not None else "") for k, v in attrs}))

    def handle_endtag(self, tag):
        for depth in range(len(self.stack) - 1, 0, -1):
            if self.stack[depth].tag == tag:
                del self.stack[depth:]
                return
        # stray close tag: tolerate

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def _ensure_texty(payload: str) -> None:
    if "\x00" in payload:
        raise NotHtml("payload contains NUL bytes")
    head = payload[:2000]
    if head:
        controls = sum(1 for ch in head if ord(ch) < 32 and ch not in "\t\n\r\f")
        if controls / len(head) > 0.05:
            raise NotHtml("payload looks binary (control characters)")


def parse_html(html: str) -> Node:
    """Parse leniently; raises NotHtml only for binary-looking payloads."""
    _ensure_texty(html)
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    return builder.root


_STEP_RE = re.compile(
    r"^(?P<tag>[a-zA-Z][\w-]*)?"
    r"(?P<classes>(?:\.[\w-]+)*)"
    r"(?P<attrs>(?:\[[\w:.-]+=[^\]]*\])*)$"
)
_ATTR_RE = re.compile(r"\[([\w:.-]+)=([^\]]*)\]")


class _Step:
    __slots__ = ("tag", "classes", "attrs")

    def __init__(self, raw: str):
        match = _STEP_RE.match(raw)
        if not match or not raw:
            raise ValueError(f"unsupported selector step: {raw!r}")
        self.tag = match.group("tag")
        self.classes = set(match.group("classes").replace(".", " ").split())
        self.attrs = _ATTR_RE.findall(match.group("attrs"))

    def matches(self, node: Node) -> bool:
        if self.tag and node.tag != self.tag:
            return False
        if self.classes and not self.classes <= node.classes():
            return False
        for key, value in self.attrs:
            if node.attrs.get(key) != value:
                return False
        return True


def _split_selector(selector: str) -> tuple[list[_Step], str | None]:
    attr = None
    if "@" in selector:
        selector, attr = selector.rsplit("@", 1)
    steps = [_Step(part) for part in selector.split()]
    if not steps:
        raise ValueError("empty selector")
    return steps, attr


def _select_steps(root: Node, steps: list[_Step]) -> list[Node]:
    current = [root]
    for step in steps:
        found: list[Node] = []
        seen: set[int] = set()
        for base in current:
            for node in base.iter_nodes():
                if node is base:
                    continue
                if step.matches(node) and id(node) not in seen:
                    seen.add(id(node))
                    found.append(node)
        current = found
    return current


def select(root: Node, selector: str) -> list[Node]:
    """All elements matching a descendant-combinator selector, document order.
    A trailing @attr (if present) is ignored here; use extract for values."""
    steps, _ = _split_selector(selector)
    return _select_steps(root, steps)


def extract(root: Node, selector: str) -> list[str]:
    """Matched elements' text, or their @attr values when the selector
    ends with one; empty strings are dropped."""
    steps, attr = _split_selector(selector)
    values = []
    for node in _select_steps(root, steps):
        value = node.attrs.get(attr, "") if attr else node.text()
        value = _WS_RE.sub(" ", value).strip()
        if value:
            values.append(value)
    return values


_DROP = frozenset("""
    script style nav header footer aside form noscript iframe svg button
    template object applet
""".split())


def _collect_text(node: Node, out: list[str]) -> None:
    for child in node.children:
        if isinstance(child, str):
            out.append(child)
        elif child.tag in _DROP:
            continue
        else:
            block = child.tag in _BLOCK
            if block:
                out.append("\n")
            _collect_text(child, out)
            if block:
                out.append("\n")


def _normalize_lines(text: str) -> str:
    lines = []
    for raw in text.split("\n"):
        line = _WS_RE.sub(" ", raw).strip()
        if line:
            lines.append(line)
    return "\n".join(lines)


def strip_boilerplate(html: str) -> str:
    """Visible main-content text, one line per block element.

    Scripts, styles, navigation, forms and similar chrome are dropped.
    A payload with no markup at all passes through (normalized), which
    also makes the operation idempotent: output text has no tags.
    """
    _ensure_texty(html)
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    if not builder.saw_tag:
        return _normalize_lines(html)
    out: list[str] = []
    _collect_text(builder.root, out)
    return _normalize_lines("".join(out))
