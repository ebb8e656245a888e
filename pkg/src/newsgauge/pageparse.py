"""Lenient HTML parsing: body text, hyperlinks, resource URLs and an
element inventory for adblock-rule matching.

Built on the stdlib ``html.parser`` which repairs malformed markup instead
of rejecting it; crawl data is dirty and parsing must never fail on it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser
from urllib.parse import urldefrag, urljoin, urlsplit

from .errors import EmptyDocument, UrlError

_BLOCK_TAGS = frozenset(
    "p div br li ul ol h1 h2 h3 h4 h5 h6 tr table td th section article"
    " header footer blockquote pre hr nav aside figure figcaption main"
    " dd dt dl form fieldset address".split()
)
_SKIP_TEXT_TAGS = frozenset(("script", "style", "noscript", "template"))
_RESOURCE_TAGS = frozenset(("script", "img", "iframe"))
_VOID_TAGS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)


@dataclass(frozen=True)
class ParsedPage:
    """Everything the feature extractors need from one web page."""

    body_text: str
    hrefs: tuple[tuple[str, str], ...]
    resource_urls: tuple[str, ...]
    element_inventory: tuple[tuple[str, frozenset[str], str | None], ...]


class _Collector(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[tuple[bool, str]] = []  # (inside body, text piece)
        self.hrefs: list[tuple[str, str]] = []
        self.resources: list[str] = []
        self.inventory: list[tuple[str, frozenset[str], str | None]] = []
        self.body_depth = 0
        self.saw_body = False
        self.skip_depth = 0
        self._anchor_href: str | None = None
        self._anchor_text: list[str] = []

    # -- elements ---------------------------------------------------------
    def _record(self, tag: str, attrs) -> None:
        if not tag:
            return
        amap = {}
        for k, v in attrs:
            if k not in amap:  # first occurrence wins
                amap[k] = v or ""
        classes = frozenset(amap.get("class", "").split())
        elem_id = amap.get("id") or None
        self.inventory.append((tag, classes, elem_id))
        if tag in _RESOURCE_TAGS and amap.get("src"):
            self.resources.append(amap["src"])
        if tag == "a":
            self._flush_anchor()
            if "href" in amap:
                self._anchor_href = amap["href"]
                self._anchor_text = []

    def _flush_anchor(self) -> None:
        if self._anchor_href is not None:
            self.hrefs.append((self._anchor_href, " ".join("".join(self._anchor_text).split())))
        self._anchor_href = None
        self._anchor_text = []

    def handle_starttag(self, tag, attrs):
        self._record(tag, attrs)
        if tag == "body":
            self.body_depth += 1
            self.saw_body = True
        if tag in _SKIP_TEXT_TAGS:
            self.skip_depth += 1
        if tag in _BLOCK_TAGS:
            self.parts.append((self.body_depth > 0, "\n"))

    def handle_startendtag(self, tag, attrs):
        self._record(tag, attrs)
        if tag in _BLOCK_TAGS:
            self.parts.append((self.body_depth > 0, "\n"))

    def handle_endtag(self, tag):
        if tag == "body" and self.body_depth > 0:
            self.body_depth -= 1
        if tag in _SKIP_TEXT_TAGS and self.skip_depth > 0:
            self.skip_depth -= 1
        if tag == "a":
            self._flush_anchor()
        if tag in _BLOCK_TAGS:
            self.parts.append((self.body_depth > 0, "\n"))

    # -- text ---------------------------------------------------------------
    def handle_data(self, data):
        if self.skip_depth or not data:
            return
        self.parts.append((self.body_depth > 0, data))
        if self._anchor_href is not None:
            self._anchor_text.append(data)

    def close(self):
        super().close()
        self._flush_anchor()


def _normalise(pieces: list[str]) -> str:
    text = "".join(pieces)
    # collapse horizontal whitespace, keep block newlines, drop blank lines
    text = re.sub(r"[ \t\r\f\v]+", " ", text)
    lines = [ln.strip() for ln in text.split("\n")]
    return "\n".join(ln for ln in lines if ln)


def parse_page(html: bytes, base_url: str = "") -> ParsedPage:
    """Extract text, links, resources and the element inventory.

    Text is every text node in document order (scripts/styles excluded),
    restricted to ``<body>`` when one exists; whitespace is collapsed and
    block-level elements contribute newlines.  Raw bytes are decoded as
    UTF-8 with replacement characters.
    """
    if isinstance(html, str):
        html = html.encode("utf-8")
    if not html or not html.strip():
        raise EmptyDocument("no HTML content")
    text = html.decode("utf-8", errors="replace")
    collector = _Collector()
    try:
        collector.feed(text)
        collector.close()
    except Exception:
        pass  # keep whatever was collected from malformed input
    if collector.saw_body:
        pieces = [t for in_body, t in collector.parts if in_body]
    else:
        pieces = [t for _, t in collector.parts]
    return ParsedPage(
        body_text=_normalise(pieces),
        hrefs=tuple(collector.hrefs),
        resource_urls=tuple(collector.resources),
        element_inventory=tuple(collector.inventory),
    )


def resolve_url(raw: str, base_url: str) -> str:
    """Resolve a possibly-relative URL against an absolute base; the
    fragment is stripped.  Non-fetchable schemes raise UrlError."""
    if raw is None:
        raise UrlError("missing URL")
    raw = raw.strip()
    if not raw:
        raise UrlError("empty URL")
    try:
        resolved = urljoin(base_url, raw)
        resolved, _ = urldefrag(resolved)
        parts = urlsplit(resolved)
    except ValueError as exc:
        raise UrlError(f"unparseable URL {raw!r}: {exc}") from exc
    if parts.scheme not in ("http", "https"):
        raise UrlError(f"non-fetchable scheme in {raw!r}")
    if not parts.netloc:
        raise UrlError(f"no host in resolved URL {resolved!r}")
    return resolved
