"""Adblock filter parsing and the four social-monetisation features:
advertisement count, external link count, Facebook links, Twitter/X links.

Only the filter subset needed for counting is supported: element-hide rules
with simple selectors and basic URL-block rules.  Exceptions and option
syntax are skipped and tallied in the parse summary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from urllib.parse import urlsplit

from .domains import SuffixList, default_suffix_list, registered_domain
from .pageparse import ParsedPage

_SELECTOR_RE = re.compile(
    r"^(?:\.[\w-]+|#[\w-]+|[A-Za-z][A-Za-z0-9]*\.[\w-]+)$", re.ASCII
)
_DOMAIN_ANCHOR_RE = re.compile(r"^\|\|([A-Za-z0-9.-]+)\^$")
_PLAIN_PATTERN_RE = re.compile(r"^[^*^|]+$")

_SOCIAL_FB = frozenset(("facebook.com",))
_SOCIAL_TWITTER = frozenset(("twitter.com", "x.com"))


@dataclass(frozen=True)
class FilterRule:
    kind: str  # "element_hide" | "url_block"
    source_line: str
    selector: str | None = None  # element_hide only
    pattern: str | None = None  # url_block only

    def matches_element(self, tag: str, classes: frozenset[str], elem_id: str | None) -> bool:
        if self.kind != "element_hide":
            return False
        sel = self.selector
        if sel.startswith("."):
            return sel[1:] in classes
        if sel.startswith("#"):
            return elem_id == sel[1:]
        want_tag, _, want_class = sel.partition(".")
        return tag == want_tag and want_class in classes

    def matches_url(self, url: str) -> bool:
        if self.kind != "url_block":
            return False
        if self.pattern.startswith("||"):
            domain = self.pattern[2:-1]
            host = (urlsplit(url).hostname or "").lower()
            return host == domain or host.endswith("." + domain)
        return self.pattern in url


@dataclass
class FilterListParse:
    """Rules in file order plus a tally of skipped lines by reason."""

    rules: list[FilterRule] = field(default_factory=list)
    skipped: dict[str, int] = field(default_factory=dict)

    def _skip(self, reason: str) -> None:
        self.skipped[reason] = self.skipped.get(reason, 0) + 1

    @property
    def n_skipped(self) -> int:
        return sum(self.skipped.values())


def parse_filter_list(text: str) -> FilterListParse:
    """Parse an EasyList-compatible subset, one rule per line.

    Comments (``!``), exceptions (``@@`` and ``#@#``), ``$``-option rules,
    domain-limited hides and anything else outside the supported subset are
    skipped and counted, never an error.
    """
    result = FilterListParse()
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("!") or line.startswith("["):
            result._skip("comment")
            continue
        if line.startswith("@@"):
            result._skip("exception")
            continue
        if "#@#" in line:
            result._skip("exception")
            continue
        if "#?#" in line or "#$#" in line:
            result._skip("unsupported")
            continue
        if "##" in line:
            prefix, _, selector = line.partition("##")
            if prefix:
                result._skip("domain_limited")
            elif _SELECTOR_RE.match(selector):
                result.rules.append(
                    FilterRule("element_hide", source_line=line, selector=selector)
                )
            else:
                result._skip("unsupported")
            continue
        if "$" in line:
            result._skip("option_syntax")
            continue
        if _DOMAIN_ANCHOR_RE.match(line):
            result.rules.append(FilterRule("url_block", source_line=line, pattern=line))
            continue
        if _PLAIN_PATTERN_RE.match(line):
            result.rules.append(FilterRule("url_block", source_line=line, pattern=line))
            continue
        result._skip("unsupported")
    return result


def serialise_filter_list(rules) -> str:
    return "\n".join(r.source_line for r in _as_rules(rules))


def _as_rules(rules) -> list[FilterRule]:
    if isinstance(rules, FilterListParse):
        return rules.rules
    return list(rules)


def load_default_filter_list() -> FilterListParse:
    from .resources import data_text

    return parse_filter_list(data_text("adblock_rules.txt"))


@dataclass(frozen=True)
class MonetisationFeatures:
    ads: int
    ext_total: int
    fb: int
    twit: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.ads, self.ext_total, self.fb, self.twit)


FEATURE_NAMES = ("ads", "ext_total", "fb", "twit")


def count_ads(page: ParsedPage, rules) -> int:
    """Inventory entries hit by any hide rule plus resource URLs hit by any
    block rule; an entry or URL matched by several rules counts once."""
    rules = _as_rules(rules)
    hide = [r for r in rules if r.kind == "element_hide"]
    block = [r for r in rules if r.kind == "url_block"]
    n = 0
    for tag, classes, elem_id in page.element_inventory:
        if any(r.matches_element(tag, classes, elem_id) for r in hide):
            n += 1
    for url in page.resource_urls:
        if any(r.matches_url(url) for r in block):
            n += 1
    return n


def _href_registered_domain(raw: str, suffixes: SuffixList) -> str | None:
    """Registered domain of an absolute http(s) href; None for relative
    links and non-fetchable schemes."""
    raw = (raw or "").strip()
    if not raw:
        return None
    if raw.startswith("//"):
        raw = "http:" + raw
    parts = urlsplit(raw)
    if parts.scheme not in ("http", "https") or not parts.hostname:
        return None
    return suffixes.registered_domain(parts.hostname)


def count_external_links(page: ParsedPage, host_url: str,
                         suffixes: SuffixList | None = None) -> int:
    """Hrefs whose registered domain differs from the host's.

    Relative links and same-registered-domain subdomains are internal;
    non-http(s) schemes are ignored.
    """
    suffixes = suffixes or default_suffix_list()
    host_rd = registered_domain(host_url, suffixes)
    n = 0
    for raw, _text in page.hrefs:
        rd = _href_registered_domain(raw, suffixes)
        if rd is not None and rd != host_rd:
            n += 1
    return n


def count_social_links(page: ParsedPage,
                       suffixes: SuffixList | None = None) -> tuple[int, int]:
    """(facebook, twitter/x) link counts; each href lands in at most one."""
    suffixes = suffixes or default_suffix_list()
    fb = twit = 0
    for raw, _text in page.hrefs:
        rd = _href_registered_domain(raw, suffixes)
        if rd in _SOCIAL_FB:
            fb += 1
        elif rd in _SOCIAL_TWITTER:
            twit += 1
    return fb, twit


def extract_monetisation(page: ParsedPage, host_url: str, rules,
                         suffixes: SuffixList | None = None) -> MonetisationFeatures:
    suffixes = suffixes or default_suffix_list()
    fb, twit = count_social_links(page, suffixes)
    return MonetisationFeatures(
        ads=count_ads(page, rules),
        ext_total=count_external_links(page, host_url, suffixes),
        fb=fb,
        twit=twit,
    )
