"""Registered-domain (eTLD+1) extraction against a pinned suffix snapshot."""

from __future__ import annotations

from functools import lru_cache
from urllib.parse import urlsplit

from .resources import data_text


class SuffixList:
    """Public-suffix rules: plain suffixes, ``*.`` wildcards, ``!`` exceptions."""

    def __init__(self, text: str):
        self.rules: set[tuple[str, ...]] = set()
        self.exceptions: set[tuple[str, ...]] = set()
        for line in text.splitlines():
            line = line.strip().lower()
            if not line or line.startswith("//"):
                continue
            if line.startswith("!"):
                self.exceptions.add(tuple(line[1:].split(".")))
            else:
                self.rules.add(tuple(line.split(".")))

    def public_suffix_len(self, labels: tuple[str, ...]) -> int:
        """Number of labels in the public suffix of a label tuple."""
        best = 1  # implicit "*" rule: the bare TLD
        for take in range(1, len(labels) + 1):
            tail = labels[-take:]
            if tail in self.exceptions:
                return take - 1
            if tail in self.rules:
                best = max(best, take)
            elif take >= 2 and (("*",) + tail[1:]) in self.rules:
                best = max(best, take)
        return best

    def registered_domain(self, host: str) -> str | None:
        """eTLD+1 of a hostname, or None when the host is a bare suffix."""
        host = host.strip().lower().rstrip(".")
        if not host or "." not in host:
            return None
        labels = tuple(host.split("."))
        if any(not lab for lab in labels):
            return None
        ps = self.public_suffix_len(labels)
        if len(labels) <= ps:
            return None
        return ".".join(labels[-(ps + 1):])


@lru_cache(maxsize=1)
def default_suffix_list() -> SuffixList:
    return SuffixList(data_text("public_suffix_list.dat"))


def registered_domain(url_or_host: str, suffixes: SuffixList | None = None) -> str | None:
    """Registered domain of a URL or bare hostname ('' scheme tolerated)."""
    suffixes = suffixes or default_suffix_list()
    host = url_or_host
    if "//" in url_or_host or url_or_host.startswith(("http:", "https:")):
        host = urlsplit(url_or_host).hostname or ""
    elif "/" in url_or_host:
        host = url_or_host.split("/", 1)[0]
    return suffixes.registered_domain(host)
