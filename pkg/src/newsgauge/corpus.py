"""Corpus ingestion: labelled article records, source-label aggregation,
per-source capping, size filtering, balanced sampling and archive-first
page fetching.

Records persist as JSON lines (one object per record, html base64-encoded)
so corpora are stream-appendable and diffable.
"""

from __future__ import annotations

import base64
import csv
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from urllib.parse import urlsplit

from .domains import registered_domain
from .errors import FetchFailed, InvalidInput, InsufficientClass, NotHtml, SchemaError

LABELS = ("fake", "true")
ASSESSOR_LABELS = ("unreliable", "mixed", "reliable")
SIZE_FILTER_BYTES = 3072  # pages under 3 KiB are assumed gutted

_EXCLUDED_LINK_DOMAINS = frozenset(("twitter.com", "x.com", "youtube.com"))


@dataclass(frozen=True)
class ArticleRecord:
    """One fetched, labelled document."""

    id: str
    url: str
    source: str
    label: str
    html: bytes = b""
    body_text: str = ""
    country: str | None = None
    fetched_via: str = "live"

    def __post_init__(self):
        if self.label not in LABELS:
            raise InvalidInput(f"label must be one of {LABELS}, got {self.label!r}")
        if self.fetched_via not in ("archive", "live"):
            raise InvalidInput(f"bad fetched_via {self.fetched_via!r}")
        parts = urlsplit(self.url)
        if not parts.scheme or not parts.netloc:
            raise InvalidInput(f"url must be absolute, got {self.url!r}")

    @property
    def html_size(self) -> int:
        return len(self.html)

    def to_json(self) -> str:
        return json.dumps(
            {
                "id": self.id,
                "url": self.url,
                "source": self.source,
                "label": self.label,
                "country": self.country,
                "fetched_via": self.fetched_via,
                "html": base64.b64encode(self.html).decode("ascii"),
                "body_text": self.body_text,
                "html_size": self.html_size,
            },
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "ArticleRecord":
        obj = json.loads(line)
        return cls(
            id=obj["id"],
            url=obj["url"],
            source=obj["source"],
            label=obj["label"],
            country=obj.get("country"),
            fetched_via=obj.get("fetched_via", "live"),
            html=base64.b64decode(obj.get("html", "")),
            body_text=obj.get("body_text", ""),
        )


def write_records(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")


def read_records(path) -> list[ArticleRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(ArticleRecord.from_json(line))
    return out


# ---------------------------------------------------------------------------
# Source labels


def read_label_table(path) -> dict[str, list[str]]:
    """CSV with header ``source,assessor,label`` -> source -> assessor labels."""
    table: dict[str, list[str]] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for col in ("source", "assessor", "label"):
            if col not in fields:
                raise SchemaError(f"label table missing column {col!r}")
        for row in reader:
            source = (row["source"] or "").strip()
            label = (row["label"] or "").strip().lower()
            if not source:
                raise SchemaError("label table has an empty source")
            if label not in ASSESSOR_LABELS:
                raise SchemaError(f"unknown assessor label {label!r}")
            table.setdefault(source, []).append(label)
    return table


def aggregate_source_label(assessor_labels) -> str:
    """Strict majority of assessor labels; any tie at the top is 'mixed'."""
    labels = list(assessor_labels)
    if not labels:
        raise InvalidInput("no assessor labels to aggregate")
    counts: dict[str, int] = {}
    for lab in labels:
        if lab not in ASSESSOR_LABELS:
            raise InvalidInput(f"unknown assessor label {lab!r}")
        counts[lab] = counts.get(lab, 0) + 1
    top = max(counts.values())
    leaders = [lab for lab, c in counts.items() if c == top]
    return leaders[0] if len(leaders) == 1 else "mixed"


def binary_label(aggregated: str) -> str | None:
    """Map an aggregated source label onto the binary scheme; 'mixed' drops."""
    return {"unreliable": "fake", "reliable": "true"}.get(aggregated)


# ---------------------------------------------------------------------------
# Filtering and capping


def passes_size_filter(html: bytes) -> bool:
    return len(html) >= SIZE_FILTER_BYTES


def nearest_rank_quantile(values, quantile: float) -> int:
    """Lower nearest-rank quantile of a list of counts."""
    if not 0 < quantile < 1:
        raise InvalidInput(f"quantile must be in (0,1), got {quantile}")
    ordered = sorted(values)
    if not ordered:
        raise InvalidInput("no values for quantile")
    rank = max(1, math.ceil(quantile * len(ordered)))
    return ordered[rank - 1]


def cap_per_source(records, quantile: float, seed: int):
    """Limit every source to the quantile of per-source record counts.

    Sources at or below the threshold are untouched; larger sources are
    downsampled without replacement with a per-source seeded draw, so the
    result does not depend on source iteration order.
    """
    records = list(records)
    if not records:
        return []
    by_source: dict[str, list[ArticleRecord]] = {}
    for rec in records:
        by_source.setdefault(rec.source, []).append(rec)
    threshold = nearest_rank_quantile([len(v) for v in by_source.values()], quantile)
    keep_ids: set[str] = set()
    for source in sorted(by_source):
        group = by_source[source]
        if len(group) <= threshold:
            keep_ids.update(r.id for r in group)
        else:
            rng = random.Random(f"{seed}:{source}")
            keep_ids.update(r.id for r in rng.sample(group, threshold))
    return [r for r in records if r.id in keep_ids]


def filter_external_rows(rows):
    """Keep US/UK rows and drop tweet/video links.

    Rows are mappings carrying a country field (``public_shares_top_country``
    or ``country``) and a URL field (``clean_url`` or ``url``).
    """
    kept = []
    for row in rows:
        country_field = _pick_field(row, ("public_shares_top_country", "country"))
        url_field = _pick_field(row, ("clean_url", "url"))
        country = (row[country_field] or "").strip().upper()
        url = (row[url_field] or "").strip()
        if country not in ("US", "UK"):
            continue
        rd = registered_domain(url)
        if rd in _EXCLUDED_LINK_DOMAINS:
            continue
        if "/video" in urlsplit(url).path.lower():
            continue
        kept.append(row)
    return kept


def _pick_field(row, candidates) -> str:
    for name in candidates:
        if name in row:
            return name
    raise SchemaError(f"row missing field {candidates[0]!r}")


def read_external_rows(path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        if "clean_url" not in fields:
            raise SchemaError("external rows missing field 'clean_url'")
        if "public_shares_top_country" not in fields:
            raise SchemaError("external rows missing field 'public_shares_top_country'")
        return list(reader)


# ---------------------------------------------------------------------------
# Manifests and balanced sampling


@dataclass
class DatasetManifest:
    name: str
    records: list[str]  # ArticleRecord ids
    class_counts: dict[str, int]
    seed: int
    labels: dict[str, str] = field(default_factory=dict)  # id -> label

    @classmethod
    def from_records(cls, name: str, records, seed: int) -> "DatasetManifest":
        ids = [r.id for r in records]
        labels = {r.id: r.label for r in records}
        counts: dict[str, int] = {}
        for r in records:
            counts[r.label] = counts.get(r.label, 0) + 1
        return cls(name=name, records=ids, class_counts=counts, seed=seed, labels=labels)

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "records": self.records,
                "class_counts": self.class_counts,
                "seed": self.seed,
                "labels": self.labels,
            },
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, text: str) -> "DatasetManifest":
        obj = json.loads(text)
        return cls(
            name=obj["name"],
            records=list(obj["records"]),
            class_counts={k: int(v) for k, v in obj["class_counts"].items()},
            seed=int(obj["seed"]),
            labels=dict(obj.get("labels", {})),
        )


def balanced_sample(manifest: DatasetManifest, n_per_class: int, seed: int) -> DatasetManifest:
    """Exactly ``n_per_class`` ids per class, sampled without replacement."""
    by_class: dict[str, list[str]] = {}
    for rid in manifest.records:
        by_class.setdefault(manifest.labels[rid], []).append(rid)
    chosen: list[str] = []
    for label in sorted(by_class):
        pool = by_class[label]
        if len(pool) < n_per_class:
            raise InsufficientClass(label, len(pool), n_per_class)
        rng = random.Random(f"{seed}:{label}")
        chosen.extend(rng.sample(pool, n_per_class))
    chosen_set = set(chosen)
    ids = [rid for rid in manifest.records if rid in chosen_set]
    return DatasetManifest(
        name=f"{manifest.name}-balanced{n_per_class}",
        records=ids,
        class_counts={lab: n_per_class for lab in sorted(by_class)},
        seed=seed,
        labels={rid: manifest.labels[rid] for rid in ids},
    )


def balanced_sample_records(records, n_per_class: int, seed: int):
    """Record-level counterpart of :func:`balanced_sample`."""
    manifest = DatasetManifest.from_records("tmp", records, seed)
    picked = set(balanced_sample(manifest, n_per_class, seed).records)
    return [r for r in records if r.id in picked]


# ---------------------------------------------------------------------------
# Fetching


@dataclass(frozen=True)
class FetchResponse:
    status: int
    content_type: str
    body: bytes


ARCHIVE_AVAILABILITY = "https://archive.org/wayback/available?url="


def _requests_get(url: str, timeout: float) -> FetchResponse:
    import requests

    resp = requests.get(url, timeout=timeout)
    return FetchResponse(
        status=resp.status_code,
        content_type=resp.headers.get("Content-Type", ""),
        body=resp.content,
    )


def fetch_article(
    url: str,
    http_get=None,
    timeout: float = 10.0,
    retries: int = 1,
    archive_endpoint: str = ARCHIVE_AVAILABILITY,
) -> tuple[bytes, str]:
    """Fetch raw page bytes, preferring an archive snapshot over the live URL.

    Returns ``(html_bytes, provenance)`` with provenance ``archive`` or
    ``live``.  Raises NotHtml when the fetched content type is not HTML and
    FetchFailed when both routes fail.
    """
    parts = urlsplit(url)
    if not parts.scheme or not parts.netloc:
        raise InvalidInput(f"url must be absolute, got {url!r}")
    get = http_get or _requests_get

    snapshot_url = None
    try:
        avail = _retrying(get, archive_endpoint + url, timeout, retries)
        if avail.status == 200:
            info = json.loads(avail.body.decode("utf-8", errors="replace"))
            closest = info.get("archived_snapshots", {}).get("closest", {})
            if closest.get("available") and closest.get("url"):
                snapshot_url = closest["url"]
    except Exception:
        snapshot_url = None  # archive lookup failure falls through to live

    if snapshot_url:
        try:
            resp = _retrying(get, snapshot_url, timeout, retries)
            if resp.status == 200:
                _require_html(url, resp)
                return resp.body, "archive"
        except NotHtml:
            raise
        except Exception:
            pass

    try:
        resp = _retrying(get, url, timeout, retries)
    except Exception as exc:
        raise FetchFailed(url, str(exc)) from exc
    if resp.status != 200:
        raise FetchFailed(url, f"live fetch returned status {resp.status}")
    _require_html(url, resp)
    return resp.body, "live"


def _require_html(url: str, resp: FetchResponse) -> None:
    ctype = (resp.content_type or "").lower()
    if ctype and "html" not in ctype:
        raise NotHtml(url, resp.content_type)


def _retrying(get, url: str, timeout: float, retries: int) -> FetchResponse:
    last_exc = None
    for _ in range(max(1, retries)):
        try:
            return get(url, timeout)
        except Exception as exc:  # noqa: BLE001 - transport errors retried
            last_exc = exc
    raise last_exc


def fetch_many(
    urls,
    http_get=None,
    timeout: float = 10.0,
    retries: int = 1,
    max_in_flight: int = 8,
    delay: float = 0.0,
):
    """Fetch several URLs concurrently with a bounded in-flight limit.

    Returns ``{url: (html, provenance) | exception}`` preserving every
    outcome; a polite per-submission delay can be configured.
    """
    results: dict[str, object] = {}

    def task(u):
        if delay:
            time.sleep(delay)
        return fetch_article(u, http_get=http_get, timeout=timeout, retries=retries)

    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        futures = {u: pool.submit(task, u) for u in urls}
        for u, fut in futures.items():
            try:
                results[u] = fut.result()
            except Exception as exc:  # noqa: BLE001 - callers inspect outcomes
                results[u] = exc
    return results


def with_body_text(record: ArticleRecord, body_text: str) -> ArticleRecord:
    return replace(record, body_text=body_text)
