"""Canonical source identities.

One real-world artifact must map to exactly one graph node, no matter how a
reader spelled its DOI, URL, or title. Citation servers get this wrong in
well-documented ways (scheme prefixes, hyphen typesetting, trailing slashes);
these normalizers are the defense. All functions here are pure and safe for
parallel use, and every key they produce is a fixed point: normalizing a key
returns the same key.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence
from urllib.parse import urlsplit

from dor.errors import (
    InvalidDoiError,
    InvalidRepoError,
    InvalidTitleError,
    InvalidUrlError,
    NormalizationError,
)
from dor.model import SourceRef, SourceType

_DOI_PREFIXES = ("https://doi.org/", "http://doi.org/", "doi:")
_DOI_KEY_RE = re.compile(r"^10\.[0-9]")

# Hyphen, non-breaking hyphen, figure dash, en dash, em dash, horizontal
# bar, minus sign. Runs of any mix collapse to one space.
_DASH_RUN_RE = re.compile(r"[-‐‑‒–—―−]+")
_WS_RUN_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class CanonicalKey:
    """A source's canonical identity: its type plus the normalized key text."""

    source_type: SourceType
    key: str


@dataclass(frozen=True)
class MergeGroup:
    key: CanonicalKey
    raws: tuple[str, ...]


@dataclass(frozen=True)
class MergeReport:
    """Groups of distinct raw spellings that collapsed to one key."""

    groups: tuple[MergeGroup, ...]


def normalize_doi(raw: str) -> CanonicalKey:
    """Canonicalize a DOI: strip resolver prefixes, lowercase, validate.

    DOI names are case-insensitive, so lowercasing the whole name yields one
    canonical spelling. The result must look like a DOI (``10.`` plus a
    digit) or the input was not a DOI at all.
    """
    text = raw.strip()
    stripped = True
    while stripped:
        stripped = False
        lowered = text.lower()
        for prefix in _DOI_PREFIXES:
            if lowered.startswith(prefix):
                text = text[len(prefix):].strip()
                stripped = True
                break
    key = text.lower()
    if not _DOI_KEY_RE.match(key):
        raise InvalidDoiError(f"{raw!r} does not normalize to a 10.* DOI name")
    return CanonicalKey(SourceType.DOI, key)


def normalize_url(raw: str) -> CanonicalKey:
    """Canonicalize a website URL to ``host/path?query``.

    Drops the scheme and any fragment, folds case, strips a leading ``www.``
    and trailing slashes. Path and query are preserved: distinct dataset
    pages often differ only by query string, so dropping it would over-merge.
    """
    text = raw.strip()
    parts = urlsplit(text if "://" in text else "//" + text)
    host = parts.netloc.lower()
    if host.startswith("www."):
        host = host[4:]
    if not host:
        raise InvalidUrlError(f"{raw!r} has no parsable host")
    key = host + parts.path
    if parts.query:
        key += "?" + parts.query
    key = key.lower().rstrip("/")
    return CanonicalKey(SourceType.WEBSITE, key)


def normalize_repo(raw: str) -> CanonicalKey:
    """Canonicalize a repository URL or shorthand to ``host/owner/name``.

    Any path segments past owner/name (blob links, tree links) are dropped,
    as are ``.git`` suffixes. Works for any forge, not just GitHub.
    """
    text = raw.strip()
    parts = urlsplit(text if "://" in text else "//" + text)
    host = parts.netloc.lower()
    if not host:
        raise InvalidRepoError(f"{raw!r} has no parsable host")
    segments = [segment for segment in parts.path.split("/") if segment]
    if len(segments) < 2:
        raise InvalidRepoError(f"{raw!r} lacks owner/name path segments")
    owner = segments[0].lower()
    name = segments[1].lower()
    if name.endswith(".git"):
        name = name[: -len(".git")]
    if not name:
        raise InvalidRepoError(f"{raw!r} has an empty repository name")
    return CanonicalKey(SourceType.REPO, f"{host}/{owner}/{name}")


def title_key(raw_title: str) -> str:
    """Reduce a title to a typography-proof key.

    Venues typeset hyphens inconsistently (zero or one space around them,
    sometimes two dashes), which splits one paper into several records.
    Folding every dash run to a single space makes those spellings collide.
    """
    folded = unicodedata.normalize("NFKC", raw_title).casefold()
    spaced = _DASH_RUN_RE.sub(" ", folded)
    key = _WS_RUN_RE.sub(" ", spaced).strip()
    if not key:
        raise InvalidTitleError(f"{raw_title!r} contains only separators")
    return key


def normalize_source(source_type: SourceType, raw: str) -> CanonicalKey:
    """Apply the normalizer appropriate to the declared source type."""
    if source_type is SourceType.DOI:
        return normalize_doi(raw)
    if source_type is SourceType.WEBSITE:
        return normalize_url(raw)
    if source_type is SourceType.REPO:
        return normalize_repo(raw)
    return CanonicalKey(SourceType.PREPRINT, title_key(raw))


def make_source_ref(source_type: SourceType, raw: str, year: Optional[int] = None) -> SourceRef:
    """Build a SourceRef with its canonical key filled in."""
    key = normalize_source(source_type, raw)
    return SourceRef(source_type=source_type, raw=raw, key=key.key, year=year)


def resolve(sources: Sequence[SourceRef]) -> tuple[dict[SourceRef, CanonicalKey], MergeReport]:
    """Canonicalize a batch of refs and report which raw spellings merged.

    The mapping depends only on the input contents, never their order; the
    report lists every group of two or more distinct raw strings that
    collapsed to one key, sorted by key.
    """
    mapping: dict[SourceRef, CanonicalKey] = {}
    raws_by_key: dict[CanonicalKey, set[str]] = {}
    for position, ref in enumerate(sources):
        try:
            key = normalize_source(ref.source_type, ref.raw)
        except NormalizationError as exc:
            raise type(exc)(f"source {position}: {exc}") from exc
        mapping[ref] = key
        raws_by_key.setdefault(key, set()).add(ref.raw)
    groups = [
        MergeGroup(key=key, raws=tuple(sorted(raws)))
        for key, raws in raws_by_key.items()
        if len(raws) >= 2
    ]
    groups.sort(key=lambda group: (group.key.key, group.key.source_type.value))
    return mapping, MergeReport(groups=tuple(groups))


def render_merge_report(report: MergeReport) -> str:
    """One line per merge group: ``key<TAB>raw1<TAB>raw2...``."""
    lines = [
        "\t".join([group.key.key, *group.raws])
        for group in report.groups
    ]
    return "".join(line + "\n" for line in lines)


def merge_groups(refs: Iterable[SourceRef]) -> MergeReport:
    """Convenience wrapper: just the merge report for a batch of refs."""
    _, report = resolve(list(refs))
    return report
