"""Deterministic mock providers.

Every mock is a pure function of its inputs, so pipeline runs and analysis
reports are byte-reproducible. The corpus search engine reads a directory of
page files; the embedder hashes character trigrams into a fixed-size vector.
"""

from __future__ import annotations

import json
import re
import zlib
from pathlib import Path
from typing import Sequence

from kgatlas.errors import ExtractionFormatError, ProviderError, SnapshotFormatError
from kgatlas.ingest import ExtractedProduct, ProductQuery, Providers, WebPage

# Parameter keys the mock treats as core when classifying spec params.
CORE_PARAM_KEYS = frozenset(
    {"cpu", "ram", "storage", "ports", "resolution", "power", "capacity"}
)

# Generic search terms used to pad very short token lists up to 5 keywords.
_FILLER_KEYWORDS = ("specifications", "review", "price", "official", "datasheet")

_TOKEN_RE = re.compile(r"[a-z0-9]+")
_FIELD_LINE_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9 _/-]*?)\s*:\s*(.+?)\s*$")
_PROMPT_FIELDS = ("Product Name", "Brand", "Model")


def _tokens(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class MockLanguageModel:
    """Rule-based stand-in for the language model provider."""

    model_id = "mock-analyst-1"

    def extract_keywords(self, query: ProductQuery) -> list[str]:
        ordered: list[str] = []
        seen: set[str] = set()
        pool = _tokens(query.name)
        for key, value in query.spec_params.items():
            pool.extend(_tokens(f"{key} {value}"))
        for token in pool:
            if token not in seen:
                seen.add(token)
                ordered.append(token)
        for filler in _FILLER_KEYWORDS:
            if len(ordered) >= 5:
                break
            if filler not in seen:
                seen.add(filler)
                ordered.append(filler)
        return ordered[:7]

    def extract_product(self, page: WebPage) -> ExtractedProduct:
        record = ExtractedProduct(source_url=page.url)
        matched_any = False
        for line in page.content.splitlines():
            match = _FIELD_LINE_RE.match(line)
            if not match:
                continue
            matched_any = True
            key = match.group(1).strip().lower()
            value = match.group(2).strip()
            if key == "name":
                record.name = value
            elif key in ("type", "product type"):
                record.product_type = value
            elif key == "brand":
                record.brand = value
            elif key == "model":
                record.model = value
            elif key == "price":
                record.price = value
            elif key == "description":
                record.description = value
            else:
                record.spec_params.setdefault(key, value)
        if not matched_any:
            raise ExtractionFormatError(f"no field lines found in {page.url}")
        return record

    def classify_params(self, params: dict[str, str]) -> dict[str, str]:
        return {key: value for key, value in params.items() if key.lower() in CORE_PARAM_KEYS}

    def introduce(self, prompt: str) -> str:
        fields = {}
        for line in prompt.splitlines():
            for label in _PROMPT_FIELDS:
                prefix = f"{label}: "
                if line.startswith(prefix):
                    fields[label] = line[len(prefix):]
        name = fields.get("Product Name", "this product")
        brand = fields.get("Brand", "Unknown")
        model = fields.get("Model", "Unknown")
        return (
            f"# {name}\n\n"
            f"## Overview\n\n"
            f"{name} is a {brand} product positioned for data-center and enterprise "
            f"deployments. This report is generated from the structured facts supplied "
            f"in the request.\n\n"
            f"## Technical Specifications\n\n"
            f"- Brand: {brand}\n"
            f"- Model: {model}\n\n"
            f"## Application Scenarios\n\n"
            f"Typical workloads include virtualization, databases and web serving, "
            f"where {name} competes on throughput per rack unit.\n\n"
            f"## Competitors\n\n"
            f"Comparable offerings from other vendors target the same segment; "
            f"evaluate against equivalent {model} class systems.\n"
        )


class HashEmbedder:
    """Seeded character-trigram hashing embedder with a fixed dimension."""

    def __init__(self, dim: int = 64, seed: int = 1299721):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.seed = seed

    def embed(self, text: str) -> list[float]:
        vector = [0.0] * self.dim
        grams = [text[i:i + 3] for i in range(len(text) - 2)] if len(text) >= 3 else [text]
        prefix = str(self.seed).encode("utf-8")
        for gram in grams:
            bucket = zlib.crc32(prefix + gram.encode("utf-8")) % self.dim
            vector[bucket] += 1.0
        return vector


class CorpusSearchEngine:
    """Searches a directory of page files; a page matches when it contains
    every keyword as a case-insensitive substring of its title or content."""

    def __init__(self, corpus_dir):
        self.pages: list[WebPage] = []
        seen_urls: set[str] = set()
        paths = sorted(Path(corpus_dir).glob("*.json"))
        if not paths:
            raise ProviderError("search", f"no corpus pages under {corpus_dir}")
        for path in paths:
            try:
                raw = json.loads(path.read_text(encoding="utf-8"))
                page = WebPage(url=raw["url"], title=raw["title"], content=raw["content"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise SnapshotFormatError(f"bad corpus page {path.name}: {exc}") from exc
            if not page.url or page.url in seen_urls:
                raise SnapshotFormatError(f"duplicate or empty url in {path.name}")
            seen_urls.add(page.url)
            self.pages.append(page)
        self.pages.sort(key=lambda p: p.url)

    def search(self, keywords: Sequence[str]) -> list[WebPage]:
        needles = [k.lower() for k in keywords]
        out = []
        for page in self.pages:
            haystack = f"{page.title}\n{page.content}".lower()
            if all(needle in haystack for needle in needles):
                out.append(page)
        return out


def build_mock_providers(corpus_dir) -> Providers:
    return Providers(
        lm=MockLanguageModel(),
        search=CorpusSearchEngine(corpus_dir),
        embedder=HashEmbedder(),
    )
