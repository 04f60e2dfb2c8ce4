"""Five-step product-data pipeline: keywords, search, extraction, scoring, ranking.

Providers (language model, search engine, embedder) are injected behind small
protocols so the pipeline body stays deterministic and testable; the bundled
mock providers are pure functions of their inputs. Survivors of the ranking
step are persisted to the graph as one star each: a Product node linked to
its Category, Brand, Model and Price.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Protocol, Sequence

import numpy as np

from kgatlas.errors import (
    ExtractionFormatError,
    IncompleteProduct,
    InvalidQuery,
    KgAtlasError,
    ProviderError,
)
from kgatlas.graph import GraphStore

PAGE_TARGET_DEFAULT = 20
EXTRACTION_FAN_OUT_DEFAULT = 4
RESULT_CAP = 10

_PRICE_RE = re.compile(r"^\s*([¥$])?\s*(\d+)\s*([A-Za-z]+)?\s*$")
_CURRENCY_WORDS = {"yuan": "CNY", "usd": "USD"}
_CURRENCY_SYMBOLS = {"¥": "CNY", "$": "USD"}


# --- domain types --------------------------------------------------------------

@dataclass(frozen=True)
class ProductQuery:
    """User request: a product name plus the spec parameters that matter."""

    name: str
    spec_params: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.strip():
            raise InvalidQuery("query name must be non-empty text")
        for key, value in self.spec_params.items():
            if not isinstance(key, str) or not key or not isinstance(value, str) or not value:
                raise InvalidQuery("spec parameters must map non-empty text to non-empty text")

    def to_dict(self) -> dict:
        return {"name": self.name, "spec_params": dict(self.spec_params)}


@dataclass(frozen=True)
class WebPage:
    url: str
    title: str
    content: str


@dataclass
class ExtractedProduct:
    """Per-page extraction result; fields are None when the page lacks them."""

    source_url: str
    name: str | None = None
    product_type: str | None = None
    brand: str | None = None
    model: str | None = None
    price: str | None = None
    description: str | None = None
    spec_params: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["spec_params"] = dict(sorted(self.spec_params.items()))
        return out


@dataclass
class ScoredProduct:
    product: ExtractedProduct
    similarity: float

    def to_dict(self) -> dict:
        return {"product": self.product.to_dict(), "similarity": self.similarity}


class LanguageModel(Protocol):
    model_id: str

    def extract_keywords(self, query: ProductQuery) -> list[str]: ...

    def extract_product(self, page: WebPage) -> ExtractedProduct: ...

    def classify_params(self, params: dict[str, str]) -> dict[str, str]: ...

    def introduce(self, prompt: str) -> str: ...


class SearchEngine(Protocol):
    def search(self, keywords: Sequence[str]) -> list[WebPage]: ...


class Embedder(Protocol):
    dim: int

    def embed(self, text: str) -> list[float]: ...


@dataclass
class Providers:
    lm: LanguageModel
    search: SearchEngine
    embedder: Embedder


# --- run report ----------------------------------------------------------------

@dataclass
class RoundRecord:
    number: int
    keywords: list[str]
    matched: int
    added: int
    error: str | None = None


@dataclass
class DropRecord:
    url: str
    reason: str


@dataclass
class PipelineReport:
    """Per-stage accounting for one pipeline run; serialized for the CLI."""

    query: dict = field(default_factory=dict)
    keywords: list[str] = field(default_factory=list)
    rounds: list[RoundRecord] = field(default_factory=list)
    pages: int = 0
    extracted: int = 0
    dropped: list[DropRecord] = field(default_factory=list)
    ranked: int = 0
    persisted: int = 0

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "keywords": list(self.keywords),
            "rounds": [asdict(r) for r in self.rounds],
            "pages": self.pages,
            "extracted": self.extracted,
            "dropped": [asdict(d) for d in self.dropped],
            "ranked": self.ranked,
            "persisted": self.persisted,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write("\n")


# --- step 1: keywords ------------------------------------------------------------

def extract_keywords(query: ProductQuery, lm: LanguageModel) -> list[str]:
    """Ask the language model for 5 to 7 search keywords, name tokens first."""
    try:
        keywords = lm.extract_keywords(query)
    except KgAtlasError:
        raise
    except Exception as exc:
        raise ProviderError("keyword-extraction", str(exc)) from exc
    if not 5 <= len(keywords) <= 7:
        raise ProviderError("keyword-extraction", f"expected 5-7 keywords, got {len(keywords)}")
    if len(set(keywords)) != len(keywords) or not all(k and isinstance(k, str) for k in keywords):
        raise ProviderError("keyword-extraction", "keywords must be distinct non-empty text")
    return keywords


# --- step 2: iterative search ----------------------------------------------------

def iterative_search(
    keywords: Sequence[str],
    engine: SearchEngine,
    page_target: int = PAGE_TARGET_DEFAULT,
    report: PipelineReport | None = None,
) -> list[WebPage]:
    """Search in rounds, dropping the last keyword each time.

    Round k uses the first (K - k + 1) keywords. Rounds stop once the unique
    page count reaches page_target or the next round would use fewer than 2
    keywords. Pages are deduplicated by url in first-seen order. A round that
    raises is skipped and recorded; if every round fails the whole step fails.
    """
    if len(keywords) < 2:
        raise InvalidQuery("iterative search needs at least 2 keywords")
    if page_target < 1:
        raise InvalidQuery("page_target must be at least 1")
    seen: dict[str, WebPage] = {}
    failures = 0
    rounds_run = 0
    for count in range(len(keywords), 1, -1):
        if len(seen) >= page_target:
            break
        round_keywords = list(keywords[:count])
        rounds_run += 1
        try:
            matched = engine.search(round_keywords)
        except Exception as exc:
            failures += 1
            if report is not None:
                report.rounds.append(
                    RoundRecord(rounds_run, round_keywords, 0, 0, error=str(exc))
                )
            continue
        added = 0
        for page in matched:
            if page.url not in seen:
                seen[page.url] = page
                added += 1
        if report is not None:
            report.rounds.append(RoundRecord(rounds_run, round_keywords, len(matched), added))
    if rounds_run > 0 and failures == rounds_run:
        raise ProviderError("search", "every search round failed")
    return list(seen.values())


# --- step 3: extraction ----------------------------------------------------------

def extract_product(page: WebPage, lm: LanguageModel) -> ExtractedProduct:
    if not page.content:
        raise ExtractionFormatError(f"page {page.url} has no content")
    try:
        return lm.extract_product(page)
    except KgAtlasError:
        raise
    except Exception as exc:
        raise ProviderError("extraction", str(exc)) from exc


# --- step 4: similarity ----------------------------------------------------------

def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    # Identical vectors score exactly 1.0; sqrt rounding must not break
    # the self-similarity contract.
    if np.array_equal(a, b):
        return 1.0 if float(np.dot(a, a)) > 0.0 else 0.0
    denom = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if denom == 0.0:
        return 0.0
    return min(1.0, max(0.0, float(np.dot(a, b)) / denom))


def parameter_text(key: str, value: str) -> str:
    """Canonical embedding input for one spec parameter."""
    return f"{key}: {value}"


def similarity(
    user_params: dict[str, str],
    candidate_params: dict[str, str],
    lm: LanguageModel,
    embedder: Embedder,
) -> float:
    """Mean over user core params of the best cosine match among candidate core params."""
    user_core = lm.classify_params(user_params)
    if not user_core:
        raise InvalidQuery("query has no core spec parameters")
    candidate_core = lm.classify_params(candidate_params)
    if not candidate_core:
        return 0.0
    try:
        candidate_vecs = [
            np.asarray(embedder.embed(parameter_text(key, value)), dtype=float)
            for key, value in sorted(candidate_core.items())
        ]
        scores = []
        for key, value in sorted(user_core.items()):
            user_vec = np.asarray(embedder.embed(parameter_text(key, value)), dtype=float)
            scores.append(max(_cosine(user_vec, vec) for vec in candidate_vecs))
    except KgAtlasError:
        raise
    except Exception as exc:
        raise ProviderError("embedding", str(exc)) from exc
    return sum(scores) / len(scores)


# --- step 5: filter and rank ------------------------------------------------------

def filter_and_rank(candidates: Sequence[ScoredProduct]) -> list[ScoredProduct]:
    """Drop candidates missing a key field, sort best-first, keep the top 10."""
    complete = [
        c for c in candidates
        if c.product.name and c.product.brand and c.product.model and c.product.price
        and c.product.spec_params
    ]
    complete.sort(key=lambda c: (-c.similarity, c.product.name, c.product.source_url))
    return complete[:RESULT_CAP]


# --- persistence -----------------------------------------------------------------

def parse_price(text: str) -> tuple[float, str | None] | None:
    """Parse '¥50000', '$1200', '23500 yuan' style price text.

    Returns (amount, currency) where currency may be None for a bare number,
    or None when the text does not fit the grammar at all.
    """
    match = _PRICE_RE.match(text)
    if not match:
        return None
    symbol, digits, word = match.groups()
    if word is not None:
        currency = _CURRENCY_WORDS.get(word.lower())
        if currency is None:
            return None
    else:
        currency = _CURRENCY_SYMBOLS.get(symbol) if symbol else None
    return float(digits), currency


def to_graph(product: ExtractedProduct, category: str, store: GraphStore) -> None:
    """Merge one ranked product into the graph as its 5-node, 4-edge star."""
    missing = [
        field_name for field_name in ("name", "brand", "model", "price")
        if not getattr(product, field_name)
    ]
    if not product.spec_params:
        missing.append("spec_params")
    if missing:
        raise IncompleteProduct(f"product from {product.source_url} missing {', '.join(missing)}")
    if not category:
        raise IncompleteProduct(f"product from {product.source_url} has no category")

    product_props: dict[str, str] = {
        "category": category,
        "spec_params": json.dumps(product.spec_params, ensure_ascii=False, sort_keys=True),
    }
    if product.description:
        product_props["description"] = product.description

    price_props: dict[str, object] = {}
    parsed = parse_price(product.price)
    if parsed is not None:
        price_props["amount"] = parsed[0]
        if parsed[1] is not None:
            price_props["currency"] = parsed[1]

    category_id = store.merge_node("Category", category)
    product_id = store.merge_node("Product", product.name, product_props)
    brand_id = store.merge_node("Brand", product.brand)
    model_id = store.merge_node("Model", product.model)
    price_id = store.merge_node("Price", product.price, price_props)
    store.merge_relationship(product_id, "BELONGS_TO", category_id)
    store.merge_relationship(product_id, "HAS_BRAND", brand_id)
    store.merge_relationship(product_id, "HAS_MODEL", model_id)
    store.merge_relationship(product_id, "HAS_PRICE", price_id)


# --- the pipeline -----------------------------------------------------------------

def run_pipeline(
    query: ProductQuery,
    providers: Providers,
    store: GraphStore,
    *,
    page_target: int = PAGE_TARGET_DEFAULT,
    fan_out: int = EXTRACTION_FAN_OUT_DEFAULT,
    report_path=None,
) -> list[ScoredProduct]:
    """Run steps 1-5, persist the ranked survivors, return them best-first.

    Per-page extraction failures drop the page and are recorded in the run
    report; provider failures in the keyword, search or scoring stages abort
    the run. Extraction may fan out over a small thread pool, but results are
    kept in first-seen page order so concurrency never changes the output.
    """
    report = PipelineReport(query=query.to_dict())

    keywords = extract_keywords(query, providers.lm)
    report.keywords = list(keywords)

    pages = iterative_search(keywords, providers.search, page_target, report)
    report.pages = len(pages)

    records: list[ExtractedProduct] = []
    with ThreadPoolExecutor(max_workers=max(1, fan_out)) as pool:
        outcomes = list(pool.map(lambda p: _try_extract(p, providers.lm), pages))
    for page, outcome in zip(pages, outcomes):
        if isinstance(outcome, ExtractedProduct):
            records.append(outcome)
        else:
            report.dropped.append(DropRecord(page.url, outcome))
    report.extracted = len(records)

    scored = [
        ScoredProduct(record, similarity(query.spec_params, record.spec_params,
                                         providers.lm, providers.embedder))
        for record in records
    ]
    ranked = filter_and_rank(scored)
    ranked_urls = {sp.product.source_url for sp in ranked}
    for sp in scored:
        if sp.product.source_url in ranked_urls:
            continue
        missing = [
            name for name in ("name", "brand", "model", "price")
            if not getattr(sp.product, name)
        ]
        if not sp.product.spec_params:
            missing.append("spec_params")
        reason = f"missing {', '.join(missing)}" if missing else "ranked below the top 10"
        report.dropped.append(DropRecord(sp.product.source_url, reason))
    report.ranked = len(ranked)

    for sp in ranked:
        to_graph(sp.product, sp.product.product_type or query.name, store)
    report.persisted = len(ranked)

    if report_path is not None:
        report.save(report_path)
    return ranked


def _try_extract(page: WebPage, lm: LanguageModel) -> ExtractedProduct | str:
    """Extraction worker: returns the record, or the drop reason as text."""
    try:
        return extract_product(page, lm)
    except ExtractionFormatError as exc:
        return f"unparseable: {exc}"
    except ProviderError as exc:
        return f"provider failure: {exc}"
