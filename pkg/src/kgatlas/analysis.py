"""Product analysis agent: graph context in, Markdown report out.

The prompt template is part of the product contract and must stay
byte-stable; report text comes from the wired language model and is never
fabricated locally on failure.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass

from kgatlas.errors import AnalysisTimeout, KgAtlasError, NotAProduct, ProviderError
from kgatlas.graph import GraphStore
from kgatlas.ingest import LanguageModel

TIMEOUT_MS_DEFAULT = 30_000

PROMPT_TEMPLATE = (
    "You are a seasoned IT product analyst. Please provide me with a detailed "
    "analysis report on this product based on the following structured information. "
    "The report should include its core technical features, market positioning, "
    "main application scenarios, and potential competitors.\n"
    "\n"
    "Product Name: {name}\n"
    "Brand: {brand}\n"
    "Model: {model}"
)

MISSING_FIELD_PLACEHOLDER = "Unknown"


@dataclass(frozen=True)
class ProductContext:
    product_name: str
    brand: str | None = None
    model: str | None = None


@dataclass(frozen=True)
class AnalysisReport:
    markdown: str
    model_id: str
    elapsed_ms: float

    def to_dict(self) -> dict:
        return {"markdown": self.markdown, "model_id": self.model_id,
                "elapsed_ms": self.elapsed_ms}


def extract_context(store: GraphStore, node_id: int) -> ProductContext:
    """Read a Product node's name plus its brand and model neighbor names.

    With several HAS_BRAND or HAS_MODEL neighbors the lowest-id one wins,
    so the context is deterministic on any schema-conformant store.
    """
    with store.read_lock():
        node = store.get_node(node_id)
        if node.label != "Product":
            raise NotAProduct(f"node {node_id} is a {node.label}, not a Product")
        brand_ids: list[int] = []
        model_ids: list[int] = []
        for rel in store.incident(node_id):
            if rel.rel_type == "HAS_BRAND":
                brand_ids.append(rel.other(node_id))
            elif rel.rel_type == "HAS_MODEL":
                model_ids.append(rel.other(node_id))
        brand = store.get_node(min(brand_ids)).name if brand_ids else None
        model = store.get_node(min(model_ids)).name if model_ids else None
        return ProductContext(product_name=node.name, brand=brand, model=model)


def build_prompt(ctx: ProductContext) -> str:
    """Fill the analyst prompt template; pure and byte-deterministic."""
    return PROMPT_TEMPLATE.format(
        name=ctx.product_name,
        brand=ctx.brand or MISSING_FIELD_PLACEHOLDER,
        model=ctx.model or MISSING_FIELD_PLACEHOLDER,
    )


def introduce(
    ctx: ProductContext,
    lm: LanguageModel,
    timeout_ms: float = TIMEOUT_MS_DEFAULT,
) -> AnalysisReport:
    """Send the filled prompt to the language model and time the call.

    A nonpositive budget times out before the provider is even invoked, so
    timeout behavior is testable without a slow provider.
    """
    if timeout_ms <= 0:
        raise AnalysisTimeout("analysis timed out before the provider was called")
    prompt = build_prompt(ctx)
    started = time.perf_counter()
    pool = ThreadPoolExecutor(max_workers=1)
    try:
        future = pool.submit(lm.introduce, prompt)
        try:
            markdown = future.result(timeout=timeout_ms / 1000.0)
        except FutureTimeout as exc:
            raise AnalysisTimeout(f"no report after {timeout_ms:g} ms") from exc
        except KgAtlasError:
            raise
        except Exception as exc:
            raise ProviderError("introduce", str(exc)) from exc
    finally:
        pool.shutdown(wait=False, cancel_futures=True)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if not markdown or not markdown.strip():
        raise ProviderError("introduce", "provider returned an empty report")
    return AnalysisReport(
        markdown=markdown,
        model_id=getattr(lm, "model_id", "unknown"),
        elapsed_ms=elapsed_ms,
    )
