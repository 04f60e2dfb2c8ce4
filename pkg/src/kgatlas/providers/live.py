"""Live provider adapters over plain HTTP APIs.

These are deployment plumbing, not tested logic: each adapter wraps one
endpoint, converts transport failures into ProviderError, and leaves all
pipeline semantics to the caller. Credentials and endpoints come from
environment variables (see README). The chat endpoint is expected to speak
the common completions shape {"messages": [...]} -> {"choices": [...]};
the search and embedding endpoints are simple JSON POST services.
"""

from __future__ import annotations

import json
import os
from typing import Sequence

import requests

from kgatlas.errors import ExtractionFormatError, ProviderError
from kgatlas.ingest import ExtractedProduct, ProductQuery, Providers, WebPage

_TIMEOUT_S = 60

ENV_LLM_ENDPOINT = "KGATLAS_LLM_ENDPOINT"
ENV_LLM_API_KEY = "KGATLAS_LLM_API_KEY"
ENV_LLM_MODEL = "KGATLAS_LLM_MODEL"
ENV_SEARCH_ENDPOINT = "KGATLAS_SEARCH_ENDPOINT"
ENV_SEARCH_API_KEY = "KGATLAS_SEARCH_API_KEY"
ENV_EMBED_ENDPOINT = "KGATLAS_EMBED_ENDPOINT"
ENV_EMBED_API_KEY = "KGATLAS_EMBED_API_KEY"
ENV_EMBED_MODEL = "KGATLAS_EMBED_MODEL"


def _post(stage: str, url: str, api_key: str | None, payload: dict) -> dict:
    headers = {"Content-Type": "application/json"}
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    try:
        response = requests.post(url, json=payload, headers=headers, timeout=_TIMEOUT_S)
        response.raise_for_status()
        return response.json()
    except requests.RequestException as exc:
        raise ProviderError(stage, str(exc)) from exc
    except ValueError as exc:
        raise ProviderError(stage, f"non-JSON response: {exc}") from exc


class LiveLanguageModel:
    def __init__(self, endpoint: str, api_key: str | None, model_id: str):
        self.endpoint = endpoint
        self.api_key = api_key
        self.model_id = model_id

    def _chat(self, stage: str, system: str, user: str) -> str:
        body = _post(stage, self.endpoint, self.api_key, {
            "model": self.model_id,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
        })
        try:
            return body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderError(stage, f"unexpected response shape: {exc}") from exc

    def extract_keywords(self, query: ProductQuery) -> list[str]:
        raw = self._chat(
            "keyword-extraction",
            "Extract 5 to 7 search keywords from the product request. "
            "Reply with a JSON array of lowercase strings, name terms first.",
            json.dumps(query.to_dict(), ensure_ascii=False),
        )
        try:
            keywords = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ProviderError("keyword-extraction", f"non-JSON keyword reply: {exc}") from exc
        if not isinstance(keywords, list):
            raise ProviderError("keyword-extraction", "keyword reply is not a list")
        return [str(k) for k in keywords]

    def extract_product(self, page: WebPage) -> ExtractedProduct:
        raw = self._chat(
            "extraction",
            "Extract product attributes from the page. Reply with one JSON object with "
            "keys name, product_type, brand, model, price, description (string or null) "
            "and spec_params (object of strings). Use null for anything absent.",
            json.dumps({"url": page.url, "title": page.title, "content": page.content},
                       ensure_ascii=False),
        )
        try:
            data = json.loads(raw)
            return ExtractedProduct(
                source_url=page.url,
                name=data.get("name") or None,
                product_type=data.get("product_type") or None,
                brand=data.get("brand") or None,
                model=data.get("model") or None,
                price=data.get("price") or None,
                description=data.get("description") or None,
                spec_params={str(k): str(v) for k, v in (data.get("spec_params") or {}).items()},
            )
        except (json.JSONDecodeError, AttributeError, TypeError) as exc:
            raise ExtractionFormatError(f"bad extraction reply for {page.url}: {exc}") from exc

    def classify_params(self, params: dict[str, str]) -> dict[str, str]:
        if not params:
            return {}
        raw = self._chat(
            "classification",
            "Given spec parameters of an IT product, keep only the core hardware "
            "parameters and drop the rest. Reply with a JSON object (subset of the input).",
            json.dumps(params, ensure_ascii=False),
        )
        try:
            kept = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ProviderError("classification", f"non-JSON classify reply: {exc}") from exc
        if not isinstance(kept, dict):
            raise ProviderError("classification", "classify reply is not an object")
        return {str(k): str(v) for k, v in kept.items() if k in params}

    def introduce(self, prompt: str) -> str:
        return self._chat("introduce", "You write product analysis reports in Markdown.", prompt)


class LiveSearchEngine:
    def __init__(self, endpoint: str, api_key: str | None):
        self.endpoint = endpoint
        self.api_key = api_key

    def search(self, keywords: Sequence[str]) -> list[WebPage]:
        body = _post("search", self.endpoint, self.api_key, {"q": " ".join(keywords)})
        results = body.get("results", [])
        if not isinstance(results, list):
            raise ProviderError("search", "search reply has no results list")
        pages = []
        for item in results:
            url = item.get("url")
            if not url:
                continue
            pages.append(WebPage(
                url=url,
                title=item.get("title", ""),
                content=item.get("content") or item.get("snippet") or "",
            ))
        return pages


class LiveEmbedder:
    def __init__(self, endpoint: str, api_key: str | None, model_id: str):
        self.endpoint = endpoint
        self.api_key = api_key
        self.model_id = model_id
        self.dim = 0  # learned from the first reply; constant within a run

    def embed(self, text: str) -> list[float]:
        body = _post("embedding", self.endpoint, self.api_key,
                     {"model": self.model_id, "input": text})
        try:
            vector = [float(x) for x in body["data"][0]["embedding"]]
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderError("embedding", f"unexpected embedding shape: {exc}") from exc
        if self.dim == 0:
            self.dim = len(vector)
        elif len(vector) != self.dim:
            raise ProviderError("embedding", f"dimension drifted {self.dim} -> {len(vector)}")
        return vector


def build_live_providers() -> Providers:
    """Wire live adapters from environment variables; fail fast when unset."""
    def need(name: str) -> str:
        value = os.environ.get(name)
        if not value:
            raise ProviderError("configuration", f"environment variable {name} is not set")
        return value

    return Providers(
        lm=LiveLanguageModel(
            need(ENV_LLM_ENDPOINT),
            os.environ.get(ENV_LLM_API_KEY),
            os.environ.get(ENV_LLM_MODEL, "gpt-4o-mini"),
        ),
        search=LiveSearchEngine(need(ENV_SEARCH_ENDPOINT), os.environ.get(ENV_SEARCH_API_KEY)),
        embedder=LiveEmbedder(
            need(ENV_EMBED_ENDPOINT),
            os.environ.get(ENV_EMBED_API_KEY),
            os.environ.get(ENV_EMBED_MODEL, "text-embedding-3-small"),
        ),
    )
