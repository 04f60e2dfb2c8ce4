"""Product knowledge-graph toolkit: store, query language, pipeline, service."""

from kgatlas.analysis import AnalysisReport, ProductContext, build_prompt, extract_context, introduce
from kgatlas.cypher import ResultTable, execute, parse, pretty, tokenize
from kgatlas.graph import GraphStore, GraphView, Node, Relationship
from kgatlas.ingest import (
    ExtractedProduct,
    ProductQuery,
    Providers,
    ScoredProduct,
    WebPage,
    extract_keywords,
    extract_product,
    filter_and_rank,
    iterative_search,
    run_pipeline,
    similarity,
    to_graph,
)
from kgatlas.schema import DEFAULT_SCHEMA, Violation, validate
from kgatlas.service import create_app

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "DEFAULT_SCHEMA",
    "ExtractedProduct",
    "GraphStore",
    "GraphView",
    "Node",
    "ProductContext",
    "ProductQuery",
    "Providers",
    "Relationship",
    "ResultTable",
    "ScoredProduct",
    "Violation",
    "WebPage",
    "build_prompt",
    "create_app",
    "execute",
    "extract_context",
    "extract_keywords",
    "extract_product",
    "filter_and_rank",
    "introduce",
    "iterative_search",
    "parse",
    "pretty",
    "run_pipeline",
    "similarity",
    "to_graph",
    "tokenize",
    "validate",
    "__version__",
]
