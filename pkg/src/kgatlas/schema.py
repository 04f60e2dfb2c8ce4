"""Schema declaration and validation for the product graph.

Five node labels, four relationship types, each relationship type pinned to
one (source label, target label) pair. `validate` reports violations as data
rather than raising; an empty list means the store conforms.
"""

from __future__ import annotations

from dataclasses import dataclass

from kgatlas.graph import NODE_LABELS, REL_TYPES, GraphStore


@dataclass(frozen=True)
class SchemaDef:
    labels: frozenset[str]
    rel_rules: dict[str, tuple[str, str]]


DEFAULT_SCHEMA = SchemaDef(
    labels=frozenset(NODE_LABELS),
    rel_rules={
        "BELONGS_TO": ("Product", "Category"),
        "HAS_BRAND": ("Product", "Brand"),
        "HAS_MODEL": ("Product", "Model"),
        "HAS_PRICE": ("Product", "Price"),
    },
)

assert set(DEFAULT_SCHEMA.rel_rules) == set(REL_TYPES)


@dataclass
class Violation:
    kind: str  # unknown-label | unknown-rel-type | bad-endpoint | missing-name
    offending_id: int
    message: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "offending_id": self.offending_id, "message": self.message}


def validate(store: GraphStore, schema: SchemaDef = DEFAULT_SCHEMA) -> list[Violation]:
    """Check every node and relationship against the schema. Pure reader."""
    violations: list[Violation] = []
    with store.read_lock():
        nodes = {node.id: node for node in store.nodes()}
        for node in nodes.values():
            if node.label not in schema.labels:
                violations.append(Violation(
                    "unknown-label", node.id,
                    f"node {node.id} has label {node.label!r}, expected one of {sorted(schema.labels)}",
                ))
            name = node.properties.get("name")
            if not isinstance(name, str) or not name:
                violations.append(Violation(
                    "missing-name", node.id,
                    f"node {node.id} ({node.label}) has no non-empty name property",
                ))
        for rel in store.relationships():
            rule = schema.rel_rules.get(rel.rel_type)
            if rule is None:
                violations.append(Violation(
                    "unknown-rel-type", rel.id,
                    f"relationship {rel.id} has type {rel.rel_type!r}, expected one of {sorted(schema.rel_rules)}",
                ))
                continue
            expected_source, expected_target = rule
            actual_source = nodes[rel.source].label
            actual_target = nodes[rel.target].label
            if (actual_source, actual_target) != rule:
                violations.append(Violation(
                    "bad-endpoint", rel.id,
                    f"{rel.rel_type} expects {expected_source}->{expected_target}, "
                    f"got {actual_source}->{actual_target}",
                ))
    return violations
