"""Embedded property-graph store with merge-or-match semantics.

Nodes carry one of five labels and a mandatory non-empty ``name`` property;
relationships are directed and typed. The store guarantees that no two nodes
share (label, name) and no two relationships share (rel_type, source, target):
``merge_node`` / ``merge_relationship`` either create or return the existing
element, so re-running any ingest is a no-op.

Thread safety: a readers-writer lock serializes writes while letting reads
proceed concurrently. Every public method acquires the appropriate side;
read locks are reentrant (reader preference), write locks are not.
"""

from __future__ import annotations

import json
import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from kgatlas.errors import (
    InvalidKeyword,
    InvalidName,
    InvalidProperty,
    NodeNotFound,
    SnapshotFormatError,
    UnknownLabel,
    UnknownRelType,
)

NODE_LABELS = ("Category", "Product", "Brand", "Model", "Price")
REL_TYPES = ("BELONGS_TO", "HAS_BRAND", "HAS_MODEL", "HAS_PRICE")

# A property value is text, a finite 64-bit float, or a flag.
PropertyValue = str | float | bool


@dataclass
class Node:
    id: int
    label: str
    properties: dict[str, PropertyValue]

    @property
    def name(self) -> str:
        return str(self.properties["name"])

    def to_dict(self) -> dict:
        return {"id": self.id, "label": self.label, "properties": dict(self.properties)}


@dataclass
class Relationship:
    id: int
    rel_type: str
    source: int
    target: int
    properties: dict[str, PropertyValue] = field(default_factory=dict)

    def other(self, node_id: int) -> int:
        """The endpoint opposite `node_id` (itself for self-loops)."""
        return self.target if node_id == self.source else self.source

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "rel_type": self.rel_type,
            "source": self.source,
            "target": self.target,
        }


@dataclass
class GraphView:
    """The nodes+links wire shape exchanged with the explorer."""

    nodes: list[Node]
    links: list[Relationship]

    def to_dict(self) -> dict:
        return {
            "nodes": [n.to_dict() for n in self.nodes],
            "links": [r.to_dict() for r in self.links],
        }


class _ReadWriteLock:
    """Reader-preference RW lock. Read acquisitions are reentrant; a write
    acquisition waits until no readers are active."""

    def __init__(self) -> None:
        self._cond = threading.Condition()
        self._readers = 0
        self._writer = False

    @contextmanager
    def read(self) -> Iterator[None]:
        with self._cond:
            while self._writer:
                self._cond.wait()
            self._readers += 1
        try:
            yield
        finally:
            with self._cond:
                self._readers -= 1
                if self._readers == 0:
                    self._cond.notify_all()

    @contextmanager
    def write(self) -> Iterator[None]:
        with self._cond:
            while self._writer or self._readers:
                self._cond.wait()
            self._writer = True
        try:
            yield
        finally:
            with self._cond:
                self._writer = False
                self._cond.notify_all()


def _coerce_property(key: str, value: object) -> PropertyValue:
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, (int, float)):
        number = float(value)
        if not math.isfinite(number):
            raise InvalidProperty(f"property {key!r} must be finite, got {value!r}")
        return number
    raise InvalidProperty(f"property {key!r} has unsupported type {type(value).__name__}")


class GraphStore:
    """In-memory property graph with (label, name) node identity."""

    def __init__(self) -> None:
        self._lock = _ReadWriteLock()
        self._nodes: dict[int, Node] = {}
        self._relationships: dict[int, Relationship] = {}
        self._adjacency: dict[int, list[int]] = {}
        self._node_key: dict[tuple[str, str], int] = {}
        self._rel_key: dict[tuple[str, int, int], int] = {}
        self._next_node_id = 1
        self._next_rel_id = 1

    # -- locking helpers exposed so multi-step readers (query execution,
    # view assembly) can hold one consistent snapshot.
    def read_lock(self):
        return self._lock.read()

    # -- write operations ----------------------------------------------------

    def merge_node(self, label: str, name: str, extra_properties: Mapping[str, object] | None = None) -> int:
        """Create the (label, name) node or match the existing one.

        Extra properties are upserted either way: new keys added, existing
        keys overwritten. Returns the node id.
        """
        if label not in NODE_LABELS:
            raise UnknownLabel(f"unknown node label {label!r}")
        if not isinstance(name, str) or not name:
            raise InvalidName("node name must be non-empty text")
        extras = {}
        for key, value in (extra_properties or {}).items():
            extras[key] = _coerce_property(key, value)
        if "name" in extras and extras["name"] != name:
            raise InvalidName(f"conflicting name property {extras['name']!r} for node {name!r}")
        with self._lock.write():
            node_id = self._node_key.get((label, name))
            if node_id is None:
                node_id = self._next_node_id
                self._next_node_id += 1
                self._nodes[node_id] = Node(node_id, label, {"name": name, **extras})
                self._adjacency[node_id] = []
                self._node_key[(label, name)] = node_id
            else:
                self._nodes[node_id].properties.update(extras)
            return node_id

    def merge_relationship(self, source: int, rel_type: str, target: int) -> int:
        """Create the (rel_type, source, target) relationship or match it."""
        if rel_type not in REL_TYPES:
            raise UnknownRelType(f"unknown relationship type {rel_type!r}")
        with self._lock.write():
            for endpoint in (source, target):
                if endpoint not in self._nodes:
                    raise NodeNotFound(f"node {endpoint} does not exist")
            rel_id = self._rel_key.get((rel_type, source, target))
            if rel_id is None:
                rel_id = self._next_rel_id
                self._next_rel_id += 1
                self._relationships[rel_id] = Relationship(rel_id, rel_type, source, target)
                self._adjacency[source].append(rel_id)
                if target != source:
                    self._adjacency[target].append(rel_id)
                self._rel_key[(rel_type, source, target)] = rel_id
            return rel_id

    # -- read operations -----------------------------------------------------

    @property
    def node_count(self) -> int:
        with self._lock.read():
            return len(self._nodes)

    @property
    def relationship_count(self) -> int:
        with self._lock.read():
            return len(self._relationships)

    def get_node(self, node_id: int) -> Node:
        with self._lock.read():
            node = self._nodes.get(node_id)
            if node is None:
                raise NodeNotFound(f"node {node_id} does not exist")
            return node

    def get_node_by_name(self, label: str, name: str) -> Node | None:
        """Look a node up by its stable external key."""
        with self._lock.read():
            node_id = self._node_key.get((label, name))
            return self._nodes[node_id] if node_id is not None else None

    def nodes(self) -> list[Node]:
        with self._lock.read():
            return [self._nodes[i] for i in sorted(self._nodes)]

    def relationships(self) -> list[Relationship]:
        with self._lock.read():
            return [self._relationships[i] for i in sorted(self._relationships)]

    def incident(self, node_id: int) -> list[Relationship]:
        """All relationships touching `node_id`, ascending by id."""
        with self._lock.read():
            if node_id not in self._nodes:
                raise NodeNotFound(f"node {node_id} does not exist")
            return [self._relationships[i] for i in sorted(self._adjacency[node_id])]

    def degree(self, node_id: int) -> int:
        return len(self.incident(node_id))

    def find_nodes_containing(self, keyword: str) -> list[Node]:
        """All nodes whose name contains `keyword` as a case-sensitive
        substring, ascending by id."""
        if not isinstance(keyword, str) or not keyword:
            raise InvalidKeyword("keyword must be non-empty text")
        with self._lock.read():
            return [
                self._nodes[i]
                for i in sorted(self._nodes)
                if keyword in str(self._nodes[i].properties.get("name", ""))
            ]

    def neighborhood(self, node_id: int, exclude: Iterable[int] = ()) -> GraphView:
        """First-order neighborhood view of `node_id`.

        The view contains the node itself plus every neighbor not in
        `exclude`, and every relationship incident to the node whose other
        endpoint is inside the view. Ordering is ascending by id.
        """
        excluded = set(exclude)
        with self._lock.read():
            if node_id not in self._nodes:
                raise NodeNotFound(f"node {node_id} does not exist")
            view_ids = {node_id}
            for rel_id in self._adjacency[node_id]:
                other = self._relationships[rel_id].other(node_id)
                if other not in excluded:
                    view_ids.add(other)
            links = [
                self._relationships[rel_id]
                for rel_id in sorted(self._adjacency[node_id])
                if self._relationships[rel_id].other(node_id) in view_ids
            ]
            return GraphView(nodes=[self._nodes[i] for i in sorted(view_ids)], links=links)

    def stats(self) -> dict[str, int]:
        """Counts per label and per relationship type plus totals."""
        with self._lock.read():
            counts = {label: 0 for label in NODE_LABELS}
            for node in self._nodes.values():
                counts[node.label] += 1
            for rel_type in REL_TYPES:
                counts[rel_type] = 0
            for rel in self._relationships.values():
                counts[rel.rel_type] += 1
            counts["nodes"] = len(self._nodes)
            counts["relationships"] = len(self._relationships)
            return counts

    def verify_adjacency(self) -> bool:
        """Rebuild adjacency from the relationship set and compare."""
        with self._lock.read():
            rebuilt: dict[int, list[int]] = {i: [] for i in self._nodes}
            for rel_id in self._relationships:
                rel = self._relationships[rel_id]
                rebuilt[rel.source].append(rel_id)
                if rel.target != rel.source:
                    rebuilt[rel.target].append(rel_id)
            return all(
                sorted(rebuilt[i]) == sorted(self._adjacency[i]) for i in self._nodes
            )

    # -- persistence ----------------------------------------------------------

    def snapshot(self, path: str | Path) -> None:
        """Write the store as UTF-8 JSON, nodes and relationships sorted by id."""
        with self._lock.read():
            payload = {
                "nodes": [self._nodes[i].to_dict() for i in sorted(self._nodes)],
                "relationships": [
                    {
                        "id": rel.id,
                        "type": rel.rel_type,
                        "source": rel.source,
                        "target": rel.target,
                    }
                    for rel in (self._relationships[i] for i in sorted(self._relationships))
                ],
            }
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "GraphStore":
        """Load a snapshot, preserving the ids exactly as written."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise SnapshotFormatError(f"cannot read snapshot {path}: {exc}") from exc
        try:
            payload = json.loads(
                text,
                parse_constant=lambda token: (_ for _ in ()).throw(ValueError(token)),
            )
        except json.JSONDecodeError as exc:
            raise SnapshotFormatError(
                f"snapshot is not valid JSON: {exc.msg}", line=exc.lineno, offset=exc.pos
            ) from exc
        except ValueError as exc:
            raise SnapshotFormatError(f"snapshot contains non-finite number {exc}") from exc

        if not isinstance(payload, dict) or not isinstance(payload.get("nodes"), list) \
                or not isinstance(payload.get("relationships"), list):
            raise SnapshotFormatError("snapshot must be an object with nodes and relationships arrays")

        store = cls()
        for entry in payload["nodes"]:
            store._load_node(entry)
        for entry in payload["relationships"]:
            store._load_relationship(entry)
        store._next_node_id = max(store._nodes, default=0) + 1
        store._next_rel_id = max(store._relationships, default=0) + 1
        return store

    def _load_node(self, entry: object) -> None:
        if not isinstance(entry, dict):
            raise SnapshotFormatError(f"node entry must be an object, got {type(entry).__name__}")
        node_id = entry.get("id")
        label = entry.get("label")
        properties = entry.get("properties")
        if not isinstance(node_id, int) or isinstance(node_id, bool):
            raise SnapshotFormatError(f"node id must be an integer, got {node_id!r}")
        if node_id in self._nodes:
            raise SnapshotFormatError(f"duplicate node id {node_id}")
        if label not in NODE_LABELS:
            raise SnapshotFormatError(f"node {node_id} has unknown label {label!r}")
        if not isinstance(properties, dict):
            raise SnapshotFormatError(f"node {node_id} properties must be an object")
        name = properties.get("name")
        if not isinstance(name, str) or not name:
            raise SnapshotFormatError(f"node {node_id} is missing a non-empty name")
        if (label, name) in self._node_key:
            raise SnapshotFormatError(f"duplicate ({label}, {name!r}) node")
        try:
            coerced = {key: _coerce_property(key, value) for key, value in properties.items()}
        except InvalidProperty as exc:
            raise SnapshotFormatError(f"node {node_id}: {exc}") from exc
        self._nodes[node_id] = Node(node_id, label, coerced)
        self._adjacency[node_id] = []
        self._node_key[(label, name)] = node_id

    def _load_relationship(self, entry: object) -> None:
        if not isinstance(entry, dict):
            raise SnapshotFormatError(f"relationship entry must be an object, got {type(entry).__name__}")
        rel_id = entry.get("id")
        rel_type = entry.get("type")
        source = entry.get("source")
        target = entry.get("target")
        if not isinstance(rel_id, int) or isinstance(rel_id, bool):
            raise SnapshotFormatError(f"relationship id must be an integer, got {rel_id!r}")
        if rel_id in self._relationships:
            raise SnapshotFormatError(f"duplicate relationship id {rel_id}")
        if rel_type not in REL_TYPES:
            raise SnapshotFormatError(f"relationship {rel_id} has unknown type {rel_type!r}")
        for endpoint in (source, target):
            if not isinstance(endpoint, int) or isinstance(endpoint, bool) or endpoint not in self._nodes:
                raise SnapshotFormatError(f"relationship {rel_id} references missing node {endpoint!r}")
        if (rel_type, source, target) in self._rel_key:
            raise SnapshotFormatError(f"duplicate ({rel_type}, {source}, {target}) relationship")
        self._relationships[rel_id] = Relationship(rel_id, rel_type, source, target)
        self._adjacency[source].append(rel_id)
        if target != source:
            self._adjacency[target].append(rel_id)
        self._rel_key[(rel_type, source, target)] = rel_id
