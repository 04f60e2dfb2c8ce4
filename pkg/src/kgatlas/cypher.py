"""Lexer, parser and interpreter for the graph-query subset.

Supported clauses: MERGE of a labeled node with a property map, MERGE of a
directed relationship between bound variables, MATCH of a single node or a
node-rel-node pattern (directed or undirected), WHERE with CONTAINS, RETURN
of bound variables, and LIMIT. Operands may be string/number literals or
named parameters (``$name``).

Execution delegates MERGE clauses to the store's merge operations, so the
language inherits create-or-match semantics. Read-only queries run under one
read lock and never mutate the store; result rows are ordered ascending by
the ids of the returned columns so output is reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from kgatlas.errors import (
    BindError,
    InvalidName,
    LexError,
    MissingParam,
    ParseError,
    QueryTypeError,
)
from kgatlas.graph import GraphStore, Node, Relationship

KEYWORDS = ("MERGE", "MATCH", "WHERE", "CONTAINS", "RETURN", "LIMIT")

_PUNCT_START = "()[]{}:,.-<"
_ESCAPES = {"\\": "\\", "'": "'", "n": "\n", "t": "\t"}
_UNESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t"}


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    STRING = "string-literal"
    NUMBER = "number"
    PARAMETER = "parameter"
    PUNCTUATION = "punctuation"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str  # exact source slice
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.text)


def tokenize(text: str) -> list[Token]:
    """Split query text into tokens carrying their source offsets."""
    tokens: list[Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "'":
            end = pos + 1
            while end < length:
                if text[end] == "\\":
                    if end + 1 >= length or text[end + 1] not in _ESCAPES:
                        raise LexError(f"unsupported escape {text[end:end + 2]!r}", end)
                    end += 2
                elif text[end] == "'":
                    break
                else:
                    end += 1
            if end >= length:
                raise LexError("unterminated string literal", pos)
            tokens.append(Token(TokenKind.STRING, text[pos:end + 1], pos))
            pos = end + 1
            continue
        if ch == "$":
            end = pos + 1
            while end < length and (text[end].isalnum() or text[end] == "_"):
                end += 1
            if end == pos + 1:
                raise LexError("parameter name expected after '$'", pos)
            tokens.append(Token(TokenKind.PARAMETER, text[pos:end], pos))
            pos = end
            continue
        if ch.isdigit():
            end = pos
            while end < length and text[end].isdigit():
                end += 1
            if end < length and text[end] == "." and end + 1 < length and text[end + 1].isdigit():
                end += 1
                while end < length and text[end].isdigit():
                    end += 1
            tokens.append(Token(TokenKind.NUMBER, text[pos:end], pos))
            pos = end
            continue
        if ch.isalpha() or ch == "_":
            end = pos
            while end < length and (text[end].isalnum() or text[end] == "_"):
                end += 1
            word = text[pos:end]
            kind = TokenKind.KEYWORD if word.upper() in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(kind, word, pos))
            pos = end
            continue
        if ch == "-" and pos + 1 < length and text[pos + 1] == ">":
            tokens.append(Token(TokenKind.PUNCTUATION, "->", pos))
            pos += 2
            continue
        if ch == "<" and pos + 1 < length and text[pos + 1] == "-":
            tokens.append(Token(TokenKind.PUNCTUATION, "<-", pos))
            pos += 2
            continue
        if ch in _PUNCT_START and ch != "<":
            tokens.append(Token(TokenKind.PUNCTUATION, ch, pos))
            pos += 1
            continue
        raise LexError(f"illegal character {ch!r}", pos)
    return tokens


def unquote(literal: str) -> str:
    """Decode a single-quoted string token into its value."""
    body = literal[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            out.append(_ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def quote(value: str) -> str:
    return "'" + "".join(_UNESCAPES.get(ch, ch) for ch in value) + "'"


# --- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Param:
    name: str


# Literal operands are str (text), int or float; Param defers to execution.
Operand = str | int | float | Param


@dataclass
class MergeNode:
    var: str
    label: str
    properties: dict[str, Operand] = field(default_factory=dict)


@dataclass
class MergeRel:
    source_var: str
    rel_type: str
    target_var: str
    direction: str = "->"  # "->" or "<-" as written


@dataclass
class NodePattern:
    var: str
    label: str | None = None


@dataclass
class RelPattern:
    var: str | None = None
    rel_type: str | None = None
    direction: str = "-"  # "-" undirected, "->" left-to-right, "<-" right-to-left


@dataclass
class Match:
    left: NodePattern
    rel: RelPattern | None = None
    right: NodePattern | None = None


@dataclass
class Where:
    var: str
    prop: str
    operand: Operand


@dataclass
class Return:
    items: list[str]


@dataclass
class Limit:
    operand: Operand


Clause = MergeNode | MergeRel | Match | Where | Return | Limit


@dataclass
class Query:
    clauses: list[Clause]


# --- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = tokens
        self.source = source
        self.pos = 0
        self.bound: dict[str, str] = {}  # var -> "node" | "rel"

    def _eof_offset(self) -> int:
        return self.tokens[-1].end if self.tokens else 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Token:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of query", self._eof_offset())
        self.pos += 1
        return token

    def expect_punct(self, text: str) -> Token:
        token = self.peek()
        if token is None or token.kind is not TokenKind.PUNCTUATION or token.text != text:
            raise ParseError(
                f"unexpected {token.text!r}" if token else "unexpected end of query",
                token.offset if token else self._eof_offset(),
                expected=(repr(text),),
            )
        return self.take()

    def expect_identifier(self, what: str) -> Token:
        token = self.peek()
        if token is None or token.kind is not TokenKind.IDENTIFIER:
            raise ParseError(
                f"unexpected {token.text!r}" if token else "unexpected end of query",
                token.offset if token else self._eof_offset(),
                expected=(what,),
            )
        return self.take()

    def at_punct(self, text: str) -> bool:
        token = self.peek()
        return token is not None and token.kind is TokenKind.PUNCTUATION and token.text == text

    def at_keyword(self, word: str) -> bool:
        token = self.peek()
        return token is not None and token.kind is TokenKind.KEYWORD and token.text.upper() == word

    def bind(self, var: str, kind: str, offset: int, fresh_only: bool = False) -> None:
        existing = self.bound.get(var)
        if existing is None:
            self.bound[var] = kind
        elif fresh_only:
            raise BindError(f"variable {var!r} is already bound (offset {offset})")
        elif existing != kind:
            raise BindError(f"variable {var!r} is bound as a {existing}, not a {kind} (offset {offset})")

    def require_bound(self, var: str, offset: int, kind: str | None = None) -> None:
        existing = self.bound.get(var)
        if existing is None:
            raise BindError(f"variable {var!r} is not bound by any prior clause (offset {offset})")
        if kind is not None and existing != kind:
            raise BindError(f"variable {var!r} is bound as a {existing}, not a {kind} (offset {offset})")

    # operand := string | number | parameter
    def operand(self) -> Operand:
        token = self.take()
        if token.kind is TokenKind.STRING:
            return unquote(token.text)
        if token.kind is TokenKind.NUMBER:
            return float(token.text) if "." in token.text else int(token.text)
        if token.kind is TokenKind.PARAMETER:
            return Param(token.text[1:])
        raise ParseError(
            f"unexpected {token.text!r}", token.offset,
            expected=("string literal", "number", "parameter"),
        )

    def property_map(self) -> dict[str, Operand]:
        self.expect_punct("{")
        props: dict[str, Operand] = {}
        while True:
            key_token = self.take()
            if key_token.kind not in (TokenKind.IDENTIFIER, TokenKind.KEYWORD):
                raise ParseError(
                    f"unexpected {key_token.text!r}", key_token.offset,
                    expected=("property key",),
                )
            if key_token.text in props:
                raise ParseError(f"duplicate property key {key_token.text!r}", key_token.offset)
            self.expect_punct(":")
            props[key_token.text] = self.operand()
            if self.at_punct(","):
                self.take()
                continue
            self.expect_punct("}")
            return props

    def merge_clause(self) -> MergeNode | MergeRel:
        self.expect_punct("(")
        first = self.expect_identifier("variable")
        if self.at_punct(":"):  # MERGE (v:Label {...})
            self.take()
            label = self.expect_identifier("label")
            props = self.property_map() if self.at_punct("{") else {}
            self.expect_punct(")")
            self.bind(first.text, "node", first.offset, fresh_only=True)
            return MergeNode(var=first.text, label=label.text, properties=props)
        # MERGE (a)-[:TYPE]->(b)  or  MERGE (a)<-[:TYPE]-(b)
        self.expect_punct(")")
        self.require_bound(first.text, first.offset, kind="node")
        arrow_in = self.at_punct("<-")
        if arrow_in:
            self.take()
        else:
            self.expect_punct("-")
        self.expect_punct("[")
        self.expect_punct(":")
        rel_type = self.expect_identifier("relationship type")
        self.expect_punct("]")
        if arrow_in:
            self.expect_punct("-")
        else:
            self.expect_punct("->")
        self.expect_punct("(")
        second = self.expect_identifier("variable")
        self.expect_punct(")")
        self.require_bound(second.text, second.offset, kind="node")
        return MergeRel(
            source_var=first.text,
            rel_type=rel_type.text,
            target_var=second.text,
            direction="<-" if arrow_in else "->",
        )

    def node_pattern(self) -> NodePattern:
        self.expect_punct("(")
        var = self.expect_identifier("variable")
        label = None
        if self.at_punct(":"):
            self.take()
            label = self.expect_identifier("label").text
        self.expect_punct(")")
        self.bind(var.text, "node", var.offset)
        return NodePattern(var=var.text, label=label)

    def match_clause(self) -> Match:
        left = self.node_pattern()
        if not (self.at_punct("-") or self.at_punct("<-")):
            return Match(left=left)
        arrow_in = self.at_punct("<-")
        self.take()
        self.expect_punct("[")
        rel_var: str | None = None
        rel_type: str | None = None
        token = self.peek()
        if token is not None and token.kind is TokenKind.IDENTIFIER:
            rel_var = self.take().text
        if self.at_punct(":"):
            self.take()
            rel_type = self.expect_identifier("relationship type").text
        bracket = self.expect_punct("]")
        if arrow_in:
            self.expect_punct("-")
            direction = "<-"
        elif self.at_punct("->"):
            self.take()
            direction = "->"
        else:
            self.expect_punct("-")
            direction = "-"
        if rel_var is not None:
            self.bind(rel_var, "rel", bracket.offset)
        right = self.node_pattern()
        return Match(left=left, rel=RelPattern(rel_var, rel_type, direction), right=right)

    def where_clause(self) -> Where:
        var = self.expect_identifier("variable")
        self.require_bound(var.text, var.offset)
        self.expect_punct(".")
        prop = self.take()
        if prop.kind not in (TokenKind.IDENTIFIER, TokenKind.KEYWORD):
            raise ParseError(f"unexpected {prop.text!r}", prop.offset, expected=("property name",))
        contains = self.take()
        if contains.kind is not TokenKind.KEYWORD or contains.text.upper() != "CONTAINS":
            raise ParseError(
                f"unexpected {contains.text!r}", contains.offset, expected=("CONTAINS",)
            )
        return Where(var=var.text, prop=prop.text, operand=self.operand())

    def return_clause(self) -> Return:
        items = []
        while True:
            var = self.expect_identifier("variable")
            self.require_bound(var.text, var.offset)
            items.append(var.text)
            if self.at_punct(","):
                self.take()
                continue
            return Return(items=items)

    def parse(self) -> Query:
        clauses: list[Clause] = []
        saw_return = False
        saw_limit = False
        while (token := self.peek()) is not None:
            if token.kind is not TokenKind.KEYWORD:
                raise ParseError(
                    f"unexpected {token.text!r}", token.offset,
                    expected=("MERGE", "MATCH", "WHERE", "RETURN", "LIMIT"),
                )
            word = token.text.upper()
            if saw_limit:
                raise ParseError("no clause may follow LIMIT", token.offset)
            if saw_return and word != "LIMIT":
                raise ParseError("only LIMIT may follow RETURN", token.offset)
            self.take()
            if word == "MERGE":
                clauses.append(self.merge_clause())
            elif word == "MATCH":
                clauses.append(self.match_clause())
            elif word == "WHERE":
                if not clauses or not isinstance(clauses[-1], (Match, Where)):
                    raise ParseError("WHERE must follow a MATCH", token.offset)
                clauses.append(self.where_clause())
            elif word == "RETURN":
                clauses.append(self.return_clause())
                saw_return = True
            elif word == "LIMIT":
                if not saw_return:
                    raise ParseError("LIMIT is only allowed after RETURN", token.offset)
                clauses.append(Limit(operand=self.operand()))
                saw_limit = True
            else:
                raise ParseError(f"unexpected {token.text!r}", token.offset)
        if not clauses:
            raise ParseError("empty query", 0)
        return Query(clauses=clauses)


def parse(text: str) -> Query:
    """Parse query text, checking variable scope along the way."""
    return _Parser(tokenize(text), text).parse()


# --- pretty printer ----------------------------------------------------------

def _format_operand(value: Operand) -> str:
    if isinstance(value, Param):
        return f"${value.name}"
    if isinstance(value, str):
        return quote(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def pretty(query: Query) -> str:
    """Render an AST back to canonical query text; parse(pretty(q)) == q."""
    lines = []
    for clause in query.clauses:
        if isinstance(clause, MergeNode):
            props = ""
            if clause.properties:
                inner = ", ".join(
                    f"{key}: {_format_operand(value)}" for key, value in clause.properties.items()
                )
                props = f" {{{inner}}}"
            lines.append(f"MERGE ({clause.var}:{clause.label}{props})")
        elif isinstance(clause, MergeRel):
            if clause.direction == "<-":
                lines.append(
                    f"MERGE ({clause.source_var})<-[:{clause.rel_type}]-({clause.target_var})"
                )
            else:
                lines.append(
                    f"MERGE ({clause.source_var})-[:{clause.rel_type}]->({clause.target_var})"
                )
        elif isinstance(clause, Match):
            left = clause.left.var + (f":{clause.left.label}" if clause.left.label else "")
            if clause.rel is None:
                lines.append(f"MATCH ({left})")
            else:
                right = clause.right.var + (f":{clause.right.label}" if clause.right.label else "")
                body = (clause.rel.var or "") + (f":{clause.rel.rel_type}" if clause.rel.rel_type else "")
                if clause.rel.direction == "<-":
                    lines.append(f"MATCH ({left})<-[{body}]-({right})")
                elif clause.rel.direction == "->":
                    lines.append(f"MATCH ({left})-[{body}]->({right})")
                else:
                    lines.append(f"MATCH ({left})-[{body}]-({right})")
        elif isinstance(clause, Where):
            lines.append(f"WHERE {clause.var}.{clause.prop} CONTAINS {_format_operand(clause.operand)}")
        elif isinstance(clause, Return):
            lines.append("RETURN " + ", ".join(clause.items))
        elif isinstance(clause, Limit):
            lines.append(f"LIMIT {_format_operand(clause.operand)}")
        else:
            raise TypeError(f"unknown clause {clause!r}")
    return "\n".join(lines)


# --- interpreter ---------------------------------------------------------------

@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list[Node | Relationship]]

    def to_dicts(self) -> list[dict]:
        return [
            {column: value.to_dict() for column, value in zip(self.columns, row)}
            for row in self.rows
        ]


def is_write_query(query: Query) -> bool:
    return any(isinstance(clause, (MergeNode, MergeRel)) for clause in query.clauses)


def _resolve(operand: Operand, params: dict[str, object]) -> object:
    if isinstance(operand, Param):
        if operand.name not in params:
            raise MissingParam(operand.name)
        return params[operand.name]
    return operand


def _sort_key(row: list[Node | Relationship]) -> tuple[int, ...]:
    return tuple(value.id for value in row)


def execute(query: Query, params: dict[str, object], store: GraphStore) -> ResultTable:
    """Run a parsed query against the store.

    MERGE queries take the writer role clause by clause; read-only queries
    hold one read lock for the whole run so they see a consistent snapshot.
    """
    if is_write_query(query):
        return _execute(query, params, store)
    with store.read_lock():
        return _execute(query, params, store)


def _execute(query: Query, params: dict[str, object], store: GraphStore) -> ResultTable:
    rows: list[dict[str, Node | Relationship]] = [{}]
    columns: list[str] = []
    projected: list[list[Node | Relationship]] | None = None

    for clause in query.clauses:
        if isinstance(clause, MergeNode):
            resolved: dict[str, object] = {}
            for key, operand in clause.properties.items():
                value = _resolve(operand, params)
                if not isinstance(value, (str, int, float)) or isinstance(value, bool):
                    raise QueryTypeError(f"property {key!r} must be text or a number")
                resolved[key] = value
            name = resolved.get("name")
            if not isinstance(name, str) or not name:
                raise InvalidName(f"MERGE node {clause.var!r} needs a non-empty name property")
            extras = {key: value for key, value in resolved.items() if key != "name"}
            for row in rows:
                node_id = store.merge_node(clause.label, name, extras)
                row[clause.var] = store.get_node(node_id)
        elif isinstance(clause, MergeRel):
            for row in rows:
                source = row[clause.source_var]
                target = row[clause.target_var]
                if clause.direction == "<-":
                    source, target = target, source
                store.merge_relationship(source.id, clause.rel_type, target.id)
        elif isinstance(clause, Match):
            rows = _match(clause, rows, store)
        elif isinstance(clause, Where):
            operand = _resolve(clause.operand, params)
            if not isinstance(operand, str):
                raise QueryTypeError("CONTAINS operand must be text")
            rows = [
                row for row in rows
                if isinstance(row[clause.var].properties.get(clause.prop), str)
                and operand in row[clause.var].properties[clause.prop]
            ]
        elif isinstance(clause, Return):
            columns = list(clause.items)
            projected = sorted(
                ([row[item] for item in clause.items] for row in rows), key=_sort_key
            )
        elif isinstance(clause, Limit):
            limit = _resolve(clause.operand, params)
            if not isinstance(limit, int) or isinstance(limit, bool) or limit < 0:
                raise QueryTypeError("LIMIT operand must be a nonnegative integer")
            assert projected is not None  # parser guarantees LIMIT follows RETURN
            projected = projected[:limit]
    return ResultTable(columns=columns, rows=projected if projected is not None else [])


def _match(clause: Match, rows: list[dict], store: GraphStore) -> list[dict]:
    out: list[dict] = []
    if clause.rel is None:
        pattern = clause.left
        for row in rows:
            if pattern.var in row:
                node = row[pattern.var]
                if pattern.label is None or node.label == pattern.label:
                    out.append(row)
            else:
                for node in store.nodes():
                    if pattern.label is None or node.label == pattern.label:
                        out.append({**row, pattern.var: node})
        return out

    left, rel_pattern, right = clause.left, clause.rel, clause.right
    relationships = store.relationships()
    node_by_id = {node.id: node for node in store.nodes()}
    for row in rows:
        for rel in relationships:
            if rel_pattern.rel_type is not None and rel.rel_type != rel_pattern.rel_type:
                continue
            if rel_pattern.var is not None and rel_pattern.var in row and row[rel_pattern.var].id != rel.id:
                continue
            if rel_pattern.direction == "->":
                orientations = [(rel.source, rel.target)]
            elif rel_pattern.direction == "<-":
                orientations = [(rel.target, rel.source)]
            elif rel.source == rel.target:
                orientations = [(rel.source, rel.target)]
            else:
                orientations = [(rel.source, rel.target), (rel.target, rel.source)]
            for left_id, right_id in orientations:
                if left.var == right.var and left_id != right_id:
                    continue
                left_node = node_by_id[left_id]
                right_node = node_by_id[right_id]
                if left.var in row and row[left.var].id != left_id:
                    continue
                if right.var in row and row[right.var].id != right_id:
                    continue
                if left.label is not None and left_node.label != left.label:
                    continue
                if right.label is not None and right_node.label != right.label:
                    continue
                new_row = {**row, left.var: left_node, right.var: right_node}
                if rel_pattern.var is not None:
                    new_row[rel_pattern.var] = rel
                out.append(new_row)
    return out
