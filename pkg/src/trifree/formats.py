"""Embedding documents, graph6 import and deterministic report serialisation.

Embedding JSON::

    {"version": "1", "n": 4,
     "rotations": [[1, 3], [2, 0], [3, 1], [0, 2]],
     "H_vertices": [0], "H_edges": [],
     "lists": [[1, 2, 3, 4], ...],
     "precoloring": {"0": 1}}

``rotations[v]`` lists the neighbours of ``v`` in cyclic order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .coloring import ListAssignment, make_lists
from .embedding import EmbeddedGraph, EmbeddingError, Graph, SubgraphMask, build_embedding, sorted_rotation

FORMAT_VERSION = "1"
SUPPORTED_VERSIONS = {"1"}


class DocumentError(ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    pass


class ValidationError(DocumentError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class Graph6Syntax(DocumentError):
    pass


class RotationMismatch(DocumentError):
    pass


@dataclass(frozen=True)
class EmbeddingDocument:
    n: int
    rotations: tuple[tuple[int, ...], ...]
    h_vertices: tuple[int, ...] = ()
    h_edges: tuple[tuple[int, int], ...] = ()
    lists: tuple[tuple[int, ...], ...] | None = None
    precoloring: tuple[tuple[int, int], ...] = ()
    version: str = FORMAT_VERSION
    name: str = field(default="", compare=False)

    def embedding(self) -> EmbeddedGraph:
        return build_embedding(self.n, self.rotations)

    def h(self) -> SubgraphMask:
        return SubgraphMask(frozenset(self.h_vertices), frozenset(self.h_edges))

    def list_assignment(self) -> ListAssignment:
        if self.lists is None:
            raise ValidationError("lists", "document has no list assignment")
        return make_lists(self.lists)

    def phi(self) -> dict[int, int]:
        return dict(self.precoloring)

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "version": self.version,
            "n": self.n,
            "rotations": [list(r) for r in self.rotations],
            "H_vertices": list(self.h_vertices),
            "H_edges": [list(e) for e in self.h_edges],
        }
        if self.lists is not None:
            out["lists"] = [list(l) for l in self.lists]
        if self.precoloring:
            out["precoloring"] = {str(v): c for v, c in self.precoloring}
        return out


def serialize(doc: EmbeddingDocument) -> str:
    return json.dumps(doc.to_json(), indent=2, sort_keys=True) + "\n"


def _int(value: Any, path: str, minimum: int | None = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(path, f"expected an integer >= {minimum}, got {value}")
    return value


def _array(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(path, f"expected an array, got {type(value).__name__}")
    return value


def document_from_json(data: Any, name: str = "") -> EmbeddingDocument:
    if not isinstance(data, dict):
        raise ValidationError("$", "expected an object")
    known = {"version", "n", "rotations", "H_vertices", "H_edges", "lists", "precoloring", "name", "description"}
    for key in data:
        if key not in known:
            raise ValidationError(key, "unknown field")
    version = data.get("version", FORMAT_VERSION)
    if not isinstance(version, str) or version not in SUPPORTED_VERSIONS:
        raise ValidationError("version", f"unsupported format version {version!r}")
    if "n" not in data:
        raise ValidationError("n", "missing")
    n = _int(data["n"], "n")
    if "rotations" not in data:
        raise ValidationError("rotations", "missing")
    rots = _array(data["rotations"], "rotations")
    if len(rots) != n:
        raise ValidationError("rotations", f"expected {n} rotations, got {len(rots)}")
    rotations = tuple(
        tuple(_int(w, f"rotations[{v}][{i}]") for i, w in enumerate(_array(r, f"rotations[{v}]")))
        for v, r in enumerate(rots)
    )
    try:
        build_embedding(n, rotations)
    except EmbeddingError as exc:
        raise ValidationError("rotations", str(exc)) from exc

    hv = tuple(_int(v, f"H_vertices[{i}]") for i, v in enumerate(_array(data.get("H_vertices", []), "H_vertices")))
    for i, v in enumerate(hv):
        if v >= n:
            raise ValidationError(f"H_vertices[{i}]", f"vertex {v} out of range")
    hset = set(hv)
    edges = []
    for i, e in enumerate(_array(data.get("H_edges", []), "H_edges")):
        e = _array(e, f"H_edges[{i}]")
        if len(e) != 2:
            raise ValidationError(f"H_edges[{i}]", "expected a pair")
        a, b = (_int(x, f"H_edges[{i}][{j}]") for j, x in enumerate(e))
        for end in (a, b):
            if end not in hset:
                raise ValidationError(f"H_edges[{i}]", f"endpoint {end} is not in H_vertices")
        if b not in rotations[a]:
            raise ValidationError(f"H_edges[{i}]", f"({a}, {b}) is not an edge of the graph")
        edges.append((min(a, b), max(a, b)))

    lists = None
    if "lists" in data:
        raw = _array(data["lists"], "lists")
        if len(raw) != n:
            raise ValidationError("lists", f"expected {n} lists, got {len(raw)}")
        lists = []
        for v, l in enumerate(raw):
            cols = tuple(_int(c, f"lists[{v}][{j}]") for j, c in enumerate(_array(l, f"lists[{v}]")))
            if not cols:
                raise ValidationError(f"lists[{v}]", "list is empty")
            if len(set(cols)) != len(cols):
                raise ValidationError(f"lists[{v}]", "repeated colour")
            lists.append(tuple(sorted(cols)))
        lists = tuple(lists)

    pre = []
    if "precoloring" in data:
        raw = data["precoloring"]
        if not isinstance(raw, dict):
            raise ValidationError("precoloring", "expected an object mapping vertex to colour")
        for key, c in raw.items():
            try:
                v = int(key)
            except ValueError:
                raise ValidationError(f"precoloring.{key}", "vertex key must be an integer") from None
            if not 0 <= v < n:
                raise ValidationError(f"precoloring.{key}", f"vertex {v} out of range")
            c = _int(c, f"precoloring.{key}")
            if lists is not None and c not in lists[v]:
                raise ValidationError(f"precoloring.{key}", f"colour {c} not in the list of vertex {v}")
            pre.append((v, c))
    return EmbeddingDocument(
        n=n,
        rotations=rotations,
        h_vertices=tuple(sorted(hv)),
        h_edges=tuple(sorted(set(edges))),
        lists=lists,
        precoloring=tuple(sorted(pre)),
        version=version,
        name=name or str(data.get("name", "")),
    )


def parse_embedding(text: str, name: str = "") -> EmbeddingDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return document_from_json(data, name)


def require_k_lists(doc: EmbeddingDocument, k: int = 4) -> None:
    if doc.lists is None:
        raise ValidationError("lists", f"a {k}-list-assignment is required")
    for v, l in enumerate(doc.lists):
        if len(l) < k:
            raise ValidationError(f"lists[{v}]", f"vertex {v} has {len(l)} colours, at least {k} required")


# -- graph6 ---------------------------------------------------------------------


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise Graph6Syntax("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Syntax("truncated vertex count")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, data[8:]
    if len(data) < 4:
        raise Graph6Syntax("truncated vertex count")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, data[4:]


def decode_graph6(line: str) -> Graph:
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6Syntax("graph6 is printable ASCII") from exc
    if any(not 63 <= b <= 126 for b in data):
        raise Graph6Syntax(f"character outside the graph6 range in {text!r}")
    n, body = _decode_n(data)
    bits_needed = n * (n - 1) // 2
    if len(body) != (bits_needed + 5) // 6:
        raise Graph6Syntax(f"expected {(bits_needed + 5) // 6} data bytes for n={n}, got {len(body)}")
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = bytes([n + 63])
    elif n < 258048:
        head = bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    else:
        head = bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6))
    return (head + body).decode("ascii")


def import_graph6(text: str, rotations: Sequence | None = None) -> list[EmbeddingDocument]:
    """One document per graph6 line.

    ``rotations`` is either a single rotation system (one graph) or a list
    with one rotation system per line.  Without it, neighbours are taken in
    increasing order, which is still a valid orientable embedding.
    """
    lines = [l for l in text.splitlines() if l.strip()]
    graphs = [decode_graph6(l) for l in lines]
    if rotations is None:
        systems = [sorted_rotation(g) for g in graphs]
    else:
        systems = list(rotations)
        if len(graphs) == 1 and systems and all(isinstance(x, int) for x in systems[0]):
            systems = [systems]
        if len(systems) != len(graphs):
            raise RotationMismatch(f"{len(graphs)} graphs but {len(systems)} rotation systems")
    docs = []
    for idx, (g, rot) in enumerate(zip(graphs, systems)):
        if len(rot) != g.n:
            raise RotationMismatch(f"graph {idx}: {g.n} vertices but rotation for {len(rot)}")
        for v, r in enumerate(rot):
            if set(r) != set(g.adj[v]) or len(r) != len(g.adj[v]):
                raise RotationMismatch(f"graph {idx}: rotation at vertex {v} does not match its neighbours")
        docs.append(EmbeddingDocument(n=g.n, rotations=tuple(tuple(r) for r in rot)))
    return docs


# -- reports --------------------------------------------------------------------


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return x


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    result: Any
    exit_status: int

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "format_version": FORMAT_VERSION,
            "inputs_digest": self.inputs_digest,
            "result": _jsonable(self.result),
            "exit_status": self.exit_status,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\0")
    return "sha256:" + h.hexdigest()


def parse_fraction(text: str) -> Fraction:
    """``p/q`` or an integer; decimals are rejected to keep inputs exact."""
    if "." in text or "e" in text.lower():
        raise ValueError(f"rationals are written p/q, got {text!r}")
    return Fraction(text)
