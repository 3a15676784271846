"""
GraphDocument JSON format and Graphviz export
"""

import json
import os
import sys
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from config import DOT_CONFIG
from src.errors import InputError
from src.graph_core import Coloring, Graph, PartitionedGraph, is_proper


class Partite(BaseModel):
    """Partite sets of the based bipartite graph"""
    S: List[int]
    T: List[int]


class GraphDocument(BaseModel):
    """On-disk description of a graph, its partition and named colorings (1-based colors)"""
    n: int = Field(..., ge=0, description="Number of vertices 0..n-1")
    partite: Optional[Partite] = Field(None, description="S/T sides of a B+E_l graph")
    base_edges: List[Tuple[int, int]] = Field(default_factory=list)
    added_edges: List[Tuple[int, int]] = Field(default_factory=list)
    colorings: Optional[Dict[str, List[int]]] = None
    k: Optional[int] = Field(None, ge=1)


def parse_document(text: str) -> GraphDocument:
    """
    Parse and schema-check a GraphDocument

    Raises:
        InputError: malformed JSON (with line and column) or schema violation
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return GraphDocument.model_validate(data)
    except ValidationError as exc:
        problems = '; '.join(
            f"{'.'.join(str(part) for part in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise InputError(f"invalid graph document: {problems}") from exc


def graph_from_document(doc: GraphDocument) -> Union[Graph, PartitionedGraph]:
    """Build the Graph (or PartitionedGraph when partite is present), checking all invariants"""
    if doc.partite is None:
        if doc.added_edges:
            raise InputError("added_edges need a partite block naming the sides S and T")
        return Graph.from_edges(doc.n, doc.base_edges)
    return PartitionedGraph.build(
        doc.n, doc.partite.S, doc.partite.T, doc.base_edges, doc.added_edges
    )


def parse_graph(text: str) -> Union[Graph, PartitionedGraph]:
    return graph_from_document(parse_document(text))


def colorings_from_document(doc: GraphDocument, k: Optional[int] = None) -> Dict[str, Coloring]:
    """
    Named colorings of a document

    Args:
        doc: Parsed document
        k: Palette size, overriding doc.k (falls back to the largest color used)

    Raises:
        InputError: a coloring has the wrong length or an out-of-range color
    """
    named = doc.colorings or {}
    palette = k or doc.k or max((max(colors, default=1) for colors in named.values()), default=1)
    result = {}
    for name, colors in sorted(named.items()):
        if len(colors) != doc.n:
            raise InputError(f"coloring '{name}' has {len(colors)} entries for {doc.n} vertices")
        try:
            result[name] = Coloring(tuple(colors), palette)
        except InputError as exc:
            raise InputError(f"coloring '{name}': {exc}") from exc
    return result


def document_from(
    obj: Union[Graph, PartitionedGraph],
    k: Optional[int] = None,
    colorings: Optional[Dict[str, Coloring]] = None,
) -> GraphDocument:
    """Describe a graph and optional named colorings as a GraphDocument"""
    if isinstance(obj, PartitionedGraph):
        partite = Partite(S=sorted(obj.side_S), T=sorted(obj.side_T))
        base, added, n = sorted(obj.base_edges), sorted(obj.added_edges), obj.graph.n
    else:
        partite, base, added, n = None, obj.edges, [], obj.n
    named = None
    if colorings:
        named = {name: list(c.colors) for name, c in sorted(colorings.items())}
    return GraphDocument(
        n=n, partite=partite, base_edges=base, added_edges=added, colorings=named, k=k
    )


def dump_document(doc: GraphDocument) -> str:
    return json.dumps(doc.model_dump(exclude_none=True), indent=2, sort_keys=True) + '\n'


def load_document(path: str) -> GraphDocument:
    """
    Read and parse a document file

    Raises:
        InputError: the file is not UTF-8 text or not a valid document
        OSError: the file cannot be opened
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except UnicodeDecodeError as exc:
        raise InputError(f"not UTF-8 text (byte {exc.start}): {exc.reason}") from exc
    return parse_document(text)


def save_document(doc: GraphDocument, path: str):
    """Write a document to path, creating parent directories"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dump_document(doc))


def export_dot(obj: Union[Graph, PartitionedGraph], c: Optional[Coloring] = None) -> str:
    """
    Graphviz description of a graph

    Colored vertices are filled from the fixed palette; added edges of a
    B+E_l graph are drawn bold.  A coloring with more colors than the palette
    falls back to plain nodes with a warning.
    """
    g = obj.graph if isinstance(obj, PartitionedGraph) else obj
    added = obj.added_edges if isinstance(obj, PartitionedGraph) else frozenset()
    palette = DOT_CONFIG['palette']
    if c is not None:
        if not is_proper(g, c):
            raise InputError("cannot export an improper coloring")
        if c.k > len(palette):
            print(
                f"Warning: {c.k} colors exceed the {len(palette)}-color palette, exporting uncolored",
                file=sys.stderr,
            )
            c = None

    lines = ['graph G {']
    if c is not None:
        lines.append('  node [style=filled];')
    for v in range(g.n):
        attributes = []
        if isinstance(obj, PartitionedGraph):
            attributes.append('shape=box' if v in obj.side_T else 'shape=ellipse')
        if c is not None:
            attributes.append(f'label="{v}:{c.colors[v]}"')
            attributes.append(f'fillcolor="{palette[c.colors[v] - 1]}"')
        suffix = f" [{', '.join(attributes)}]" if attributes else ''
        lines.append(f'  {v}{suffix};')
    for u, v in g.edges:
        style = f" [style={DOT_CONFIG['added_edge_style']}]" if (u, v) in added else ''
        lines.append(f'  {u} -- {v}{style};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
