"""
Graphviz DOT serialization of the coincidence, pair and substitution graphs.

Output is a pure function of the graph: nodes in insertion order, edges
grouped by source node in insertion order, so repeated runs are
byte-identical.
"""

from __future__ import annotations

from typing import Iterator, Union

import networkx as nx

from coincidence.graph import CoincidenceGraph
from coincidence.pair_graph import PairGraph
from coincidence.substitution_graph import SubstitutionGraph

AnyGraph = Union[CoincidenceGraph, PairGraph, SubstitutionGraph]


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def _graph_name(graph: AnyGraph) -> str:
    if isinstance(graph, CoincidenceGraph):
        return "coincidence"
    if isinstance(graph, PairGraph):
        return "pair_coincidence"
    return "substitution"


def iter_dot(graph: AnyGraph) -> Iterator[str]:
    """Yield the DOT text line by line (each line ends with a newline)."""
    g: nx.MultiDiGraph = graph.graph
    yield f"digraph {_graph_name(graph)} {{\n"
    yield "  rankdir=LR;\n"
    yield "  node [shape=circle];\n"
    for node, data in g.nodes(data=True):
        extra = " peripheries=2" if data.get("base") else ""
        yield f"  {_gvquote(data['label'])} [label={_gvquote(data['label'])}{extra}];\n"
    for node in g.nodes:
        source = _gvquote(g.nodes[node]["label"])
        for _, target, data in g.out_edges(node, data=True):
            yield (
                f"  {source} -> {_gvquote(g.nodes[target]['label'])}"
                f" [label={_gvquote(data['label'])}];\n"
            )
    yield "}\n"


def emit_dot(graph: AnyGraph) -> str:
    return "".join(iter_dot(graph))
