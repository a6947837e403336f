"""
Substitution graph: the orbit of the identity tuple (0, 1, ..., m-1) under
the digit maps applied coordinate-wise.

The vertex count is the size of the kernel-style state space; a constant
tuple reached along digit path z_1 ... z_k means the (z_1 ... z_k)-th
letter of η^k(i) is the same for every letter i.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

import config
from substitution.mfs import DigitTable
from utils.errors import StateBudgetExceeded
from utils.logger import get_logger

log = get_logger("coincidence.substitution_graph")

Tuple = tuple[int, ...]


@dataclass
class SubstitutionGraph:
    graph: nx.MultiDiGraph
    root: Tuple
    constant: Tuple | None
    path: tuple[int, ...]  # digit indices from the root to ``constant``

    @property
    def vertex_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def constant_reachable(self) -> bool:
        return self.constant is not None


def _tuple_label(t: Tuple, names: tuple[str, ...] | None) -> str:
    return "(" + ",".join(names[c] if names else str(c) for c in t) + ")"


def substitution_graph(
    table: DigitTable,
    color_names: tuple[str, ...] | None = None,
    max_states: int | None = None,
) -> SubstitutionGraph:
    """
    BFS from the identity tuple; the first constant tuple found is a closest one.

    Raises:
        StateBudgetExceeded: If more than max_states tuples are reached.
    """
    budget = config.MAX_STATES if max_states is None else max_states
    m = table.m
    root: Tuple = tuple(range(m))
    g = nx.MultiDiGraph()
    g.add_node(root, base=True, label=_tuple_label(root, color_names))
    parent: dict[Tuple, tuple[Tuple, int] | None] = {root: None}
    constant: Tuple | None = root if len(set(root)) == 1 else None
    queue: deque[Tuple] = deque([root])

    while queue:
        v = queue.popleft()
        for z, digit_map in enumerate(table.maps):
            w = tuple(digit_map[c] for c in v)
            if w not in parent:
                if len(parent) >= budget:
                    raise StateBudgetExceeded("substitution graph states", budget)
                parent[w] = (v, z)
                g.add_node(w, base=False, label=_tuple_label(w, color_names))
                queue.append(w)
                if constant is None and len(set(w)) == 1:
                    constant = w
            g.add_edge(v, w, key=z, label=table.digit_label(z))

    path: list[int] = []
    node = constant
    while node is not None and parent[node] is not None:
        node, z = parent[node]
        path.append(z)
    path.reverse()
    log.debug("Substitution graph: %d vertices, constant=%s", len(parent), constant)
    return SubstitutionGraph(g, root, constant, tuple(path))
