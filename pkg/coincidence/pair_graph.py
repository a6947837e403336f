"""
Pair coincidence graph.

Vertices are the pairs {i, j} of distinct colors lying in one Ψ_0 class,
plus the coincidence vertices {i}; edges follow the digit maps. The
system has a modular coincidence iff every pair vertex has a path to a
coincidence vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from analysis.cosets import ColorSet, CosetProfile, children
from substitution.mfs import DigitTable
from utils.logger import get_logger

log = get_logger("coincidence.pair_graph")


@dataclass
class PairGraph:
    graph: nx.MultiDiGraph
    all_reach_coincidence: bool
    stuck: tuple[ColorSet, ...]

    @property
    def vertices(self) -> list[ColorSet]:
        return list(self.graph.nodes)


def pair_coincidence_graph(profile: CosetProfile, table: DigitTable) -> PairGraph:
    """
    Build the pair graph and decide whether every pair reaches a coincidence.

    Returns:
        PairGraph; ``stuck`` lists the pairs with no path to a singleton.
    """
    names = profile.color_names
    g = nx.MultiDiGraph()
    for _, cls in profile.psi0:
        for i in cls:
            s = ColorSet.of([i])
            g.add_node(s, base=True, label=s.label(names))
        for i, j in combinations(cls.members, 2):
            s = ColorSet.of([i, j])
            g.add_node(s, base=False, label=s.label(names))

    for s in list(g.nodes):
        for z in range(len(table.digits)):
            child = children(s, z, table)
            if child not in g:
                # only reachable from an inconsistent profile
                raise AssertionError(f"child {child.label(names)} left the same-class pairs")
            g.add_edge(s, child, key=z, label=table.digit_label(z))

    reach: set[ColorSet] = set()
    for s in g.nodes:
        if s.is_singleton:
            reach.add(s)
            reach |= nx.ancestors(g, s)
    stuck = tuple(s for s in g.nodes if s not in reach)
    log.debug("Pair graph: %d vertices, %d stuck", g.number_of_nodes(), len(stuck))
    return PairGraph(g, not stuck, stuck)
