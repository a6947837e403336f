"""
Coincidence graph and the modular-coincidence verdict.

Vertices are the distinct sets Ψ_k[a]; the base vertices are the Ψ_0
classes, and each vertex has one outgoing edge per digit, pointing at its
child under that digit. Equal sets have equal children, so the BFS
closure from the base vertices is finite (at most 2^m - 1 vertices).

A singleton vertex at BFS distance k means some coset a + Q^k L' lies in
a single color class: a modular coincidence at level k. The shortest such
distance is the minimal k. If the closure has no singleton there is no
modular coincidence at any level.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING

import networkx as nx

from analysis.cosets import ColorSet, CosetProfile, children
from lattice.sublattice import CosetLabel, Vector, coset_reduce, format_vector
from substitution.mfs import DigitTable, add
from utils.logger import get_logger

if TYPE_CHECKING:
    from coincidence.fast_paths import FastPathFinding

log = get_logger("coincidence.graph")


class Status(str, Enum):
    COINCIDENT = "coincident"
    NOT_COINCIDENT = "not_coincident"
    INCONCLUSIVE = "inconclusive"


def coincidence_bound(m: int) -> int:
    """
    Upper bound on the minimal k.

    A shortest path from a base vertex to a singleton passes through
    pairwise distinct sets of size >= 2, of which there are 2^m - m - 1.
    """
    return max(2 ** m - m - 1, 0)


@dataclass(frozen=True)
class Witness:
    """The singleton reached, the digit path leading to it and the coset a + Q^k L'."""

    color: int
    digits: tuple[Vector, ...]
    coset: CosetLabel

    @property
    def k(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class Verdict:
    status: Status
    bound: int
    min_k: int | None = None
    witness: Witness | None = None
    reason: str = ""
    fast_paths: tuple[FastPathFinding, ...] = ()

    @property
    def is_coincident(self) -> bool:
        return self.status is Status.COINCIDENT

    def with_fast_paths(self, findings: list[FastPathFinding] | tuple[FastPathFinding, ...]) -> Verdict:
        return replace(self, fast_paths=tuple(findings))


@dataclass
class CoincidenceGraph:
    """
    BFS closure of the Ψ_0 classes under the digit maps.

    graph nodes are ColorSets with attributes:
        base (bool), distance (int), parent ((ColorSet, digit index) or None),
        coset (base coset label or None), label (display name).
    graph edges are keyed by digit index and carry the digit label.
    """

    graph: nx.MultiDiGraph
    profile: CosetProfile
    table: DigitTable
    base: tuple[ColorSet, ...] = field(default_factory=tuple)

    @property
    def vertices(self) -> list[ColorSet]:
        return list(self.graph.nodes)

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def distance(self, s: ColorSet) -> int:
        return self.graph.nodes[s]["distance"]

    def singletons(self) -> list[ColorSet]:
        return [s for s in self.graph.nodes if s.is_singleton]

    def labels(self) -> list[str]:
        return [self.graph.nodes[s]["label"] for s in self.graph.nodes]


def coincidence_graph(profile: CosetProfile, table: DigitTable) -> CoincidenceGraph:
    """
    Build the coincidence graph by BFS from the base vertices.

    Base vertices are added first in canonical coset order, digits are
    visited in table order, so vertex and edge order are deterministic.
    """
    names = profile.color_names
    g = nx.MultiDiGraph()
    queue: deque[ColorSet] = deque()
    base: list[ColorSet] = []
    for label, s in profile.psi0:
        if s in g:
            continue
        g.add_node(s, base=True, distance=0, parent=None, coset=label, label=s.label(names))
        base.append(s)
        queue.append(s)

    while queue:
        s = queue.popleft()
        dist = g.nodes[s]["distance"]
        for z in range(len(table.digits)):
            child = children(s, z, table)
            if child not in g:
                g.add_node(
                    child,
                    base=False,
                    distance=dist + 1,
                    parent=(s, z),
                    coset=None,
                    label=child.label(names),
                )
                queue.append(child)
            g.add_edge(s, child, key=z, label=table.digit_label(z))

    log.debug(
        "Coincidence graph: %d vertices, %d edges", g.number_of_nodes(), g.number_of_edges()
    )
    return CoincidenceGraph(g, profile, table, tuple(base))


def _path_to(graph: CoincidenceGraph, target: ColorSet) -> tuple[ColorSet, list[int]]:
    digits: list[int] = []
    node = target
    while graph.graph.nodes[node]["parent"] is not None:
        node, z = graph.graph.nodes[node]["parent"]
        digits.append(z)
    digits.reverse()
    return node, digits


def modular_coincidence(graph: CoincidenceGraph) -> Verdict:
    """
    Read the verdict off a constructed coincidence graph.

    Returns:
        Coincident with the minimal k and a witness coset if a singleton
        is reachable, otherwise NotCoincident.
    """
    profile = graph.profile
    bound = coincidence_bound(profile.m)
    singles = graph.singletons()
    if not singles:
        log.info("No singleton among %d vertices: no modular coincidence", len(graph.vertices))
        return Verdict(Status.NOT_COINCIDENT, bound, reason="no singleton in the graph closure")

    # BFS insertion order is by distance, so the first singleton is a closest one
    target = singles[0]
    root, path = _path_to(graph, target)
    q = profile.q
    rep = graph.graph.nodes[root]["coset"].representative
    modulus = profile.lprime
    for z in path:
        rep = add(q.apply(rep), graph.table.digits[z])
        modulus = q.image_lattice(modulus)
    coset = coset_reduce(rep, modulus)
    witness = Witness(
        color=target.members[0],
        digits=tuple(graph.table.digits[z] for z in path),
        coset=coset,
    )
    k = len(path)
    reason = "sublattice coincidence (k=0)" if k == 0 else f"modular coincidence at k={k}"
    log.info(
        "Coincidence at k=%d: coset %s mod %s lies in color %s",
        k,
        format_vector(coset.representative),
        modulus,
        profile.color_names[witness.color],
    )
    return Verdict(Status.COINCIDENT, bound, min_k=k, witness=witness, reason=reason)
