"""
Collaring of nonadmissible systems.

Every point is recolored by the class of its centered R-cluster (the
colors on the lattice points within Euclidean distance R). When the
system is nicely growing at R, the substitution image of a cluster
determines the clusters of all points of Qx + QF (F the unit box), and
the recolored system is admissible with digits QF ∩ Z^d. The two systems
are mutually locally derivable; a coincidence of the collared system
transfers back to the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import config
from coincidence.graph import Status, Verdict
from lattice.expansion import ExpansionMap
from lattice.sublattice import Vector
from substitution.lss import LSSSpec, find_seed, generate_patch, iter_patches, substitute
from substitution.mfs import MFS, add, is_admissible, is_primitive, translate
from utils.errors import AdmissibilityPostcheckFailed, Diverged, InputError, NotAnLSS, NotWellDefined
from utils.logger import get_logger

log = get_logger("analysis.collaring")

Cluster = tuple[int, ...]


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

def ball_offsets(radius: int, d: int) -> tuple[Vector, ...]:
    """Lattice points v with |v|^2 <= R^2, in lexicographic order."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    box = range(-radius, radius + 1)
    return tuple(v for v in product(box, repeat=d) if sum(x * x for x in v) <= radius * radius)


def fundamental_image(q: ExpansionMap) -> tuple[Vector, ...]:
    """QF ∩ Z^d for the half-open unit box F; exactly |det Q| points."""
    corners = [q.apply(c) for c in product((0, 1), repeat=q.d)]
    ranges = [range(min(c[i] for c in corners), max(c[i] for c in corners) + 1) for i in range(q.d)]
    cells = []
    for y in product(*ranges):
        f = q.rational_preimage(y)
        if all(0 <= x < 1 for x in f):
            cells.append(tuple(y))
    if len(cells) != abs(q.det):
        raise AssertionError(f"QF holds {len(cells)} lattice points, |det Q| = {abs(q.det)}")
    return tuple(sorted(cells))


def collar_window(q: ExpansionMap, ball: tuple[Vector, ...]) -> tuple[Vector, ...]:
    """Offsets of QF + R-ball relative to Qx."""
    return tuple(sorted({add(f, b) for f in fundamental_image(q) for b in ball}))


# ---------------------------------------------------------------------------
# Clusters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClusterClass:
    """A translation class of R-clusters; colors are listed in ball order."""

    id: int
    center_color: int
    colors: Cluster
    representative: Vector | None


def _clusters_in(points: dict[Vector, int], ball: tuple[Vector, ...]) -> dict[Cluster, Vector]:
    found: dict[Cluster, Vector] = {}
    for x in sorted(points):
        colors = tuple(points.get(add(x, b), -1) for b in ball)
        if -1 not in colors:
            found.setdefault(colors, x)
    return found


def enumerate_clusters(
    spec: LSSSpec,
    radius: int,
    max_depth: int | None = None,
    stable_steps: int | None = None,
    certify_images: bool = True,
) -> list[ClusterClass]:
    """
    All translation classes of centered R-clusters of the fixed point.

    Patches grow until the class set is unchanged over stable_steps
    transitions. With certify_images, every class must also have been seen
    with its image window Qx + QF + R-ball inside the patch, identically
    for all its representatives.

    Raises:
        NotWellDefined: If two centers of one class have different images.
        Diverged: If the classes never stabilize within max_depth.
    """
    max_depth = config.MAX_DEPTH if max_depth is None else max_depth
    stable_steps = config.STABLE_STEPS if stable_steps is None else stable_steps
    ball = ball_offsets(radius, spec.d)
    window = collar_window(spec.mfs.q, ball)
    center = ball.index(tuple([0] * spec.d))
    q = spec.mfs.q

    history: list[frozenset[Cluster]] = []
    for patch in iter_patches(spec, max_depth):
        pts = patch.points
        found = _clusters_in(pts, ball)
        images: dict[Cluster, tuple[Cluster, Vector]] = {}
        if certify_images:
            for x in sorted(pts):
                colors = tuple(pts.get(add(x, b), -1) for b in ball)
                if -1 in colors:
                    continue
                qx = q.apply(x)
                img = tuple(pts.get(add(qx, w), -1) for w in window)
                if -1 in img:
                    continue
                if colors in images and images[colors][0] != img:
                    raise NotWellDefined(colors, (images[colors][1], x))
                images.setdefault(colors, (img, x))
        keys = frozenset(found)
        history.append(keys)
        if not keys or len(history) <= stable_steps:
            continue
        if any(h != keys for h in history[-stable_steps - 1 :]):
            continue
        if certify_images and any(k not in images for k in keys):
            continue
        ordered = sorted(keys, key=lambda c: (c[center], c))
        log.info("R=%d: %d cluster classes at depth %d", radius, len(ordered), patch.depth)
        return [ClusterClass(i, c[center], c, found[c]) for i, c in enumerate(ordered)]
    raise Diverged(max_depth, f"{radius}-clusters did not stabilize")


def _cluster_image(mfs: MFS, ball: tuple[Vector, ...], colors: Cluster) -> dict[Vector, int]:
    return substitute(mfs, {b: c for b, c in zip(ball, colors)})


def nicely_growing_failures(spec: LSSSpec, radius: int, max_depth: int | None = None) -> list[ClusterClass]:
    """Cluster classes whose substitution image misses a point of QF + R-ball."""
    ball = ball_offsets(radius, spec.d)
    window = collar_window(spec.mfs.q, ball)
    failing = []
    for cls in enumerate_clusters(spec, radius, max_depth, certify_images=False):
        image = _cluster_image(spec.mfs, ball, cls.colors)
        if any(w not in image for w in window):
            failing.append(cls)
    return failing


def is_nicely_growing(spec: LSSSpec, radius: int, max_depth: int | None = None) -> bool:
    """True iff Φ of every centered R-cluster covers QF + R-ball."""
    return not nicely_growing_failures(spec, radius, max_depth)


# ---------------------------------------------------------------------------
# Collared system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CollaredSystem:
    """
    mfs: the admissible system on cluster classes (same coordinates as the
        original normalized system).
    spec: that system with its own seed.
    color_map[c]: the original color refined by class c.
    """

    mfs: MFS
    spec: LSSSpec
    color_map: tuple[int, ...]
    classes: tuple[ClusterClass, ...]
    radius: int
    cells: tuple[Vector, ...]

    @property
    def n(self) -> int:
        return len(self.classes)


def admissibilize(spec: LSSSpec, radius: int, max_depth: int | None = None) -> CollaredSystem:
    """
    Recolor by R-cluster class and read the admissible system off the cluster images.

    Classes produced by substitution but not seen in the patch are added
    until the class set is closed. Class c at cell f of the image of class
    j gives the map x -> Qx + f in entry (c, j).

    Raises:
        InputError: If the system is not nicely growing at this radius.
        AdmissibilityPostcheckFailed: If the result is not admissible and primitive.
    """
    ball = ball_offsets(radius, spec.d)
    cells = fundamental_image(spec.mfs.q)
    window = collar_window(spec.mfs.q, ball)
    center = ball.index(tuple([0] * spec.d))
    classes = list(enumerate_clusters(spec, radius, max_depth))
    by_key = {c.colors: c.id for c in classes}

    columns: dict[int, list[tuple[int, Vector]]] = {}
    pending = [c.id for c in classes]
    while pending:
        j = pending.pop(0)
        image = _cluster_image(spec.mfs, ball, classes[j].colors)
        if any(w not in image for w in window):
            raise InputError(f"not nicely growing at R={radius}: class {j} does not cover its window")
        column = []
        for f in cells:
            child = tuple(image[add(f, b)] for b in ball)
            if child not in by_key:
                by_key[child] = len(classes)
                classes.append(ClusterClass(len(classes), child[center], child, None))
                pending.append(by_key[child])
            column.append((by_key[child], f))
        columns[j] = column

    n = len(classes)
    maps = ((i, j, f) for j, column in columns.items() for i, f in column)
    collared = MFS.from_maps(spec.mfs.q, n, maps)
    admissible = is_admissible(collared)
    if not admissible.ok:
        raise AdmissibilityPostcheckFailed(admissible.diagnostic)
    if not is_primitive(collared):
        raise AdmissibilityPostcheckFailed("collared system is not primitive")

    color_map = tuple(c.center_color for c in classes)
    counters: dict[int, int] = {}
    names = []
    for c in classes:
        idx = counters.get(c.center_color, 0)
        counters[c.center_color] = idx + 1
        names.append(f"{spec.color_names[c.center_color]}{idx}")
    collared_spec = find_seed(collared, tuple(names))
    log.info("Collared at R=%d: %d classes over %d colors", radius, n, spec.m)
    return CollaredSystem(collared, collared_spec, color_map, tuple(classes), radius, cells)


def find_collaring_radius(spec: LSSSpec, max_radius: int | None = None, max_depth: int | None = None) -> int:
    """
    Smallest R in 1, 2, 4, ... (up to the cap) that is nicely growing and well defined.

    Raises:
        Diverged: If no radius up to the cap works.
    """
    cap = config.COLLAR_MAX_RADIUS if max_radius is None else max_radius
    radius = 1
    while radius <= cap:
        try:
            if is_nicely_growing(spec, radius, max_depth):
                enumerate_clusters(spec, radius, max_depth)
                log.info("Collaring radius R=%d accepted", radius)
                return radius
        except (NotWellDefined, NotAnLSS, Diverged) as exc:
            log.debug("R=%d rejected: %s", radius, exc)
        radius *= 2
    raise Diverged(cap, "no nicely growing collaring radius up to the cap")


@dataclass(frozen=True)
class TransferFinding:
    status: Status
    message: str


def transfer_verdict(original: LSSSpec, collared_verdict: Verdict) -> TransferFinding:
    """A coincidence of the collared system proves the original consists of model sets; nothing else transfers."""
    if collared_verdict.is_coincident:
        return TransferFinding(Status.COINCIDENT, "original consists of model sets")
    return TransferFinding(
        Status.INCONCLUSIVE,
        f"no coincidence found for the collared system; seed {original.describe_seed()} undecided",
    )


def refinement_matches(collared: CollaredSystem, original: LSSSpec, depth: int = 2) -> bool:
    """
    Patch-scale check that the collared coloring refines the original one.

    The collared patch, mapped through color_map, is compared with the
    original fixed point grown from the same seed position with the
    mapped seed color (generate_patch(original, depth) itself when the two
    seeds agree). Both patches must be nonempty and equal wherever both
    are defined.
    """
    shift = collared.spec.offset
    seed = collared.color_map[collared.spec.seed_color]
    same_seed = not any(shift) and seed == original.seed_color and collared.spec.period == original.period
    reference = original if same_seed else LSSSpec(
        translate(original.mfs, shift),
        seed,
        original.color_names,
        add(original.offset, shift),
        collared.spec.period,
    )
    try:
        expected = generate_patch(reference, depth).points
    except NotAnLSS:
        log.debug("Original system grows no fixed point from %s", reference.describe_seed())
        return False
    mapped = {x: collared.color_map[c] for x, c in generate_patch(collared.spec, depth).points.items()}
    common = expected.keys() & mapped.keys()
    return bool(common) and all(expected[x] == mapped[x] for x in common)
