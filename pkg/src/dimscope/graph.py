"""Thresholded dimension graph: sampling, cliques, and panel merging.

Vertices are the visible numeric dimensions; an edge joins two dims when
their distance is below `d_select`. Dimension sampling first hides dims
that sit within `d_remove` of an already-visible dim, keeping one
representative per near-duplicate group. Maximal cliques become PCP
panels, and panels whose cliques overlap in exactly one dimension are
chained together at that junction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CliqueExplosion
from .metrics import DistanceMatrix

DEFAULT_CLIQUE_CAP = 256


@dataclass(frozen=True)
class GraphParams:
    """User-steered thresholds and overrides for graph construction."""

    d_select: float
    d_remove: float = 0.0
    forced_include: frozenset[int] = frozenset()
    forced_exclude: frozenset[int] = frozenset()
    sampling_seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.d_select) or self.d_select < 0:
            raise ValueError("d_select must be a finite non-negative number")
        if not np.isfinite(self.d_remove) or self.d_remove < 0:
            raise ValueError("d_remove must be a finite non-negative number")
        # d_remove == 0 never hides anything, so it is legal even when
        # d_select == 0 (which the strict ordering would otherwise forbid)
        if self.d_remove != 0.0 and self.d_remove >= self.d_select:
            raise ValueError("d_remove must be smaller than d_select")
        if self.forced_include & self.forced_exclude:
            raise ValueError("a dim cannot be both force-included and force-excluded")


@dataclass(frozen=True)
class DimensionGraph:
    visible_dims: tuple[int, ...]
    edges: frozenset[tuple[int, int]]  # (j, k) with j < k
    hidden_dims: dict[int, int] = field(default_factory=dict)  # hidden -> representative

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.visible_dims}
        for j, k in self.edges:
            adj[j].add(k)
            adj[k].add(j)
        return adj


@dataclass(frozen=True)
class Panel:
    """One PCP panel: a chain of cliques joined at single shared dims."""

    segments: tuple[tuple[int, ...], ...]
    junctions: tuple[int, ...]  # junction i sits between segments i and i+1

    @property
    def dims(self) -> frozenset[int]:
        return frozenset(d for seg in self.segments for d in seg)


def sample_dimensions(dm: DistanceMatrix, params: GraphParams) -> tuple[tuple[int, ...], dict[int, int]]:
    """Pick the visible dim set and map each hidden dim to its representative.

    Greedy pass over a seeded random permutation: a dim goes hidden when an
    already-visible dim lies strictly within d_remove. Force-included dims
    are processed first and never hidden; force-excluded dims are dropped
    outright (no representative). Degenerate dims never enter the graph.
    """
    candidates = [j for j in dm.defined_dims() if j not in params.forced_exclude]
    forced = sorted(j for j in candidates if j in params.forced_include)
    rest = [j for j in candidates if j not in params.forced_include]
    rng = np.random.default_rng(params.sampling_seed)
    order = forced + [rest[i] for i in rng.permutation(len(rest))]

    d = dm.values
    visible: list[int] = []
    hidden: dict[int, int] = {}
    for j in order:
        best = None
        if params.d_remove > 0.0 and j not in params.forced_include:
            for v in visible:
                dist = d[v, j]
                if np.isnan(dist) or dist >= params.d_remove:
                    continue
                if best is None or dist < best[0] or (dist == best[0] and v < best[1]):
                    best = (dist, v)
        if best is None:
            visible.append(j)
        else:
            hidden[j] = best[1]
    return tuple(sorted(visible)), hidden


def build_graph(dm: DistanceMatrix, params: GraphParams) -> DimensionGraph:
    """Sampled vertices plus an edge for every pair closer than d_select."""
    visible, hidden = sample_dimensions(dm, params)
    d = dm.values
    edges = set()
    idx = np.asarray(visible, dtype=np.int64)
    if idx.size >= 2:
        sub = d[np.ix_(idx, idx)]
        with np.errstate(invalid="ignore"):
            mask = sub < params.d_select
        for a, b in zip(*np.nonzero(np.triu(mask, k=1))):
            edges.add((int(idx[a]), int(idx[b])))
    return DimensionGraph(visible_dims=visible, edges=frozenset(edges), hidden_dims=hidden)


def maximal_cliques(g: DimensionGraph, cap: int = DEFAULT_CLIQUE_CAP) -> list[tuple[int, ...]]:
    """All maximal cliques of size >= 2, deterministically ordered.

    Bron-Kerbosch with pivoting. Each clique is sorted by dim id and the
    list is sorted by (size desc, lexicographic). Raises CliqueExplosion
    as soon as more than `cap` cliques have been found.
    """
    adj = g.adjacency()
    found: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            if len(r) >= 2:
                found.append(tuple(sorted(r)))
                if len(found) > cap:
                    raise CliqueExplosion(cap)
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(g.visible_dims), set())
    found.sort(key=lambda c: (-len(c), c))
    return found


def merge_panels(cliques: list[tuple[int, ...]]) -> list[Panel]:
    """Greedily chain cliques into panels at single shared dimensions.

    A clique joins an existing panel when it overlaps the panel's dim set
    in exactly one dim, that dim is not already a junction, and it lives
    in an end segment of the chain (so the panel stays a drawable axis
    sequence). Cliques sharing 2+ dims stay in separate panels, with the
    shared dims duplicated across them.
    """
    panels: list[Panel] = []
    for clique in cliques:
        cs = set(clique)
        placed = False
        for i, p in enumerate(panels):
            overlap = p.dims & cs
            if len(overlap) != 1:
                continue
            (j,) = overlap
            if j in p.junctions:
                continue
            if j in p.segments[-1]:
                panels[i] = Panel(p.segments + (clique,), p.junctions + (j,))
            elif j in p.segments[0]:
                panels[i] = Panel((clique,) + p.segments, (j,) + p.junctions)
            else:
                continue
            placed = True
            break
        if not placed:
            panels.append(Panel((clique,), ()))
    return panels
