"""Context hypergraphs, two-valued states, and noncolorability sweeps.

Vertices are canonical rays and edges are contexts (orthonormal bases). A
two-valued state assigns {0,1} to vertices with exactly one 1 per edge;
their complete absence on a configuration is a Kochen-Specker proof. The
subset sweep walks every nonempty edge sub-collection looking for the ones
that admit no state at all, and for the minimal ("critical") such
collections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterable, Sequence

from .exact import Ray, inner_product, is_product_state

SUBSET_SWEEP_EDGE_CAP = 30


@dataclass(frozen=True)
class TwoValuedState:
    """A {0,1} per-vertex assignment with exactly one 1 on every edge."""

    values: tuple[int, ...]

    def __getitem__(self, vertex: int) -> int:
        return self.values[vertex]

    def ones(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)


@dataclass(frozen=True)
class ContextHypergraph:
    """Deduplicated canonical rays (vertices) plus contexts (edges).

    Every vertex belongs to at least one edge; every edge is a set of
    ``dim`` pairwise-orthogonal vertices, hence an orthonormal basis.
    """

    vertices: tuple[Ray, ...]
    edges: tuple[tuple[int, ...], ...]
    dim: int

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if len(set(e)) != self.dim:
                raise ValueError(f"edge {e} does not have {self.dim} distinct vertices")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            for i, j in itertools.combinations(e, 2):
                if not inner_product(self.vertices[i], self.vertices[j]).is_zero():
                    raise ValueError(
                        f"edge {e}: vertices {i} and {j} are not orthogonal"
                    )
        covered = set(itertools.chain.from_iterable(self.edges))
        if covered != set(range(len(self.vertices))):
            raise ValueError("every vertex must belong to at least one edge")

    @staticmethod
    def from_ray_groups(groups: Sequence[Sequence[Ray]]) -> "ContextHypergraph":
        """Build from explicit contexts; rays deduplicate by canonical form."""
        dims = {r.dim for g in groups for r in g}
        if len(dims) != 1:
            raise ValueError("all rays must share one dimension")
        dim = dims.pop()
        vertices = sorted(set(itertools.chain.from_iterable(groups)))
        index = {r: i for i, r in enumerate(vertices)}
        edges = sorted(set(tuple(sorted(index[r] for r in g)) for g in groups))
        return ContextHypergraph(tuple(vertices), tuple(edges), dim)

    @staticmethod
    def completion_of(rays: Iterable[Ray]) -> "ContextHypergraph":
        """All contexts hiding in a ray set: maximal cliques of orthogonality."""
        vertices = sorted(set(rays))
        dim = vertices[0].dim
        adjacency = orthogonality_graph(vertices)
        edges = enumerate_contexts(adjacency, dim)
        return ContextHypergraph(tuple(vertices), tuple(edges), dim)

    def edge_rays(self, edge_index: int) -> tuple[Ray, ...]:
        return tuple(self.vertices[i] for i in self.edges[edge_index])

    def sub_hypergraph(self, edge_indices: Sequence[int]) -> "ContextHypergraph":
        """Induced sub-collection; vertices outside the chosen edges are dropped."""
        return ContextHypergraph.from_ray_groups(
            [self.edge_rays(i) for i in edge_indices]
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }

    @staticmethod
    def from_json(data: dict) -> "ContextHypergraph":
        return ContextHypergraph(
            tuple(Ray.from_json(v) for v in data["vertices"]),
            tuple(tuple(e) for e in data["edges"]),
            data["dim"],
        )


def orthogonality_graph(rays: Sequence[Ray]) -> list[set[int]]:
    """Adjacency sets over vertex indices; edge iff exact inner product is zero."""
    dims = {r.dim for r in rays}
    if len(dims) > 1:
        raise ValueError("rays of mixed dimension")
    adjacency: list[set[int]] = [set() for _ in rays]
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if inner_product(rays[i], rays[j]).is_zero():
                adjacency[i].add(j)
                adjacency[j].add(i)
    return adjacency


def enumerate_contexts(
    adjacency: Sequence[set[int]], d: int
) -> tuple[tuple[int, ...], ...]:
    """All maximal cliques (pivoting Bron-Kerbosch), asserted to have size d.

    A maximal clique smaller than d means some ray set cannot be completed
    to an orthonormal basis, so the hypergraph would be ill-formed.
    """
    cliques: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            cliques.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(p & adjacency[u]))
        for v in sorted(p - adjacency[pivot]):
            expand(r | {v}, p & adjacency[v], x & adjacency[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(len(adjacency))), set())
    for c in cliques:
        if len(c) != d:
            raise ValueError(
                f"maximal clique {c} has size {len(c)}, expected {d}: "
                "the ray set is not completable to full contexts"
            )
    return tuple(sorted(cliques))


# ---------------------------------------------------------------------------
# Two-valued states. The solver works on vertex bitmasks: assigning 1 to a
# vertex forces 0 on every other vertex of every edge containing it.


def _edge_bitmasks(edges: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sum(1 << v for v in e) for e in edges)


def _has_state(edge_masks: Sequence[int]) -> bool:
    """Existence-only backtracking solve with early exit.

    Picks the first edge with no 1 yet, tries each still-available vertex
    (lowest index first) as its designated 1, and propagates 0 to every
    co-edge vertex.
    """

    def rec(ones: int, zeros: int) -> bool:
        for e in edge_masks:
            if e & ones:
                continue
            cand = e & ~zeros
            while cand:
                v = cand & -cand
                cand ^= v
                nz = zeros
                for e2 in edge_masks:
                    if e2 & v:
                        nz |= e2 & ~v
                if rec(ones | v, nz):
                    return True
            return False
        return True

    return rec(0, 0)


def _all_states(edge_masks: Sequence[int]) -> list[int]:
    """Every admissible ones-bitmask, in deterministic search order."""
    out: list[int] = []

    def rec(ones: int, zeros: int):
        for e in edge_masks:
            if e & ones:
                continue
            cand = e & ~zeros
            while cand:
                v = cand & -cand
                cand ^= v
                nz = zeros
                for e2 in edge_masks:
                    if e2 & v:
                        nz |= e2 & ~v
                rec(ones | v, nz)
            return
        out.append(ones)

    rec(0, 0)
    return out


def two_valued_states(h: ContextHypergraph) -> list[TwoValuedState]:
    """Complete, deterministic enumeration by backtracking over edges."""
    masks = _edge_bitmasks(h.edges)
    n = len(h.vertices)
    states = [
        TwoValuedState(tuple((ones >> i) & 1 for i in range(n)))
        for ones in _all_states(masks)
    ]
    states.sort(key=lambda s: s.values)
    return states


def admits_state(edge_masks: Sequence[int]) -> bool:
    """Existence-only solve (early exit) on raw edge bitmasks."""
    return _has_state(edge_masks)


def is_separating(states: Sequence[TwoValuedState], h: ContextHypergraph) -> bool:
    """True iff every vertex pair is told apart by some state."""
    n = len(h.vertices)
    for u in range(n):
        for v in range(u + 1, n):
            if not any(s.values[u] != s.values[v] for s in states):
                return False
    return True


# ---------------------------------------------------------------------------
# Subset sweep.


@dataclass(frozen=True)
class SubsetSweepResult:
    """Outcome of sweeping every nonempty edge sub-collection.

    ``total`` counts sub-collections (of the induced-vertex convention:
    vertices outside the chosen edges are dropped) admitting no two-valued
    state. ``critical`` lists the minimal ones: removing any single edge
    re-admits a state. Edge indices refer to the parent hypergraph.
    """

    total: int
    critical: tuple[tuple[int, ...], ...]

    def critical_shapes(self, h: ContextHypergraph) -> list[tuple[int, int]]:
        """(edge count, induced vertex count) per critical collection."""
        shapes = []
        for edges in self.critical:
            covered = set(itertools.chain.from_iterable(h.edges[i] for i in edges))
            shapes.append((len(edges), len(covered)))
        return shapes


def _sweep_chunk(args: tuple[tuple[int, ...], int, int]) -> list[int]:
    edge_masks, lo, hi = args
    m = len(edge_masks)
    out = []
    solve = _has_state
    for mask in range(lo, hi):
        sub = tuple(edge_masks[i] for i in range(m) if (mask >> i) & 1)
        if not solve(sub):
            out.append(mask)
    return out


def noncolorable_subsets(
    h: ContextHypergraph, *, jobs: int = 1
) -> SubsetSweepResult:
    """Sweep all nonempty edge sub-collections for no-state configurations.

    Sub-collections are enumerated as ascending bitmasks over the canonical
    edge order; the sweep is partitioned over disjoint mask ranges when
    ``jobs`` > 1 and reduced deterministically.
    """
    m = len(h.edges)
    if m > SUBSET_SWEEP_EDGE_CAP:
        raise ValueError(
            f"{m} edges exceeds the sweep cap of {SUBSET_SWEEP_EDGE_CAP}"
        )
    edge_masks = _edge_bitmasks(h.edges)
    top = 1 << m
    jobs = max(1, int(jobs))
    if jobs == 1:
        no_state = _sweep_chunk((edge_masks, 1, top))
    else:
        chunks = []
        step = max(1, top // (jobs * 16))
        lo = 1
        while lo < top:
            hi = min(top, lo + step)
            chunks.append((edge_masks, lo, hi))
            lo = hi
        no_state = []
        with Pool(jobs) as pool:
            for part in pool.imap(_sweep_chunk, chunks):
                no_state.extend(part)
    no_state_set = set(no_state)
    critical = []
    for mask in no_state:
        rest = mask
        minimal = True
        while rest:
            bit = rest & -rest
            rest ^= bit
            if (mask ^ bit) in no_state_set:
                minimal = False
                break
        if minimal:
            critical.append(tuple(i for i in range(m) if (mask >> i) & 1))
    critical.sort()
    return SubsetSweepResult(len(no_state), tuple(critical))


# ---------------------------------------------------------------------------
# Separability classification.


@dataclass(frozen=True)
class ContextClassification:
    """Vertex and edge partition by exact separability."""

    separable_vertices: tuple[int, ...]
    entangled_vertices: tuple[int, ...]
    separable_edges: tuple[int, ...]
    entangled_edges: tuple[int, ...]
    mixed_edges: tuple[int, ...]
    separable_part: ContextHypergraph | None
    entangled_part: ContextHypergraph | None

    def counts(self) -> dict[str, int]:
        return {
            "separable_vertices": len(self.separable_vertices),
            "entangled_vertices": len(self.entangled_vertices),
            "separable_edges": len(self.separable_edges),
            "entangled_edges": len(self.entangled_edges),
            "mixed_edges": len(self.mixed_edges),
        }


def classify_contexts(
    h: ContextHypergraph, site_dims: Sequence[int]
) -> ContextClassification:
    """Partition vertices and edges by separability across the given sites."""
    separable = [is_product_state(v, site_dims) for v in h.vertices]
    sep_v = tuple(i for i, s in enumerate(separable) if s)
    ent_v = tuple(i for i, s in enumerate(separable) if not s)
    sep_e, ent_e, mix_e = [], [], []
    for k, e in enumerate(h.edges):
        flags = [separable[i] for i in e]
        if all(flags):
            sep_e.append(k)
        elif not any(flags):
            ent_e.append(k)
        else:
            mix_e.append(k)
    sep_part = h.sub_hypergraph(sep_e) if sep_e else None
    ent_part = h.sub_hypergraph(ent_e) if ent_e else None
    return ContextClassification(
        sep_v, ent_v, tuple(sep_e), tuple(ent_e), tuple(mix_e), sep_part, ent_part
    )


# ---------------------------------------------------------------------------
# Graphviz export.

_DOT_PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324",
    "#fffac8", "#800000", "#aaffc3", "#808000", "#ffd8b1", "#000075",
    "#808080", "#ffe119", "#a9a9a9", "#000000", "#2f4f4f", "#8b4513",
)


def to_dot(h: ContextHypergraph, title: str = "contexts") -> str:
    """Render contexts as colored vertex chains, one color per context."""
    lines = [f'graph "{title}" {{', "  node [shape=circle fontsize=10];"]
    for i, v in enumerate(h.vertices):
        label = ",".join(str(c) for c in v.to_json())
        lines.append(f'  v{i} [label="({label})"];')
    for k, e in enumerate(h.edges):
        color = _DOT_PALETTE[k % len(_DOT_PALETTE)]
        chain = list(e)
        for a, b in zip(chain, chain[1:]):
            lines.append(f'  v{a} -- v{b} [color="{color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
