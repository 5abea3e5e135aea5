"""Decorated half-graphs for torus-fixed loci of real genus-one stable maps.

A fixed locus of the torus action on real genus-one stable maps to
P^{2m-1} doubles a *half-graph*: a tree whose vertices carry fixed-point
labels in 1..2m and whose edges carry covering degrees, completed to a
genus-one graph by the reflection that conjugates labels.  Two kinds
occur:

* separable -- the involution fixes two central components; the half
  keeps one half-edge for each of them (attachment vertex + degree
  d01, d02).  Doubling joins each half-edge to its mirror image.

* non-separable -- the involution is free on the central loop; the half
  is cut at a conjugate pair of nodes p0 and pbar0.  Here the half is a
  tree containing a spine path from the p0 vertex to a bare pbar0 leaf
  whose label is conjugate to p0's; side trees may hang on any spine
  vertex except the pbar0 end (a tree at the p0 vertex corresponds to a
  contracted component at that node of the loop).

The *shape* of a half-graph forgets the labels, and for non-separable
graphs also the choice of cut pair, keeping only the underlying
degree-decorated tree (plus half-edge degrees).  This matches the
granularity at which small-degree catalogues of these graphs are drawn:
degree 2 has two shapes and degree 4 has five.

Vertices are numbered 0..n-1; all emitted graphs are in a canonical
numbering, so equal graphs compare equal structurally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .ratfunc import RationalFunction, SparsePoly

Edge = Tuple[int, int, int]  # (u, v, degree) with u < v
Stub = Tuple[int, int]  # (attachment vertex, half-edge degree)


@dataclass(frozen=True)
class SpaceSpec:
    """The target P^{2m-1} with its 2m torus-fixed points.

    Fixed points are labeled 1..2m; conjugation exchanges 2k-1 <-> 2k.
    The weight of label 2k-1 is the k-th independent variable and the
    weight of label 2k is its negative.
    """

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")

    @property
    def labels(self) -> range:
        return range(1, 2 * self.m + 1)

    def bar(self, i: int) -> int:
        if not 1 <= i <= 2 * self.m:
            raise ValueError("label %d out of range for m=%d" % (i, self.m))
        return i + 1 if i % 2 == 1 else i - 1

    def weight(self, i: int) -> RationalFunction:
        """The equivariant weight lambda_i as a rational function."""
        if not 1 <= i <= 2 * self.m:
            raise ValueError("label %d out of range for m=%d" % (i, self.m))
        var = RationalFunction.variable(self.m, (i - 1) // 2)
        return var if i % 2 == 1 else -var

    def weight_value(self, i: int, point: Sequence[Fraction]) -> Fraction:
        """Numeric value of lambda_i at an assignment of the independent weights."""
        v = Fraction(point[(i - 1) // 2])
        return v if i % 2 == 1 else -v


def conjugate_label(space: SpaceSpec, i: int) -> int:
    return space.bar(i)


@dataclass(frozen=True)
class HalfGraph:
    """One half of a reflection-symmetric genus-one fixed-locus graph."""

    kind: str  # "separable" | "non-separable"
    labels: Tuple[int, ...]  # vertex id -> fixed-point label
    edges: Tuple[Edge, ...]
    stubs: Tuple[Stub, ...] = ()  # separable only: the two central half-edges
    p0: int = -1  # non-separable only: spine start vertex
    pbar: int = -1  # non-separable only: bare conjugate-node leaf

    def __post_init__(self) -> None:
        if self.kind not in ("separable", "non-separable"):
            raise ValueError("unknown kind %r" % (self.kind,))

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def incident_edges(self, v: int) -> List[Edge]:
        return [e for e in self.edges if v in (e[0], e[1])]

    def graph_valence(self, v: int) -> int:
        return len(self.incident_edges(v))


def degree_of(g: HalfGraph) -> int:
    """Total map degree of the doubled graph."""
    tree = 2 * sum(d for _, _, d in g.edges)
    if g.kind == "separable":
        return tree + sum(d0 for _, d0 in g.stubs)
    return tree


def validate_half_graph(space: SpaceSpec, g: HalfGraph) -> None:
    """Assert the structural invariants of a half-graph."""
    n = g.n_vertices
    for lab in g.labels:
        if not 1 <= lab <= 2 * space.m:
            raise ValueError("vertex label %d out of range" % lab)
    seen = set()
    adjacency: Dict[int, List[int]] = {v: [] for v in range(n)}
    for u, v, d in g.edges:
        if not (0 <= u < v < n):
            raise ValueError("bad edge endpoints (%d, %d)" % (u, v))
        if d < 1:
            raise ValueError("edge degree must be >= 1")
        if g.labels[u] == g.labels[v]:
            raise ValueError("adjacent vertices share label %d" % g.labels[u])
        if (u, v) in seen:
            raise ValueError("parallel edges are not allowed in a half-graph")
        seen.add((u, v))
        adjacency[u].append(v)
        adjacency[v].append(u)
    # connected tree on n vertices
    if len(g.edges) != n - 1:
        raise ValueError("edge graph is not a tree")
    if n > 1:
        stack, reached = [0], {0}
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        if len(reached) != n:
            raise ValueError("edge graph is disconnected")
    if g.kind == "separable":
        if len(g.stubs) != 2 or g.p0 != -1 or g.pbar != -1:
            raise ValueError("separable graph needs exactly two half-edges")
        for a, d0 in g.stubs:
            if not 0 <= a < n or d0 < 1:
                raise ValueError("bad half-edge")
    else:
        if g.stubs or not (0 <= g.p0 < n and 0 <= g.pbar < n) or g.p0 == g.pbar:
            raise ValueError("non-separable graph needs distinct p0 and pbar0 vertices")
        if g.labels[g.pbar] != space.bar(g.labels[g.p0]):
            raise ValueError("pbar0 label must be conjugate to p0 label")
        if g.graph_valence(g.pbar) != 1:
            raise ValueError("the pbar0 end must be a bare leaf")


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


def _half_key_under(g: HalfGraph, perm: Sequence[int]) -> tuple:
    labels = [0] * g.n_vertices
    for v, lab in enumerate(g.labels):
        labels[perm[v]] = lab
    edges = sorted(
        (min(perm[u], perm[v]), max(perm[u], perm[v]), d) for u, v, d in g.edges
    )
    stubs = sorted((perm[a], d0) for a, d0 in g.stubs)
    p0 = perm[g.p0] if g.p0 >= 0 else -1
    pbar = perm[g.pbar] if g.pbar >= 0 else -1
    return (g.kind, tuple(labels), tuple(edges), tuple(stubs), p0, pbar)


def canonical_key(g: HalfGraph) -> tuple:
    """Serialization minimal over all renumberings of the vertices."""
    return min(_half_key_under(g, perm) for perm in permutations(range(g.n_vertices)))


def canonicalize(g: HalfGraph) -> HalfGraph:
    """The representative with the minimal serialization."""
    best = min(permutations(range(g.n_vertices)), key=lambda p: _half_key_under(g, p))
    kind, labels, edges, stubs, p0, pbar = _half_key_under(g, best)
    return HalfGraph(kind=kind, labels=labels, edges=edges, stubs=stubs, p0=p0, pbar=pbar)


def shape_key(g: HalfGraph) -> tuple:
    """The underlying shape: forget labels, and the p0/pbar0 choice.

    What remains is the degree-decorated tree together with the
    half-edge degrees (separable) -- the granularity of a drawn
    catalogue of fixed-locus graphs, where marked points and the choice
    of cut nodes are left implicit.
    """
    n = g.n_vertices
    best = None
    for perm in permutations(range(n)):
        edges = tuple(
            sorted((min(perm[u], perm[v]), max(perm[u], perm[v]), d) for u, v, d in g.edges)
        )
        stubs = tuple(sorted((perm[a], d0) for a, d0 in g.stubs))
        key = (g.kind, edges, stubs)
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def conjugate_half(space: SpaceSpec, g: HalfGraph) -> HalfGraph:
    """Replace every label by its conjugate."""
    return canonicalize(
        HalfGraph(
            kind=g.kind,
            labels=tuple(space.bar(l) for l in g.labels),
            edges=g.edges,
            stubs=g.stubs,
            p0=g.p0,
            pbar=g.pbar,
        )
    )


def graph_id(g: HalfGraph) -> str:
    """Compact deterministic identifier used in ledgers and reports."""
    parts = ["sep" if g.kind == "separable" else "nonsep"]
    parts.append("v=" + ",".join(str(l) for l in g.labels))
    if g.edges:
        parts.append("e=" + ",".join("%d-%d:%d" % e for e in g.edges))
    if g.kind == "separable":
        parts.append("h=" + ",".join("%d:%d" % s for s in g.stubs))
    else:
        parts.append("p0=%d" % g.p0)
        parts.append("pb=%d" % g.pbar)
    return "|".join(parts)


# ---------------------------------------------------------------------------
# the doubled (full) graph: automorphisms and locus identity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FullGraph:
    """The doubled genus-one graph with its label-conjugating reflection."""

    labels: Tuple[int, ...]
    edges: Tuple[Tuple[int, int, int, bool], ...]  # (u, v, degree, central)
    sigma: Tuple[int, ...]  # vertex involution
    sigma_edges: Tuple[int, ...]  # induced edge involution


def build_full_graph(space: SpaceSpec, g: HalfGraph) -> FullGraph:
    n = g.n_vertices
    if g.kind == "separable":
        labels = tuple(g.labels) + tuple(space.bar(l) for l in g.labels)
        edges: List[Tuple[int, int, int, bool]] = []
        sig_e: Dict[int, int] = {}
        for u, v, d in g.edges:
            edges.append((u, v, d, False))
            edges.append((u + n, v + n, d, False))
            sig_e[len(edges) - 2] = len(edges) - 1
            sig_e[len(edges) - 1] = len(edges) - 2
        for a, d0 in g.stubs:
            edges.append((min(a, a + n), max(a, a + n), d0, True))
            sig_e[len(edges) - 1] = len(edges) - 1
        sigma = tuple((v + n) % (2 * n) for v in range(2 * n))
        return FullGraph(labels, tuple(edges), sigma, tuple(sig_e[i] for i in range(len(edges))))

    # non-separable: the pbar0 leaf is identified with the mirror of p0
    real = [v for v in range(n) if v != g.pbar]
    index = {v: i for i, v in enumerate(real)}
    k = len(real)

    def fwd(v: int) -> int:
        return index[v] if v != g.pbar else index[g.p0] + k

    def mirror_of(v: int) -> int:
        return index[v] + k if v != g.pbar else index[g.p0]

    labels = tuple(g.labels[v] for v in real) + tuple(space.bar(g.labels[v]) for v in real)
    edges = []
    sig_e = {}
    for u, v, d in g.edges:
        a, b = fwd(u), fwd(v)
        edges.append((min(a, b), max(a, b), d, False))
        a2, b2 = mirror_of(u), mirror_of(v)
        edges.append((min(a2, b2), max(a2, b2), d, False))
        sig_e[len(edges) - 2] = len(edges) - 1
        sig_e[len(edges) - 1] = len(edges) - 2
    sigma = tuple((v + k) % (2 * k) for v in range(2 * k))
    return FullGraph(labels, tuple(edges), sigma, tuple(sig_e[i] for i in range(len(edges))))


def _label_preserving_perms(full: FullGraph) -> Iterator[Tuple[int, ...]]:
    """All vertex permutations fixing the label decoration."""
    groups: Dict[int, List[int]] = {}
    for v, lab in enumerate(full.labels):
        groups.setdefault(lab, []).append(v)
    group_lists = list(groups.values())
    for choice in product(*(permutations(g) for g in group_lists)):
        perm = [0] * len(full.labels)
        for orig, image in zip(group_lists, choice):
            for a, b in zip(orig, image):
                perm[a] = b
        yield tuple(perm)


def _edge_class(full: FullGraph, idx: int) -> Tuple[FrozenSet[int], int, bool]:
    u, v, d, c = full.edges[idx]
    return (frozenset((u, v)), d, c)


def _label_sorting_perms(full: FullGraph) -> Iterator[Tuple[int, ...]]:
    """Vertex renumberings whose image label vector is sorted."""
    order = sorted(range(len(full.labels)), key=lambda v: full.labels[v])
    blocks: Dict[int, List[int]] = {}
    for pos, v in enumerate(order):
        blocks.setdefault(full.labels[v], []).append(pos)
    groups: Dict[int, List[int]] = {}
    for v, lab in enumerate(full.labels):
        groups.setdefault(lab, []).append(v)
    keys = sorted(groups)
    for choice in product(*(permutations(blocks[k]) for k in keys)):
        perm = [0] * len(full.labels)
        for k, positions in zip(keys, choice):
            for v, pos in zip(groups[k], positions):
                perm[v] = pos
        yield tuple(perm)


def full_canonical_key(full: FullGraph) -> tuple:
    """Identity of the fixed locus: minimal serialization over relabelings
    that sort the label decoration, with the reflection recorded."""
    labels = tuple(sorted(full.labels))
    best = None
    for perm in _label_sorting_perms(full):
        edges = tuple(
            sorted(
                (min(perm[u], perm[v]), max(perm[u], perm[v]), d, c)
                for u, v, d, c in full.edges
            )
        )
        inv = _inverse_perm(perm)
        sigma = tuple(perm[full.sigma[w]] for w in inv)
        key = (edges, sigma)
        if best is None or key < best:
            best = key
    assert best is not None
    return (labels,) + best


def _inverse_perm(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def automorphism_order(space: SpaceSpec, g: HalfGraph) -> int:
    """Order of the decoration-preserving automorphism group of the full
    graph commuting with the reflection (acting on vertices and edges)."""
    full = build_full_graph(space, g)
    n_edges = len(full.edges)
    classes: Dict[Tuple[FrozenSet[int], int, bool], List[int]] = {}
    for i in range(n_edges):
        classes.setdefault(_edge_class(full, i), []).append(i)

    count = 0
    for perm in _label_preserving_perms(full):
        # must commute with the reflection on vertices
        if any(perm[full.sigma[v]] != full.sigma[perm[v]] for v in range(len(perm))):
            continue
        # parallel classes must map onto parallel classes of equal size
        image_ok = True
        class_pairs = []
        for key, members in classes.items():
            endpoints, d, c = key
            mapped = (frozenset(perm[v] for v in endpoints), d, c)
            target = classes.get(mapped)
            if target is None or len(target) != len(members):
                image_ok = False
                break
            class_pairs.append((members, target))
        if not image_ok:
            continue
        # count compatible edge bijections commuting with the edge reflection
        options = [list(permutations(target)) for _, target in class_pairs]
        for assignment in product(*options):
            rho = [0] * n_edges
            for (members, _), images in zip(class_pairs, assignment):
                for e, im in zip(members, images):
                    rho[e] = im
            if all(rho[full.sigma_edges[e]] == full.sigma_edges[rho[e]] for e in range(n_edges)):
                count += 1
    return count


def divisor_of(g: HalfGraph) -> int:
    """The integer divisor attached to a half-graph's locus.

    Separable: d01 * d02 * prod of tree-edge degrees.  Non-separable:
    the product of the degrees of all edges of the doubled graph, i.e.
    the square of the half's edge-degree product (this makes the value
    independent of which half was chosen).
    """
    prod = 1
    for _, _, d in g.edges:
        prod *= d
    if g.kind == "separable":
        for _, d0 in g.stubs:
            prod *= d0
        return prod
    return prod * prod


def classify_types(g: HalfGraph, phi: str) -> List[Tuple[str, int]]:
    """Involution-type multiplicities (c_a / c_m / c_k) with their signs.

    The signed multiplicities already carry the alternating signs of the
    fixed-locus sum and the doubling for loci with an extra Z_2 symmetry,
    so the invariant is the plain sum over all (type, mult) pairs.
    """
    if phi not in ("tau", "eta"):
        raise ValueError("phi must be 'tau' or 'eta'")
    if phi == "eta":
        return [("c_k", 1)]
    if g.kind == "non-separable":
        return [("c_k", 1)]
    (_, d01), (_, d02) = g.stubs
    odd1, odd2 = d01 % 2 == 1, d02 % 2 == 1
    if odd1 and odd2:
        return [("c_a", 1)]
    if not odd1 and not odd2:
        return [("c_a", 1), ("c_m", -2), ("c_k", 1)]
    return [("c_a", 1), ("c_m", -1)]


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ways to write total as an ordered sum of `parts` positive integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _grow_trees(
    space: SpaceSpec,
    labels: Tuple[int, ...],
    edges: Tuple[Edge, ...],
    attach_allowed: Sequence[int],
    initial_n: int,
    budget: int,
    out: List[Tuple[Tuple[int, ...], Tuple[Edge, ...]]],
) -> None:
    """Attach side trees of total degree exactly `budget`.

    New edges may attach to any vertex in `attach_allowed` or to any
    vertex grown after the initial `initial_n`, with any degree and any
    new-leaf label distinct from the attachment label.  Duplicates are
    resolved later by canonical form.
    """
    if budget == 0:
        out.append((labels, edges))
        return
    n = len(labels)
    allowed = list(attach_allowed) + list(range(initial_n, n))
    for at in allowed:
        for d in range(1, budget + 1):
            for lab in space.labels:
                if lab == labels[at]:
                    continue
                _grow_trees(
                    space,
                    labels + (lab,),
                    edges + ((min(at, n), max(at, n), d),),
                    attach_allowed,
                    initial_n,
                    budget - d,
                    out,
                )


def _all_trees(space: SpaceSpec, total_degree: int) -> List[Tuple[Tuple[int, ...], Tuple[Edge, ...]]]:
    """All labeled degree-decorated trees with edge degrees summing as given."""
    results: List[Tuple[Tuple[int, ...], Tuple[Edge, ...]]] = []
    for seed in space.labels:
        _grow_trees(space, (seed,), (), [0], 1, total_degree, results)
    return results


def enumerate_half_graphs(space: SpaceSpec, d: int, phi: str) -> List[HalfGraph]:
    """Exhaustive, isomorphism-free list of half-graphs of total degree d.

    All vertex labelings are included; the list is ordered by canonical
    serialization.  For phi = eta, separable graphs require both central
    degrees odd (the antipodal involution on a fixed central sphere
    exists only in odd degree); for phi = tau all parities are kept and
    the type classification handles the bookkeeping.
    """
    if phi not in ("tau", "eta"):
        raise ValueError("phi must be 'tau' or 'eta'")
    if d < 1:
        raise ValueError("degree must be positive")
    found: Dict[tuple, HalfGraph] = {}

    # separable: two central half-edges on a labeled tree
    max_tree = (d - 2) // 2
    for tree_deg in range(0, max_tree + 1):
        stub_sum = d - 2 * tree_deg
        if stub_sum < 2:
            continue
        for d01 in range(1, stub_sum // 2 + 1):
            d02 = stub_sum - d01
            if phi == "eta" and (d01 % 2 == 0 or d02 % 2 == 0):
                continue
            for labels, edges in _all_trees(space, tree_deg):
                n = len(labels)
                for a1 in range(n):
                    for a2 in range(n):
                        g = HalfGraph(
                            kind="separable",
                            labels=labels,
                            edges=tuple(sorted(edges)),
                            stubs=tuple(sorted(((a1, d01), (a2, d02)))),
                        )
                        key = canonical_key(g)
                        if key not in found:
                            validate_half_graph(space, g)
                            found[key] = canonicalize(g)

    # non-separable: spine from the p0 vertex to a bare conjugate leaf
    if d % 2 == 0:
        half_deg = d // 2
        for spine_edges in range(1, half_deg + 1):
            for spine_degs in _compositions_up_to(half_deg, spine_edges):
                tree_budget = half_deg - sum(spine_degs)
                for spine_labels in _spine_labelings(space, spine_edges):
                    base_labels = spine_labels
                    base_edges = tuple(
                        (i, i + 1, spine_degs[i]) for i in range(spine_edges)
                    )
                    grown: List[Tuple[Tuple[int, ...], Tuple[Edge, ...]]] = []
                    _grow_trees(
                        space,
                        base_labels,
                        base_edges,
                        list(range(spine_edges)),  # all spine vertices except pbar0
                        spine_edges + 1,
                        tree_budget,
                        grown,
                    )
                    for labels, edges in grown:
                        g = HalfGraph(
                            kind="non-separable",
                            labels=labels,
                            edges=tuple(sorted(edges)),
                            p0=0,
                            pbar=spine_edges,
                        )
                        key = canonical_key(g)
                        if key not in found:
                            validate_half_graph(space, g)
                            found[key] = canonicalize(g)

    return [found[k] for k in sorted(found)]


def _compositions_up_to(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered compositions with the given number of parts and sum <= total."""
    for s in range(parts, total + 1):
        yield from _compositions(s, parts)


def _spine_labelings(space: SpaceSpec, spine_edges: int) -> Iterator[Tuple[int, ...]]:
    """Labels along the spine path u_0 ... u_{k-1}, pbar0 (length k+1)."""

    def extend(seq: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(seq) == spine_edges:
            last = space.bar(seq[0])
            if last != seq[-1]:
                yield seq + (last,)
            return
        for lab in space.labels:
            if lab != seq[-1]:
                yield from extend(seq + (lab,))

    for first in space.labels:
        yield from extend((first,))


def shape_count(space: SpaceSpec, d: int, phi: str) -> int:
    """Number of distinct shapes among the degree-d half-graphs."""
    return len({shape_key(g) for g in enumerate_half_graphs(space, d, phi)})


def class_groups(space: SpaceSpec, halves: Sequence[HalfGraph]) -> Dict[tuple, List[HalfGraph]]:
    """Group half-graphs by the fixed locus they index (the doubled graph)."""
    groups: Dict[tuple, List[HalfGraph]] = {}
    for g in halves:
        groups.setdefault(full_canonical_key(build_full_graph(space, g)), []).append(g)
    return groups


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def to_json_dict(g: HalfGraph) -> dict:
    data = {
        "id": graph_id(g),
        "kind": g.kind,
        "vertices": list(g.labels),
        "edges": [[u, v, d] for u, v, d in g.edges],
    }
    if g.kind == "separable":
        data["half_edges"] = [[a, d0] for a, d0 in g.stubs]
    else:
        data["p0"] = g.p0
        data["pbar0"] = g.pbar
    return data


def to_dot(g: HalfGraph) -> str:
    """GraphViz rendering of one half-graph."""
    lines = ["graph half {"]
    for v, lab in enumerate(g.labels):
        extra = ""
        if g.kind == "non-separable" and v == g.p0:
            extra = " (p0)"
        if g.kind == "non-separable" and v == g.pbar:
            extra = " (pbar0)"
        lines.append('  v%d [label="p%d%s"];' % (v, lab, extra))
    for u, v, d in g.edges:
        lines.append('  v%d -- v%d [label="%d"];' % (u, v, d))
    for i, (a, d0) in enumerate(g.stubs):
        lines.append('  h%d [shape=point];' % i)
        lines.append('  v%d -- h%d [label="%d", style=dashed];' % (a, i, d0))
    lines.append("}")
    return "\n".join(lines)


def export_dot(halves: Sequence[HalfGraph]) -> str:
    return "\n".join(to_dot(g) for g in halves)
