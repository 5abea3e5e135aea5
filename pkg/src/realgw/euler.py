"""Local factors of the fixed-point contributions.

Each fixed locus contributes the inverse of an equivariant Euler class,
assembled from local data of the half-graph:

* an *edge factor* for every edge (the Euler class of the deformations
  of a degree-d cover of the sphere joining two fixed points, doubled),
* a *half-edge factor* for each of the two central half-edges of a
  separable graph (the real locus of the central sphere halves the
  corresponding weights),
* a *vertex factor* for every vertex, depending on its valence: a point
  factor from the tangent space of the fixed point, and a moduli factor
  that is a flag weight (valence 1), a node-smoothing weight (valence
  2), or a psi-class integral over the moduli of genus-zero curves
  (valence >= 3),
* a *flag factor* for every flag (edge end), the product of tangent
  weights at its fixed point.

For non-separable graphs the half is cut at the conjugate node pair
(p0, pbar0); the vertex carrying p0 sees one extra *phantom* flag, the
mirror image of the last spine edge, whose weight enters the valence
bookkeeping but which carries no flag factor of its own.  The bare
pbar0 leaf contributes its flag factor but no vertex factor.  A global
sign (-1)^(d/2) accounts for the orientation of the doubled loop.

The marked-point insertion is a power of the sum of lambda^t / (flag
weight) over all flags of the bare half-graph (half-edge flags
included, the phantom flag not).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from .graphs import HalfGraph, SpaceSpec, degree_of
from .psi import vertex_factor
from .ratfunc import RationalFunction


def edge_factor(space: SpaceSpec, j1: int, j2: int, d: int) -> RationalFunction:
    """Deformation Euler class of a degree-d edge between fixed points
    j1 and j2, together with its conjugate copy."""
    if j1 == j2:
        raise ValueError("edge endpoints must carry distinct fixed points")
    if d < 1:
        raise ValueError("edge degree must be positive")
    l1, l2 = space.weight(j1), space.weight(j2)
    diff = l1 - l2
    scale = Fraction((-1) ** d) * Fraction(factorial(d) ** 2, d ** (2 * d))
    result = RationalFunction.const(space.m, scale) * diff ** (2 * d)
    for r in range(d + 1):
        interp = (l1 * RationalFunction.const(space.m, Fraction(r, d))
                  + l2 * RationalFunction.const(space.m, Fraction(d - r, d)))
        for k in space.labels:
            if k in (j1, j2):
                continue
            result = result * (interp - space.weight(k))
    return result


def halfedge_factor(space: SpaceSpec, i: int, d0: int) -> RationalFunction:
    """Contribution of a central half-edge of degree d0 at fixed point i.

    Only one weight from each conjugate pair of deformations survives on
    the real locus, leaving the product over the fixed points of the
    same parity as i.
    """
    if d0 < 1:
        raise ValueError("half-edge degree must be positive")
    li = space.weight(i)
    result = RationalFunction.const(
        space.m, Fraction(1, factorial(d0))
    ) * (RationalFunction.const(space.m, Fraction(d0, 2)) / li) ** d0
    for j in space.labels:
        if j == i or j % 2 != i % 2:
            continue
        lj = space.weight(j)
        for r in range(d0 + 1):
            term = li * RationalFunction.const(space.m, Fraction(d0 - 2 * r, d0)) - lj
            result = result / term
    return result


def point_factor(space: SpaceSpec, j: int) -> RationalFunction:
    """Inverse Euler class of the tangent space at fixed point j."""
    return flag_factor(space, j).inverse()


def flag_factor(space: SpaceSpec, j: int) -> RationalFunction:
    """Product of the tangent weights at fixed point j."""
    result = RationalFunction.const(space.m, 1)
    lj = space.weight(j)
    for k in space.labels:
        if k != j:
            result = result * (lj - space.weight(k))
    return result


def _edge_flag_weight(space: SpaceSpec, g: HalfGraph, v: int, edge: Tuple[int, int, int]) -> RationalFunction:
    u, w, d = edge
    other = w if v == u else u
    diff = space.weight(g.labels[v]) - space.weight(g.labels[other])
    return diff / RationalFunction.const(space.m, d)


def _stub_weight(space: SpaceSpec, g: HalfGraph, v: int, d0: int) -> RationalFunction:
    lv = space.weight(g.labels[v])
    return (lv + lv) / RationalFunction.const(space.m, d0)


def _phantom_weight(space: SpaceSpec, g: HalfGraph) -> RationalFunction:
    """Weight at the p0 vertex of the mirror of the last spine edge.

    The doubled graph closes the loop by joining the mirror of pbar0's
    edge back to the p0 vertex; its weight there is
    (lambda_{j(p0)} - lambda_{conj j(u)}) / d where u is pbar0's
    neighbour and d the degree of their edge.
    """
    (edge,) = g.incident_edges(g.pbar)
    u = edge[1] if edge[0] == g.pbar else edge[0]
    d = edge[2]
    diff = space.weight(g.labels[g.p0]) - space.weight(space.bar(g.labels[u]))
    return diff / RationalFunction.const(space.m, d)


def _valence_slot(space: SpaceSpec, weights: Sequence[RationalFunction]) -> RationalFunction:
    if not weights:
        raise ValueError("isolated vertex has no flags")
    if len(weights) == 1:
        return weights[0]
    if len(weights) == 2:
        return (weights[0] + weights[1]).inverse()
    return vertex_factor(weights)


def insertion_flags(space: SpaceSpec, g: HalfGraph) -> List[Tuple[int, RationalFunction]]:
    """(fixed point, weight) for every flag of the bare half-graph."""
    out: List[Tuple[int, RationalFunction]] = []
    for edge in g.edges:
        for v in (edge[0], edge[1]):
            out.append((g.labels[v], _edge_flag_weight(space, g, v, edge)))
    for a, d0 in g.stubs:
        out.append((g.labels[a], _stub_weight(space, g, a, d0)))
    return out


def insertion_factor(space: SpaceSpec, g: HalfGraph, t: int, ell: int) -> RationalFunction:
    """The marked-point insertion: (sum over flags of lambda^t / weight)^ell."""
    total = RationalFunction.const(space.m, 0)
    for label, weight in insertion_flags(space, g):
        total = total + space.weight(label) ** t / weight
    return total ** ell


def graph_euler_inverse(
    space: SpaceSpec, g: HalfGraph, flip_nonsep_sign: bool = False
) -> RationalFunction:
    """Inverse equivariant Euler class of the fixed locus of a half-graph.

    `flip_nonsep_sign` negates the global sign of non-separable loci;
    it exists so the necessity of that sign can be tested.
    """
    result = RationalFunction.const(space.m, 1)

    if g.kind == "separable":
        for v in range(g.n_vertices):
            weights = [_edge_flag_weight(space, g, v, e) for e in g.incident_edges(v)]
            weights += [_stub_weight(space, g, v, d0) for a, d0 in g.stubs if a == v]
            result = result * point_factor(space, g.labels[v])
            result = result * _valence_slot(space, weights)
        for u, v, d in g.edges:
            result = result * flag_factor(space, g.labels[u])
            result = result * flag_factor(space, g.labels[v])
            result = result / edge_factor(space, g.labels[u], g.labels[v], d)
        for a, d0 in g.stubs:
            result = result * flag_factor(space, g.labels[a])
            result = result * halfedge_factor(space, g.labels[a], d0)
        return result

    # non-separable
    d = degree_of(g)
    sign = (-1) ** (d // 2)
    if flip_nonsep_sign:
        sign = -sign
    for v in range(g.n_vertices):
        if v == g.pbar:
            continue
        weights = [_edge_flag_weight(space, g, v, e) for e in g.incident_edges(v)]
        if v == g.p0:
            weights.append(_phantom_weight(space, g))
        result = result * point_factor(space, g.labels[v])
        result = result * _valence_slot(space, weights)
    for u, v, dd in g.edges:
        result = result * flag_factor(space, g.labels[u])
        result = result * flag_factor(space, g.labels[v])
        result = result / edge_factor(space, g.labels[u], g.labels[v], dd)
    return result * RationalFunction.const(space.m, sign)
