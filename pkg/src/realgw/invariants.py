"""Signed fixed-locus sums: the genus-one real invariants.

The invariant of degree d with insertion exponent t at ell conjugate
pairs of marked points is assembled as

    N = sum over fixed loci of
        sum over involution types (type, mult) of
            mult * 2^ell * value / (divisor * Aut)

where value = insertion_factor * graph_euler_inverse is computed on any
half-graph of the locus (all halves give the same value), divisor and
Aut are the integer normalizations of the locus, and the factor 2^ell
counts the two real points of each conjugate marked-point pair.  The
sum is a priori a rational function of the torus weights; the invariant
is its constant value, and non-constancy is an error that surfaces the
residual.

The ledger lists one row per labeled half-graph; a row's value is the
locus share divided equally among its halves, so that row values sum to
the (type-weighted) total.

A second, independent evaluation path substitutes rational weights
first and redoes every step in plain ``Fraction`` arithmetic; agreement
with the exact path at random weights is the main internal cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .euler import graph_euler_inverse, insertion_factor
from .graphs import (
    HalfGraph,
    SpaceSpec,
    automorphism_order,
    class_groups,
    classify_types,
    degree_of,
    divisor_of,
    enumerate_half_graphs,
    graph_id,
)
from .psi import exponent_vectors, psi_integral
from .ratfunc import RationalFunction, rf_eval, rf_is_constant, rf_to_string

TYPE_NAMES = ("c_a", "c_m", "c_k")


class DimensionConstraintError(ValueError):
    """The marked-point count does not match the virtual dimension."""


class WeightDependenceError(ArithmeticError):
    """The signed sum failed to be constant; carries the residual."""

    def __init__(self, message: str, residual: RationalFunction):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class GraphContribution:
    """Ledger row for one labeled half-graph."""

    graph: HalfGraph
    id: str
    kind: str
    divisor: int
    aut: int
    n_halves: int
    types: Tuple[Tuple[str, int], ...]
    euler_inverse: RationalFunction
    insertion: RationalFunction
    value: RationalFunction  # 2^ell * insertion * euler / (divisor * aut * n_halves)

    @property
    def net_multiplier(self) -> int:
        return sum(mult for _, mult in self.types)


@dataclass
class InvariantResult:
    space: SpaceSpec
    phi: str
    degree: int
    t: int
    ell: int
    total_function: RationalFunction
    total: Optional[Fraction]
    weight_independent: bool
    vanishing: Optional[str]
    per_type: Dict[str, RationalFunction]
    per_kind: Dict[str, RationalFunction]
    per_graph: List[GraphContribution]


def _resolve_ell(space: SpaceSpec, degree: int, t: int) -> int:
    rhs = space.m * degree
    if t < 1:
        raise DimensionConstraintError("insertion exponent must be positive, got %d" % t)
    if t == 1 or rhs % (t - 1) != 0:
        raise DimensionConstraintError(
            "no marked-point count ell satisfies ell*(t-1) = m*d: "
            "t-1 = %d does not divide m*d = %d" % (t - 1, rhs)
        )
    return rhs // (t - 1)


def _zero_result(
    space: SpaceSpec, phi: str, degree: int, t: int, ell: int, reason: str
) -> InvariantResult:
    zero = RationalFunction.const(space.m, 0)
    return InvariantResult(
        space=space,
        phi=phi,
        degree=degree,
        t=t,
        ell=ell,
        total_function=zero,
        total=Fraction(0),
        weight_independent=True,
        vanishing=reason,
        per_type={name: zero for name in TYPE_NAMES},
        per_kind={"separable": zero, "non-separable": zero},
        per_graph=[],
    )


def compute_invariant(
    space: SpaceSpec,
    degree: int,
    phi: str = "tau",
    t: Optional[int] = None,
    flip_nonsep_sign: bool = False,
    strict: bool = True,
) -> InvariantResult:
    """The degree-d genus-one real invariant with t-power insertions.

    `strict` raises WeightDependenceError when the signed sum is not
    constant; with strict=False the (possibly weight-dependent) result
    is returned for inspection.
    """
    if phi not in ("tau", "eta"):
        raise ValueError("phi must be 'tau' or 'eta'")
    if degree < 1:
        raise ValueError("degree must be positive")
    if t is None:
        t = 2 * space.m - 1
    ell = _resolve_ell(space, degree, t)

    if t % 2 == 0:
        return _zero_result(space, phi, degree, t, ell, "t even")
    if phi == "eta" and degree % 2 == 1:
        return _zero_result(space, phi, degree, t, ell, "d odd")

    zero = RationalFunction.const(space.m, 0)
    per_type: Dict[str, RationalFunction] = {name: zero for name in TYPE_NAMES}
    per_kind: Dict[str, RationalFunction] = {"separable": zero, "non-separable": zero}
    total = zero
    rows: List[GraphContribution] = []

    halves = enumerate_half_graphs(space, degree, phi)
    groups = class_groups(space, halves)
    for key in sorted(groups):
        members = groups[key]
        rep = members[0]
        divisor = divisor_of(rep)
        aut = automorphism_order(space, rep)
        types = tuple(classify_types(rep, phi))
        n_halves = len(members)
        scale = RationalFunction.const(
            space.m, Fraction(2**ell, divisor * aut * n_halves)
        )
        class_value = None
        for g in members:
            euler = graph_euler_inverse(space, g, flip_nonsep_sign=flip_nonsep_sign)
            insertion = insertion_factor(space, g, t, ell)
            value = scale * insertion * euler
            if class_value is None:
                class_value = value
            elif not (class_value - value).is_zero():
                raise AssertionError(
                    "halves of one locus disagree: %s vs %s"
                    % (graph_id(members[0]), graph_id(g))
                )
            rows.append(
                GraphContribution(
                    graph=g,
                    id=graph_id(g),
                    kind=g.kind,
                    divisor=divisor,
                    aut=aut,
                    n_halves=n_halves,
                    types=types,
                    euler_inverse=euler,
                    insertion=insertion,
                    value=value,
                )
            )
            net = sum(mult for _, mult in types)
            if net:
                per_kind[g.kind] = per_kind[g.kind] + RationalFunction.const(space.m, net) * value
            for tname, mult in types:
                contrib = RationalFunction.const(space.m, mult) * value
                per_type[tname] = per_type[tname] + contrib
                total = total + contrib

    rows.sort(key=lambda row: row.id)
    constant = rf_is_constant(total)
    if constant is None and strict:
        raise WeightDependenceError(
            "weight dependence detected: total is %s" % rf_to_string(total), total
        )
    return InvariantResult(
        space=space,
        phi=phi,
        degree=degree,
        t=t,
        ell=ell,
        total_function=total,
        total=constant,
        weight_independent=constant is not None,
        vanishing="d odd" if degree % 2 == 1 else None,
        per_type=per_type,
        per_kind=per_kind,
        per_graph=rows,
    )


def per_type_decomposition(
    space: SpaceSpec, degree: int, t: Optional[int] = None
) -> Dict[str, RationalFunction]:
    """The c_a / c_m / c_k decomposition of the tau invariant."""
    if degree % 2 == 1:
        raise ValueError("per-type decomposition needs even degree")
    return compute_invariant(space, degree, "tau", t=t).per_type


def classical_sanity(space: SpaceSpec, k: int) -> RationalFunction:
    """sum_i lambda_i^k / prod_{j != i} (lambda_i - lambda_j).

    The localization expansion of the integral of H^k over P^{2m-1}:
    equal to 1 for k = 2m-1 and to 0 for smaller non-negative k.
    """
    if k < 0:
        raise ValueError("exponent must be non-negative")
    total = RationalFunction.const(space.m, 0)
    for i in space.labels:
        term = space.weight(i) ** k
        for j in space.labels:
            if j != i:
                term = term / (space.weight(i) - space.weight(j))
        total = total + term
    return total


# ---------------------------------------------------------------------------
# substitute-first numeric path
# ---------------------------------------------------------------------------


def _lam(space: SpaceSpec, i: int, point: Sequence[Fraction]) -> Fraction:
    return space.weight_value(i, point)


def _edge_factor_num(
    space: SpaceSpec, j1: int, j2: int, d: int, point: Sequence[Fraction]
) -> Fraction:
    l1, l2 = _lam(space, j1, point), _lam(space, j2, point)
    result = Fraction((-1) ** d) * Fraction(factorial(d) ** 2, d ** (2 * d))
    result *= (l1 - l2) ** (2 * d)
    for r in range(d + 1):
        interp = (r * l1 + (d - r) * l2) / d
        for k in space.labels:
            if k not in (j1, j2):
                result *= interp - _lam(space, k, point)
    return result


def _halfedge_factor_num(
    space: SpaceSpec, i: int, d0: int, point: Sequence[Fraction]
) -> Fraction:
    li = _lam(space, i, point)
    result = Fraction(1, factorial(d0)) * (Fraction(d0, 2) / li) ** d0
    for j in space.labels:
        if j == i or j % 2 != i % 2:
            continue
        lj = _lam(space, j, point)
        for r in range(d0 + 1):
            result /= li * Fraction(d0 - 2 * r, d0) - lj
    return result


def _flag_factor_num(space: SpaceSpec, j: int, point: Sequence[Fraction]) -> Fraction:
    result = Fraction(1)
    lj = _lam(space, j, point)
    for k in space.labels:
        if k != j:
            result *= lj - _lam(space, k, point)
    return result


def _edge_flag_weight_num(
    space: SpaceSpec, g: HalfGraph, v: int, edge: Tuple[int, int, int], point: Sequence[Fraction]
) -> Fraction:
    u, w, d = edge
    other = w if v == u else u
    return (_lam(space, g.labels[v], point) - _lam(space, g.labels[other], point)) / d


def _valence_slot_num(weights: Sequence[Fraction]) -> Fraction:
    if len(weights) == 1:
        return weights[0]
    if len(weights) == 2:
        return 1 / (weights[0] + weights[1])
    n = len(weights)
    total = Fraction(0)
    for vec in exponent_vectors(n - 3, n):
        term = psi_integral(vec)
        for w, e in zip(weights, vec):
            term /= w ** (e + 1)
        total += term
    return total


def numeric_value(
    space: SpaceSpec,
    g: HalfGraph,
    t: int,
    ell: int,
    point: Sequence[Fraction],
    flip_nonsep_sign: bool = False,
) -> Fraction:
    """insertion * euler-inverse of one half-graph, weights substituted first.

    Raises ZeroDivisionError when the weights hit a pole.
    """
    flags: List[Tuple[int, Fraction]] = []
    for edge in g.edges:
        for v in (edge[0], edge[1]):
            flags.append((g.labels[v], _edge_flag_weight_num(space, g, v, edge, point)))
    for a, d0 in g.stubs:
        flags.append((g.labels[a], 2 * _lam(space, g.labels[a], point) / d0))
    insertion = sum(_lam(space, lab, point) ** t / w for lab, w in flags) ** ell

    euler = Fraction(1)
    if g.kind == "separable":
        for v in range(g.n_vertices):
            weights = [_edge_flag_weight_num(space, g, v, e, point) for e in g.incident_edges(v)]
            weights += [2 * _lam(space, g.labels[v], point) / d0 for a, d0 in g.stubs if a == v]
            euler /= _flag_factor_num(space, g.labels[v], point)
            euler *= _valence_slot_num(weights)
        for u, v, d in g.edges:
            euler *= _flag_factor_num(space, g.labels[u], point)
            euler *= _flag_factor_num(space, g.labels[v], point)
            euler /= _edge_factor_num(space, g.labels[u], g.labels[v], d, point)
        for a, d0 in g.stubs:
            euler *= _flag_factor_num(space, g.labels[a], point)
            euler *= _halfedge_factor_num(space, g.labels[a], d0, point)
    else:
        sign = (-1) ** (degree_of(g) // 2)
        if flip_nonsep_sign:
            sign = -sign
        (last_edge,) = g.incident_edges(g.pbar)
        u = last_edge[1] if last_edge[0] == g.pbar else last_edge[0]
        phantom = (
            _lam(space, g.labels[g.p0], point)
            - _lam(space, space.bar(g.labels[u]), point)
        ) / last_edge[2]
        for v in range(g.n_vertices):
            if v == g.pbar:
                continue
            weights = [_edge_flag_weight_num(space, g, v, e, point) for e in g.incident_edges(v)]
            if v == g.p0:
                weights.append(phantom)
            euler /= _flag_factor_num(space, g.labels[v], point)
            euler *= _valence_slot_num(weights)
        for uu, vv, d in g.edges:
            euler *= _flag_factor_num(space, g.labels[uu], point)
            euler *= _flag_factor_num(space, g.labels[vv], point)
            euler /= _edge_factor_num(space, g.labels[uu], g.labels[vv], d, point)
        euler *= sign
    return insertion * euler


@dataclass
class CrossCheckReport:
    trials: int
    agreed: int
    failures: List[Tuple[Tuple[Fraction, ...], Fraction, Fraction]]

    def __bool__(self) -> bool:
        return self.agreed == self.trials and not self.failures


def cross_eval_check(
    result: InvariantResult,
    trials: int = 100,
    seed: Optional[int] = None,
    max_redraws: int = 64,
) -> CrossCheckReport:
    """Substitute-first re-evaluation of a completed ledger.

    For every trial, draws integer weights, recomputes each ledger row
    with plain rational arithmetic, and compares the type-weighted sum
    against rf_eval of the exact total.  Weights hitting a pole are
    redrawn (bounded).  Returns a report that is truthy iff every trial
    agreed exactly.
    """
    space = result.space
    rng = random.Random(seed)
    report = CrossCheckReport(trials=trials, agreed=0, failures=[])
    for _ in range(trials):
        for _attempt in range(max_redraws):
            point = tuple(Fraction(rng.randint(1, 10**6)) for _ in range(space.m))
            try:
                numeric = Fraction(0)
                for row in result.per_graph:
                    scale = Fraction(
                        row.net_multiplier * 2**result.ell,
                        row.divisor * row.aut * row.n_halves,
                    )
                    if scale:
                        numeric += scale * numeric_value(
                            space, row.graph, result.t, result.ell, point
                        )
                exact = rf_eval(result.total_function, point)
            except ZeroDivisionError:
                continue
            if numeric == exact:
                report.agreed += 1
            else:
                report.failures.append((point, numeric, exact))
            break
        else:
            raise RuntimeError(
                "no pole-free weights found after %d redraws" % max_redraws
            )
    return report


@dataclass
class SignFlipReport:
    base_constant: Optional[Fraction]
    flipped_constant: Optional[Fraction]
    flipped_weight_independent: bool
    changed: bool

    def __bool__(self) -> bool:
        return self.changed


def sign_flip_experiment(
    space: SpaceSpec, degree: int, phi: str = "eta", t: Optional[int] = None
) -> SignFlipReport:
    """Recompute with the non-separable global sign negated.

    Demonstrates the necessity of that sign: the flipped total either
    loses weight independence (degree 4) or lands on a wrong constant
    (degree 2).  Truthy iff the flip changes the total.
    """
    base = compute_invariant(space, degree, phi, t=t, strict=False)
    if not any(row.kind == "non-separable" for row in base.per_graph):
        raise ValueError(
            "experiment vacuous: no non-separable loci in degree %d" % degree
        )
    flipped = compute_invariant(
        space, degree, phi, t=t, flip_nonsep_sign=True, strict=False
    )
    return SignFlipReport(
        base_constant=base.total,
        flipped_constant=flipped.total,
        flipped_weight_independent=flipped.weight_independent,
        changed=not (base.total_function - flipped.total_function).is_zero(),
    )
