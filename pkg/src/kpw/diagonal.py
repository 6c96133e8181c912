"""The diagonal subalgebra and its model as cylinder-set functions.

A :class:`CylinderFunction` is kept refined to one common degree, where
distinct cylinders are disjoint, so comparing coefficients compares functions.
"""
from __future__ import annotations

from .errors import GraphError, PreconditionError, RingMismatchError
from .infpath import EvPeriodicPath, cylinder_member
from .kgraph import KGraph, Path, deg_join, deg_le, deg_sub, deg_zero
from .kpalg import KPElement
from .ring import RingSpec


class CylinderFunction:
    """``sum r_mu 1_{Z(mu)}`` with every ``mu`` of the same degree."""

    __slots__ = ("graph", "ring", "depth", "combination")
    __hash__ = None

    def __init__(self, graph: KGraph, ring: RingSpec, combination: dict | None = None):
        self.graph = graph
        self.ring = ring
        raw = {mu: ring.normalize(c) for mu, c in (combination or {}).items()}
        raw = {mu: c for mu, c in raw.items() if c != 0}
        depth = deg_join(*(mu.degree for mu in raw)) if raw else deg_zero(graph.rank)
        self.depth = depth
        self.combination = _refine(graph, ring, raw, depth)

    @classmethod
    def indicator(cls, graph, ring, mu: Path, coef=1) -> CylinderFunction:
        return cls(graph, ring, {mu: coef})

    def _check(self, other):
        if other.graph is not self.graph:
            raise GraphError("cylinder functions over different graphs")
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine functions over {self.ring} and {other.ring}")

    def refined(self, depth) -> dict:
        return _refine(self.graph, self.ring, self.combination, depth)

    def __add__(self, other):
        self._check(other)
        d = deg_join(self.depth, other.depth)
        a, b = self.refined(d), other.refined(d)
        R = self.ring
        return CylinderFunction(self.graph, R, {mu: R.add(a.get(mu, 0), b.get(mu, 0))
                                                for mu in set(a) | set(b)})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        R = self.ring
        return CylinderFunction(self.graph, R, {mu: R.mul(R.normalize(c), v)
                                                for mu, v in self.combination.items()})

    def __mul__(self, other):
        return cyl_mul(self, other)

    def is_zero(self) -> bool:
        return not self.combination

    def __eq__(self, other):
        if not isinstance(other, CylinderFunction):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    def __call__(self, x: EvPeriodicPath):
        """Value at an infinite path."""
        R = self.ring
        total = R.zero
        for mu, c in self.combination.items():
            if cylinder_member(x, mu):
                total = R.add(total, c)
        return total

    def sorted_items(self) -> list:
        return sorted(self.combination.items())

    def __str__(self):
        if not self.combination:
            return "0"
        return " + ".join(f"{c} * Z[{mu}]" for mu, c in self.sorted_items())

    def __repr__(self):
        return f"CylinderFunction({self})"


def _refine(g: KGraph, ring: RingSpec, comb: dict, depth) -> dict:
    out = {}
    for mu, c in comb.items():
        if not deg_le(mu.degree, depth):
            raise GraphError(f"cannot refine Z({mu}) to degree {depth}")
        for lam in g.extensions(mu, deg_sub(depth, mu.degree)):
            v = ring.add(out.get(lam, 0), c)
            if v == 0:
                out.pop(lam, None)
            else:
                out[lam] = v
    return out


def cyl_mul(f: CylinderFunction, g: CylinderFunction) -> CylinderFunction:
    f._check(g)
    d = deg_join(f.depth, g.depth)
    a, b = f.refined(d), g.refined(d)
    R = f.ring
    return CylinderFunction(f.graph, R, {mu: R.mul(a[mu], b[mu]) for mu in a if mu in b})


def same_cylinder(g: KGraph, mu: Path, nu: Path) -> bool:
    """``Z(mu) = Z(nu)``, i.e. ``s_mu s_{mu*} = s_nu s_{nu*}``."""
    if mu.range != nu.range:
        return False
    if mu == nu:
        return True
    d = deg_join(mu.degree, nu.degree)
    return (set(g.extensions(mu, deg_sub(d, mu.degree)))
            == set(g.extensions(nu, deg_sub(d, nu.degree))))


def is_in_diagonal(a: KPElement) -> bool:
    zero = deg_zero(a.graph.rank)
    if not a.equals(a.graded_component(zero)):
        return False
    return all(alpha == beta for (alpha, beta) in a.graded_component(zero).normal_form().terms)


def pi(d: KPElement) -> CylinderFunction:
    """The isomorphism from the diagonal onto cylinder functions."""
    if not is_in_diagonal(d):
        raise PreconditionError(f"{d} is not in the diagonal subalgebra")
    nf = d.graded_component(deg_zero(d.graph.rank)).normal_form()
    return CylinderFunction(d.graph, d.ring, {alpha: c for (alpha, _), c in nf.terms.items()})


def pi_inverse(f: CylinderFunction) -> KPElement:
    return KPElement(f.graph, f.ring, {(mu, mu): c for mu, c in f.combination.items()})
