"""Seeded random paths and elements for tests and sampling commands."""
from __future__ import annotations

import random

from .kgraph import KGraph, Path, degrees_up_to, deg_diag
from .kpalg import KPElement
from .ring import RingSpec


def _bound(g: KGraph, bound):
    return deg_diag(g.rank, bound) if isinstance(bound, int) else tuple(bound)


def random_path(g: KGraph, rng: random.Random, bound=2, source: str | None = None) -> Path:
    """Uniform over degrees <= ``bound``, then over paths of that degree."""
    degs = degrees_up_to(_bound(g, bound))
    while True:
        n = rng.choice(degs)
        if source is None:
            v = rng.choice(g.vertices)
            paths = g.enumerate_paths(v, n)
        else:
            paths = g.enumerate_paths(source, n, direction="source")
        if paths:
            return rng.choice(paths)


def random_pair(g: KGraph, rng: random.Random, bound=2):
    """``(alpha, beta)`` with a common source."""
    alpha = random_path(g, rng, bound)
    beta = random_path(g, rng, bound, source=alpha.source)
    return alpha, beta


def random_element(g: KGraph, ring: RingSpec, rng: random.Random, bound=2,
                   terms: int = 3, nonzero: bool = False) -> KPElement:
    while True:
        out = {}
        for _ in range(rng.randint(1, terms)):
            key = random_pair(g, rng, bound)
            out[key] = ring.add(out.get(key, 0), ring.sample_nonzero(rng))
        a = KPElement(g, ring, out)
        if not nonzero or not a.is_zero():
            return a


def random_diagonal(g: KGraph, ring: RingSpec, rng: random.Random, bound=2, terms: int = 3) -> KPElement:
    out = {}
    for _ in range(rng.randint(1, terms)):
        mu = random_path(g, rng, bound)
        out[(mu, mu)] = ring.add(out.get((mu, mu), 0), ring.sample_nonzero(rng))
    return KPElement(g, ring, out)
