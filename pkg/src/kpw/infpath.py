"""Eventually periodic infinite paths ``x = prefix . cycle . cycle ...``.

Only these are representable; they are the points the uniqueness machinery
needs, and equality between them is decidable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import GraphError, ParseError
from .kgraph import KGraph, Path, deg_add, deg_join, deg_le, deg_sub


def _ceil_div(a, b):
    return -(-a // b)


@dataclass(frozen=True)
class EvPeriodicPath:
    prefix: Path
    cycle: Path
    graph: KGraph = field(compare=False, repr=False)

    @property
    def range(self) -> str:
        return self.prefix.range

    @property
    def base(self):
        """Degree at which the periodic part starts."""
        return self.prefix.degree

    def __str__(self):
        return f"{self.prefix};{self.cycle}"

    def __repr__(self):
        return f"EvPeriodicPath({self})"

    def initial(self, n) -> Path:
        """``x(0, n)``."""
        g = self.graph
        n = tuple(n)
        if min(n) < 0 or len(n) != g.rank:
            raise GraphError(f"bad degree {n}")
        over = deg_sub(n, self.base)
        t = max([0] + [_ceil_div(o, c) for o, c in zip(over, self.cycle.degree)])
        long = self.prefix
        for _ in range(t):
            long = g.compose(long, self.cycle)
        return g.factor(long, n)[0]

    def segment(self, m, n) -> Path:
        """``x(m, n)`` for ``m <= n``."""
        m, n = tuple(m), tuple(n)
        if not deg_le(m, n):
            raise GraphError(f"segment needs m <= n, got m={m}, n={n}")
        return self.graph.factor(self.initial(n), m)[1]

    def shift(self, p) -> EvPeriodicPath:
        """``sigma^p(x)``."""
        p = tuple(p)
        if not any(p):
            return self
        g = self.graph
        top = self.base
        while not deg_le(p, top):
            top = deg_add(top, self.cycle.degree)
        return make_infpath(g, self.segment(p, top), self.cycle)

    def prepend(self, alpha: Path) -> EvPeriodicPath:
        """``alpha x`` for ``s(alpha) = r(x)``."""
        return make_infpath(self.graph, self.graph.compose(alpha, self.prefix), self.cycle)

    def is_periodic(self) -> bool:
        """Periodic in the shift sense; always true for these paths."""
        b = self.base
        return infpath_eq(self.shift(b), self.shift(deg_add(b, self.cycle.degree)))


def _raw_eq(x: EvPeriodicPath, y: EvPeriodicPath) -> bool:
    if x.range != y.range:
        return False
    b = deg_join(x.base, y.base)
    cx, cy = x.cycle.degree, y.cycle.degree
    lcm = tuple(a * c // gcd(a, c) for a, c in zip(cx, cy))
    # b + cx + cy is enough whatever the directions of cx and cy; keep the lcm bound too
    n = deg_add(b, deg_join(lcm, deg_add(cx, cy)))
    return x.initial(n) == y.initial(n)


def infpath_eq(x: EvPeriodicPath, y: EvPeriodicPath) -> bool:
    return _raw_eq(x, y)


def _primitive_cycle(g: KGraph, cycle: Path) -> Path:
    d = cycle.degree
    common = 0
    for c in d:
        common = gcd(common, c)
    for j in range(common, 1, -1):
        if common % j:
            continue
        root = g.factor(cycle, tuple(c // j for c in d))[0]
        if root.source != root.range:
            continue
        power = root
        for _ in range(j - 1):
            power = g.compose(power, root)
        if power == cycle:
            return root
    return cycle


def make_infpath(g: KGraph, prefix: Path, cycle: Path) -> EvPeriodicPath:
    """Build and normalize ``prefix . cycle^infinity``.

    Normalization replaces the cycle by its primitive root and lowers the
    start of the periodic part one color step at a time while the tail stays
    invariant under the cycle degree.
    """
    if cycle.range != cycle.source:
        raise GraphError(f"{cycle} is not a cycle")
    if cycle.range != prefix.source:
        raise GraphError(f"cycle {cycle} does not start at s({prefix}) = {prefix.source}")
    if min(cycle.degree) < 1:
        raise GraphError(f"cycle degree {cycle.degree} must be positive in every coordinate")
    x = EvPeriodicPath(prefix, _primitive_cycle(g, cycle), g)
    L = x.cycle.degree
    k = g.rank
    moved = True
    while moved:
        moved = False
        for i in range(k):
            b = x.base
            if b[i] == 0:
                continue
            b2 = tuple(c - 1 if j == i else c for j, c in enumerate(b))
            tail = x.segment(b2, deg_add(b2, L))
            if tail.range != tail.source:
                continue
            cand = EvPeriodicPath(x.initial(b2), tail, g)
            if _raw_eq(cand, x):
                x = cand
                moved = True
                break
    return x


def segment(x: EvPeriodicPath, m, n) -> Path:
    return x.segment(m, n)


def shift(x: EvPeriodicPath, p) -> EvPeriodicPath:
    return x.shift(p)


def cylinder_member(x: EvPeriodicPath, mu: Path) -> bool:
    if mu.range != x.range:
        return False
    return x.initial(mu.degree) == mu


def parse_infpath(g: KGraph, text: str) -> EvPeriodicPath:
    """Parse ``prefix;cycle`` where both parts are dot-separated edge names
    (or a vertex name)."""
    try:
        pre, cyc = text.split(";")
    except ValueError:
        raise ParseError(f"infinite path {text!r} must look like 'prefix;cycle'") from None
    try:
        prefix = g.path(pre.strip())
        cycle = g.path(cyc.strip())
    except GraphError as exc:
        raise ParseError(f"bad infinite path {text!r}: {exc}") from None
    try:
        return make_infpath(g, prefix, cycle)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def iter_cycle_paths(g: KGraph, v: str, max_length: int):
    """Lazily yield eventually periodic paths ``rho . c^infinity`` with ``r(rho) = v``.

    Prefix and cycle degrees run along the diagonal ``t(1,...,1)``; ordered by
    cycle size, then prefix size, then path order. Duplicates are dropped.
    """
    k = g.rank
    seen = set()
    for total in range(1, max_length + 1):
        for clen in range(1, total + 1):
            plen = total - clen
            for rho in g.enumerate_paths(v, (plen,) * k):
                for c in g.enumerate_paths(rho.source, (clen,) * k):
                    if c.source != c.range:
                        continue
                    x = make_infpath(g, rho, c)
                    key = (x.prefix, x.cycle)
                    if key not in seen:
                        seen.add(key)
                        yield x


def cycle_paths(g: KGraph, v: str, max_length: int) -> list:
    return list(iter_cycle_paths(g, v, max_length))


def unique_infinite_path(g: KGraph, v: str) -> EvPeriodicPath | None:
    """The only infinite path with range ``v``, when ``v`` has exactly one
    edge of each color coming in along everything reachable from it."""
    k = g.rank
    for w in g.reachable(v):
        if any(len(g.in_edges(w, c)) != 1 for c in range(1, k + 1)):
            return None
    one = (1,) * k
    seen = {}
    path = g.vertex(v)
    w = v
    while w not in seen:
        seen[w] = path
        step = g.enumerate_paths(w, one)[0]
        path = g.compose(path, step)
        w = step.source
    start = seen[w]
    cycle = g.factor(path, start.degree)[1]
    return make_infpath(g, start, cycle)


__all__ = [
    "EvPeriodicPath", "make_infpath", "infpath_eq", "segment", "shift",
    "cylinder_member", "parse_infpath", "cycle_paths", "iter_cycle_paths", "unique_infinite_path",
]
