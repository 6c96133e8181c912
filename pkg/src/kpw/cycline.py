"""Cycline pairs, the cycline subalgebra M, and aperiodicity verdicts.

For 1-graphs the cycle-without-entry rule decides everything. For k >= 2 the
projection condition is checked on all extensions up to a depth; a positive
answer needs a certificate (trivial pair, or a unique infinite path at the
common source), otherwise the verdict is ``unknown``.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field

from .diagonal import same_cylinder
from .errors import GraphError
from .infpath import unique_infinite_path
from .kgraph import KGraph, Path, deg_diag
from .kpalg import KPElement, mul, projection

CYCLINE = "cycline"
NOT_CYCLINE = "not-cycline"
UNKNOWN = "unknown"

DEFAULT_DEPTH = 6


@dataclass(frozen=True)
class CyclineVerdict:
    status: str
    witness: Path | None = None
    certificate: str = ""
    depth: int = 0

    @property
    def decisive(self) -> bool:
        return self.status != UNKNOWN

    def __str__(self):
        if self.status == NOT_CYCLINE:
            return f"not-cycline, witness γ={self.witness}"
        if self.status == CYCLINE:
            return f"cycline ({self.certificate})"
        return f"unknown (searched depth {self.depth})"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else str(self.witness),
            "certificate": self.certificate,
            "depth": self.depth,
        }


@dataclass(frozen=True)
class CyclinePair:
    alpha: Path
    beta: Path
    verdict: CyclineVerdict

    def __str__(self):
        return f"({self.alpha}, {self.beta}): {self.verdict.status}"


_verdict_cache: "weakref.WeakKeyDictionary[KGraph, dict]" = weakref.WeakKeyDictionary()


def cycle_has_entry(g: KGraph, c: Path) -> bool:
    """Range-side entry: some edge other than c_i shares the range of c_i."""
    for name in c.edges:
        e = g.edges[name]
        if len(g.in_edges(e.range, e.color)) > 1:
            return True
        if any(g.in_edges(e.range, col) for col in range(1, g.rank + 1) if col != e.color):
            return True
    return False


def cycles_without_entry(g: KGraph) -> list:
    """Primitive cycles without entry of a 1-graph, one per cycle, rotated to
    start at the least vertex name."""
    nxt = {}
    for v in g.vertices:
        into = g.in_edges(v, 1)
        if len(into) == 1:
            nxt[v] = into[0]
    found = []
    done = set()
    for v in sorted(nxt):
        if v in done:
            continue
        trail = []
        w = v
        while w in nxt and w not in trail:
            trail.append(w)
            w = nxt[w].source
        done.update(trail)
        if w in trail:
            loop = trail[trail.index(w):]
            start = min(loop)
            i = loop.index(start)
            loop = loop[i:] + loop[:i]
            c = g.path([nxt[u].name for u in loop])
            if c not in found:
                found.append(c)
    return found


def _k1_status(g: KGraph, alpha: Path, beta: Path):
    if alpha == beta:
        return CYCLINE, "alpha = beta"
    for long, short, label in ((alpha, beta, "alpha = beta c"), (beta, alpha, "beta = alpha c")):
        if long.degree > short.degree and long.range == short.range:
            head, c = g.factor(long, short.degree)
            if head == short and c.range == c.source and not cycle_has_entry(g, c):
                return CYCLINE, f"{label} with c={c} a cycle without entry"
    return NOT_CYCLINE, ""


def projection_failure(g: KGraph, alpha: Path, beta: Path, depth: int):
    """First ``gamma`` (by diagonal level, then path order) with
    ``s_{alpha gamma} s_{(alpha gamma)*} != s_{beta gamma} s_{(beta gamma)*}``."""
    for t in range(depth + 1):
        for gam in g.enumerate_paths(alpha.source, deg_diag(g.rank, t)):
            if not same_cylinder(g, g.compose(alpha, gam), g.compose(beta, gam)):
                return gam
    return None


def bounded_cycline(g: KGraph, alpha: Path, beta: Path, depth: int = DEFAULT_DEPTH) -> CyclineVerdict:
    """Depth-bounded check of the projection condition, any k."""
    gam = projection_failure(g, alpha, beta, depth)
    if gam is not None:
        return CyclineVerdict(NOT_CYCLINE, gam, "projections differ", depth)
    if alpha == beta:
        return CyclineVerdict(CYCLINE, None, "trivial pair", depth)
    x = unique_infinite_path(g, alpha.source)
    if x is not None:
        return CyclineVerdict(CYCLINE, None, f"unique infinite path {x} at {alpha.source}", depth)
    return CyclineVerdict(UNKNOWN, None, f"no failure up to depth {depth}", depth)


def is_cycline(g: KGraph, alpha: Path, beta: Path, depth: int = DEFAULT_DEPTH) -> CyclineVerdict:
    if alpha.source != beta.source:
        raise GraphError(f"s({alpha}) = {alpha.source} differs from s({beta}) = {beta.source}")
    cache = _verdict_cache.setdefault(g, {})
    key = (alpha, beta, depth)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if g.rank == 1:
        status, cert = _k1_status(g, alpha, beta)
        if status == CYCLINE:
            verdict = CyclineVerdict(CYCLINE, None, cert, depth)
        else:
            # the vertex s(alpha) already separates the cylinders for 1-graphs
            t = depth
            gam = None
            while gam is None:
                gam = projection_failure(g, alpha, beta, t)
                t += 1
                if t > depth + 64:
                    raise AssertionError(f"no projection witness for ({alpha}, {beta})")
            verdict = CyclineVerdict(NOT_CYCLINE, gam, "1-graph rule: no cycle without entry relates them", depth)
    else:
        verdict = bounded_cycline(g, alpha, beta, depth)
    cache[key] = verdict
    return verdict


def cycline_pairs_up_to(g: KGraph, degree_bound, depth: int = DEFAULT_DEPTH) -> list:
    """Every pair with common source and degrees <= ``degree_bound``, with its verdict."""
    g.require_valid()
    by_source = {}
    for lam in g.paths_up_to(tuple(degree_bound)):
        by_source.setdefault(lam.source, []).append(lam)
    out = []
    for v in sorted(by_source):
        paths = by_source[v]
        for a in paths:
            for b in paths:
                out.append(CyclinePair(a, b, is_cycline(g, a, b, depth)))
    return out


@dataclass
class MembershipVerdict:
    status: str  # yes / no / unknown
    terms: list = field(default_factory=list)  # (alpha, beta, coef, CyclineVerdict)

    def __str__(self):
        return self.status

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "terms": [{"alpha": str(a), "beta": str(b), "coef": str(c), "verdict": v.to_dict()}
                      for a, b, c, v in self.terms],
        }


def is_in_M(a: KPElement, depth: int = DEFAULT_DEPTH) -> MembershipVerdict:
    """Membership in the cycline subalgebra via the normal-form criterion."""
    g = a.graph
    canon = a.canonical()
    rows = []
    for alpha, beta, c in canon.sorted_terms():
        rows.append((alpha, beta, c, is_cycline(g, alpha, beta, depth)))
    statuses = {v.status for *_, v in rows}
    if NOT_CYCLINE in statuses:
        status = "no"
    elif UNKNOWN in statuses:
        status = "unknown"
    else:
        status = "yes"
    return MembershipVerdict(status, rows)


def commutant_witness(a: KPElement, degree_bound) -> Path | None:
    """First ``mu`` with ``d(mu) <= degree_bound`` whose projection does not
    commute with ``a``."""
    g, R = a.graph, a.ring
    if isinstance(degree_bound, int):
        degree_bound = deg_diag(g.rank, degree_bound)
    for mu in g.paths_up_to(degree_bound):
        P = projection(g, R, mu)
        if not mul(a, P).equals(mul(P, a)):
            return mu
    return None


@dataclass
class AperiodicityVerdict:
    status: str  # aperiodic / not-aperiodic / unknown
    detail: str = ""
    witness: tuple | None = None

    def __str__(self):
        return f"{self.status} ({self.detail})" if self.detail else self.status

    def to_dict(self) -> dict:
        return {"status": self.status, "detail": self.detail,
                "witness": None if self.witness is None else [str(p) for p in self.witness]}


def is_aperiodic(g: KGraph, depth: int = DEFAULT_DEPTH, degree_bound=None) -> AperiodicityVerdict:
    g.require_valid()
    if g.rank == 1:
        cycles = cycles_without_entry(g)
        if cycles:
            c = cycles[0]
            return AperiodicityVerdict("not-aperiodic", f"cycle {c} has no entry",
                                       (c, g.vertex(c.source)))
        return AperiodicityVerdict("aperiodic", "every cycle has an entry")
    bound = deg_diag(g.rank, 2) if degree_bound is None else tuple(degree_bound)
    unknown = 0
    for pair in cycline_pairs_up_to(g, bound, depth):
        if pair.alpha != pair.beta and pair.verdict.status == CYCLINE:
            return AperiodicityVerdict("not-aperiodic",
                                       f"nontrivial cycline pair ({pair.alpha}, {pair.beta})",
                                       (pair.alpha, pair.beta))
        if pair.verdict.status == UNKNOWN:
            unknown += 1
    if unknown:
        return AperiodicityVerdict("unknown", f"{unknown} undecided pairs up to degree {bound}")
    return AperiodicityVerdict("aperiodic", f"only diagonal cycline pairs up to degree {bound}")
