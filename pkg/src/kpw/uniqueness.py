"""Constructive uniqueness: compressing a kernel element into the cycline
subalgebra, plus a harness for matrix Kumjian-Pask families.

Instead of a globally regular infinite path, the compression step looks for an
eventually periodic ``x`` that, for each off-diagonal pair ``(alpha, beta)``
in play, either misses ``F_{alpha,beta}`` with an explicit zero product or
lies in it with an explicit cycline extension.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .cycline import CYCLINE, DEFAULT_DEPTH, is_aperiodic, is_cycline, is_in_M
from .diagonal import CylinderFunction, cyl_mul, pi
from .errors import PreconditionError, SearchExhausted
from .infpath import EvPeriodicPath, cylinder_member, infpath_eq, iter_cycle_paths
from .kgraph import KGraph, Path, deg_add, deg_diag, deg_join, deg_zero
from .kpalg import KPElement, p, product, projection, s, t
from .ring import RingSpec


@dataclass(frozen=True)
class FPair:
    alpha: Path
    beta: Path

    def __post_init__(self):
        if self.alpha.source != self.beta.source:
            raise PreconditionError(f"s({self.alpha}) != s({self.beta})")
        if self.alpha == self.beta:
            raise PreconditionError("an F-pair needs alpha != beta")

    def __str__(self):
        return f"({self.alpha}, {self.beta})"


def _pair(pair) -> FPair:
    return pair if isinstance(pair, FPair) else FPair(*pair)


def f_membership(x: EvPeriodicPath, pair) -> bool:
    """``x`` in ``Z(alpha) & Z(beta)`` with equal shifts by ``d(alpha)`` and ``d(beta)``."""
    pr = _pair(pair)
    if not (cylinder_member(x, pr.alpha) and cylinder_member(x, pr.beta)):
        return False
    return infpath_eq(x.shift(pr.alpha.degree), x.shift(pr.beta.degree))


def sandwich(g: KGraph, ring: RingSpec, left: Path, alpha: Path, beta: Path, right: Path) -> KPElement:
    """``s_left s_{left*} s_alpha s_{beta*} s_right s_{right*}``."""
    return product(projection(g, ring, left), KPElement.spanning(g, ring, alpha, beta),
                   projection(g, ring, right))


def interior_certificate(x: EvPeriodicPath, pair, depth: int = DEFAULT_DEPTH, ring: RingSpec | None = None):
    """Smallest diagonal ``gamma`` along ``x`` making ``(alpha gamma, beta gamma)``
    certified cycline, or ``None``."""
    pr = _pair(pair)
    if not f_membership(x, pr):
        raise PreconditionError(f"{x} is not in F{pr}")
    g = x.graph
    y = x.shift(pr.alpha.degree)
    for step in range(depth + 1):
        gam = y.initial(deg_diag(g.rank, step))
        ag, bg = g.compose(pr.alpha, gam), g.compose(pr.beta, gam)
        if is_cycline(g, ag, bg, depth).status == CYCLINE:
            if ring is not None:
                lhs = sandwich(g, ring, ag, pr.alpha, pr.beta, bg)
                if not lhs.equals(KPElement.spanning(g, ring, ag, bg)):
                    raise AssertionError(f"sandwich identity fails for {pr} with gamma={gam}")
            return gam
    return None


def reduction_disjoint(x: EvPeriodicPath, pair, depth: int = DEFAULT_DEPTH, ring: RingSpec | None = None):
    """``(mu, mu)`` with ``mu = x(0, n)`` killing ``s_alpha s_{beta*}`` from both
    sides, for the first diagonal step ``n >= d(alpha) v d(beta)``."""
    pr = _pair(pair)
    if f_membership(x, pr):
        raise PreconditionError(f"{x} lies in F{pr}")
    g = x.graph
    R = ring or RingSpec.from_name("Z")
    n0 = deg_join(pr.alpha.degree, pr.beta.degree)
    for step in range(depth + 1):
        mu = x.initial(deg_add(n0, deg_diag(g.rank, step)))
        if sandwich(g, R, mu, pr.alpha, pr.beta, mu).is_zero():
            return mu, mu
    return None


def _vertex_multiple(comp: KPElement, w: str):
    """``r`` with ``comp = r p_w`` and ``r != 0``, else ``None``."""
    nf = comp.normal_form()
    if not nf.terms:
        return None
    r = next(iter(nf.terms.values()))
    if comp.equals(p(comp.graph, comp.ring, w, r)):
        return r
    return None


def find_vertex_pair(a: KPElement, bound=2):
    """``(delta, epsilon, b)`` with ``b = s_{delta*} a s_epsilon`` whose grade-zero
    part is a nonzero multiple of ``p_{s(delta)}``."""
    if a.is_zero():
        raise PreconditionError("find_vertex_pair needs a nonzero element")
    g, R = a.graph, a.ring
    if isinstance(bound, int):
        bound = deg_diag(g.rank, bound)
    zero = deg_zero(g.rank)
    base = [(alpha, beta) for alpha, beta, _ in a.canonical().sorted_terms()]
    candidates = list(base)
    for n in _degrees(bound):
        if any(n):
            for alpha, beta in base:
                for gam in g.enumerate_paths(alpha.source, n):
                    candidates.append((g.compose(alpha, gam), g.compose(beta, gam)))
    for delta, eps in candidates:
        b = product(t(g, R, delta), a, s(g, R, eps))
        if b.is_zero():
            continue
        r = _vertex_multiple(b.graded_component(zero), delta.source)
        if r is not None:
            return delta, eps, b
    raise SearchExhausted(f"no (delta, epsilon) found up to degree {bound}")


def _degrees(bound):
    from .kgraph import degrees_up_to
    return degrees_up_to(tuple(bound))


@dataclass(frozen=True)
class Certificate:
    kind: str  # "interior" or "disjoint"
    alpha: Path
    beta: Path
    gamma: Path | None = None
    mu: Path | None = None
    nu: Path | None = None

    def __str__(self):
        if self.kind == "interior":
            return f"({self.alpha}, {self.beta}) interior via gamma={self.gamma}"
        return f"({self.alpha}, {self.beta}) disjoint via mu={self.mu}, nu={self.nu}"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "alpha": str(self.alpha), "beta": str(self.beta)}
        if self.kind == "interior":
            out["gamma"] = str(self.gamma)
        else:
            out["mu"] = str(self.mu)
            out["nu"] = str(self.nu)
        return out


@dataclass
class CompressionBounds:
    depth: int = DEFAULT_DEPTH       # cycline and certificate searches
    cycle_length: int = 8            # candidate infinite paths
    pair_bound: int = 2              # extensions tried by find_vertex_pair


@dataclass
class CompressionReport:
    delta: Path
    epsilon: Path
    b: KPElement
    r: object
    x: EvPeriodicPath
    certificates: list
    m: KPElement
    in_M: object
    cylinder_paths: list
    candidates_tried: int = 0

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "epsilon": str(self.epsilon),
            "b": str(self.b),
            "r": str(self.r),
            "x": str(self.x),
            "certificates": [c.to_dict() for c in self.certificates],
            "m": str(self.m),
            "m_in_M": self.in_M.status,
            "U": [str(mu) for mu in self.cylinder_paths],
            "candidates_tried": self.candidates_tried,
        }


def _certify(x, pairs, depth, ring):
    certs = []
    g = x.graph
    for alpha, beta in pairs:
        if f_membership(x, (alpha, beta)):
            gam = interior_certificate(x, (alpha, beta), depth, ring)
            if gam is None:
                return None
            certs.append(Certificate("interior", alpha, beta, gamma=gam,
                                     mu=g.compose(alpha, gam), nu=g.compose(beta, gam)))
        else:
            hit = reduction_disjoint(x, (alpha, beta), depth, ring)
            if hit is None:
                return None
            certs.append(Certificate("disjoint", alpha, beta, mu=hit[0], nu=hit[1]))
    return certs


def compress_to_cycline(a: KPElement, x: EvPeriodicPath | None = None,
                        bounds: CompressionBounds | None = None):
    """Nonzero ``m`` in the cycline subalgebra inside the ideal generated by ``a``.

    Returns ``(m, report)``. For interior certificates ``mu``/``nu`` hold
    ``alpha gamma``/``beta gamma``.
    """
    bounds = bounds or CompressionBounds()
    g, R = a.graph, a.ring
    zero = deg_zero(g.rank)
    delta, eps, b = find_vertex_pair(a, bounds.pair_bound)
    w = delta.source
    r = _vertex_multiple(b.graded_component(zero), w)
    pairs = []
    for n, comp in b.components().items():
        if n != zero:
            pairs.extend((alpha, beta) for alpha, beta, _ in comp.canonical().sorted_terms())

    if x is not None:
        if x.range != w:
            raise PreconditionError(f"x must have range s(delta) = {w}, got {x.range}")
        candidates = [x]
    else:
        candidates = iter_cycle_paths(g, w, bounds.cycle_length)
    chosen = certs = None
    tried = 0
    for cand in candidates:
        tried += 1
        certs = _certify(cand, pairs, bounds.depth, R)
        if certs is not None:
            chosen = cand
            break
    if chosen is None:
        raise SearchExhausted(f"no eventually periodic x at {w} certifies every pair "
                              f"(cycle length {bounds.cycle_length}, depth {bounds.depth})")

    interior = [c for c in certs if c.kind == "interior"]
    disjoint = [c for c in certs if c.kind == "disjoint"]
    left = [c.mu for c in interior] + [c.mu for c in disjoint]
    right = [c.nu for c in disjoint] + [c.nu for c in interior]
    pw = p(g, R, w)
    u = product(pw, *[projection(g, R, mu) for mu in left])
    v = product(*[projection(g, R, nu) for nu in right], pw) if right else pw
    m = product(u, b, v)

    # m = u s_{delta*} a s_eps v lies in the ideal generated by a
    if not m.equals(product(u, t(g, R, delta), a, s(g, R, eps), v)):
        raise AssertionError("compressed element is not u b v")
    if m.is_zero():
        raise AssertionError("compression produced zero")
    verdict = is_in_M(m, bounds.depth)
    if verdict.status == "no":
        raise AssertionError(f"compressed element {m} is not in M")
    cyl = [g.vertex(w)] + left + right
    indicator = CylinderFunction.indicator(g, R, cyl[0])
    for mu in cyl[1:]:
        indicator = cyl_mul(indicator, CylinderFunction.indicator(g, R, mu))
    if not pi(m.graded_component(zero)) == indicator.scale(r):
        raise AssertionError("zero component of m is not r 1_U")
    if indicator(chosen) != 1:
        raise AssertionError(f"{chosen} is not in U")
    report = CompressionReport(delta, eps, b, r, chosen, certs, m, verdict, cyl, tried)
    return m, report


# matrix families

def mat_zero(n):
    return tuple((0,) * n for _ in range(n))


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(R: RingSpec, A, B):
    n = len(A)
    cols = list(zip(*B))
    return tuple(tuple(R.normalize(sum(A[i][k] * col[k] for k in range(n))) for col in cols)
                 for i in range(n))


def mat_add(R: RingSpec, A, B):
    return tuple(tuple(R.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(R: RingSpec, c, A):
    return tuple(tuple(R.mul(c, x) for x in row) for row in A)


def mat_is_zero(A) -> bool:
    return all(x == 0 for row in A for x in row)


def format_matrix(A) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in A)


@dataclass
class FamilyReport:
    problems: list = field(default_factory=list)
    checked: int = 0

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return f"valid ({self.checked} relations checked)"
        return "invalid: " + "; ".join(self.problems)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "problems": list(self.problems), "checked": self.checked}


@dataclass
class MatrixKPFamily:
    ring: RingSpec
    dim: int
    vertex: dict
    edge: dict
    ghost: dict
    _reports: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        R = self.ring
        norm = lambda M: tuple(tuple(R.normalize(x) for x in row) for row in M)
        self.vertex = {k: norm(M) for k, M in self.vertex.items()}
        self.edge = {k: norm(M) for k, M in self.edge.items()}
        self.ghost = {k: norm(M) for k, M in self.ghost.items()}

    def path_matrix(self, g: KGraph, lam: Path):
        if lam.is_vertex:
            return self.vertex[lam.range]
        out = self.edge[lam.edges[0]]
        for e in lam.edges[1:]:
            out = mat_mul(self.ring, out, self.edge[e])
        return out

    def ghost_matrix(self, g: KGraph, lam: Path):
        if lam.is_vertex:
            return self.vertex[lam.range]
        out = self.ghost[lam.edges[-1]]
        for e in reversed(lam.edges[:-1]):
            out = mat_mul(self.ring, out, self.ghost[e])
        return out

    def validate(self, g: KGraph) -> FamilyReport:
        key = id(g)
        if key not in self._reports:
            self._reports[key] = (g, validate_kp_family(self, g))
        return self._reports[key][1]

    def apply(self, a: KPElement):
        return apply_representation(self, a)

    def is_zero_image(self, img) -> bool:
        return mat_is_zero(img)

    def describe_image(self, img) -> str:
        return format_matrix(img)


class UniversalRepresentation:
    """The identity map of KP_R(Lambda) onto itself."""

    def __init__(self, g: KGraph, ring: RingSpec):
        self.graph = g
        self.ring = ring

    def validate(self, g: KGraph) -> FamilyReport:
        return FamilyReport([] if g is self.graph else ["different graph"], 0)

    def apply(self, a: KPElement):
        return a

    def is_zero_image(self, img) -> bool:
        return img.is_zero()

    def describe_image(self, img) -> str:
        return str(img)


def validate_kp_family(fam: MatrixKPFamily, g: KGraph) -> FamilyReport:
    rep = FamilyReport()
    R, N = fam.ring, fam.dim
    for label, table, names in (("p", fam.vertex, g.vertices), ("s", fam.edge, g.edges),
                                ("t", fam.ghost, g.edges)):
        for n in names:
            M = table.get(n)
            if M is None:
                rep.problems.append(f"missing matrix {label}[{n}]")
            elif len(M) != N or any(len(row) != N for row in M):
                rep.problems.append(f"matrix {label}[{n}] is not {N}x{N}")
    if rep.problems:
        return rep
    mm = lambda A, B: mat_mul(R, A, B)
    Z = mat_zero(N)

    def expect(cond, msg):
        rep.checked += 1
        if not cond:
            rep.problems.append(msg)

    Q = fam.vertex
    for v in g.vertices:
        for w in g.vertices:
            want = Q[v] if v == w else Z
            expect(mm(Q[v], Q[w]) == want, f"(KP1) fails: Q_{v} Q_{w} != {'Q_' + v if v == w else '0'}")
    T, Ts = fam.edge, fam.ghost
    for e in g.edges.values():
        n = e.name
        expect(mm(Q[e.range], T[n]) == T[n], f"(KP2) fails: Q_{e.range} T_{n} != T_{n}")
        expect(mm(T[n], Q[e.source]) == T[n], f"(KP2) fails: T_{n} Q_{e.source} != T_{n}")
        expect(mm(Q[e.source], Ts[n]) == Ts[n], f"(KP2) fails: Q_{e.source} T_{n}* != T_{n}*")
        expect(mm(Ts[n], Q[e.range]) == Ts[n], f"(KP2) fails: T_{n}* Q_{e.range} != T_{n}*")
    for (e, f), (f2, e2) in g.squares.items():
        expect(mm(T[e], T[f]) == mm(T[f2], T[e2]), f"(KP2) fails: T_{e} T_{f} != T_{f2} T_{e2}")
        expect(mm(Ts[f], Ts[e]) == mm(Ts[e2], Ts[f2]), f"(KP2) fails: T_{f}* T_{e}* != T_{e2}* T_{f2}*")
    for e in g.edges.values():
        for f in g.edges.values():
            if e.color != f.color:
                continue
            want = Q[e.source] if e.name == f.name else Z
            expect(mm(Ts[e.name], T[f.name]) == want,
                   f"(KP3) fails: T_{e.name}* T_{f.name} != {'Q_' + e.source if e.name == f.name else '0'}")
    for v in g.vertices:
        for c in range(1, g.rank + 1):
            total = Z
            for e in g.in_edges(v, c):
                total = mat_add(R, total, mm(T[e.name], Ts[e.name]))
            expect(total == Q[v], f"(KP4) fails at {v} for color {c}")
    if rep.problems:
        return rep
    # spot checks at higher degrees, built from edge matrices along blocked forms
    for n in _degrees(deg_diag(g.rank, 2)):
        if not any(n):
            continue
        for v in g.vertices:
            paths = g.enumerate_paths(v, n)
            total = Z
            for lam in paths:
                total = mat_add(R, total, mm(fam.path_matrix(g, lam), fam.ghost_matrix(g, lam)))
            expect(total == Q[v], f"(KP4) fails at {v} for degree {n}")
            for lam in paths:
                for mu in paths:
                    want = Q[lam.source] if lam == mu else Z
                    expect(mm(fam.ghost_matrix(g, lam), fam.path_matrix(g, mu)) == want,
                           f"(KP3) fails for {lam}, {mu}")
    return rep


def apply_representation(fam, a: KPElement):
    """Image of ``a`` under the homomorphism induced by the family."""
    g = a.graph
    rep = fam.validate(g)
    if not rep.valid:
        raise PreconditionError(f"family is not a Kumjian-Pask family: {rep}")
    if isinstance(fam, UniversalRepresentation):
        return fam.apply(a)
    R = fam.ring
    if R != a.ring:
        raise PreconditionError(f"family over {R} applied to an element over {a.ring}")
    out = mat_zero(fam.dim)
    for (alpha, beta), c in a.terms.items():
        M = mat_mul(R, fam.path_matrix(g, alpha), fam.ghost_matrix(g, beta))
        out = mat_add(R, out, mat_scale(R, c, M))
    return out


@dataclass
class KernelCase:
    element: KPElement
    m: KPElement | None = None
    report: CompressionReport | None = None
    m_in_kernel: bool = False
    error: str = ""

    @property
    def consistent(self) -> bool:
        return self.m is not None and self.m_in_kernel and not self.m.is_zero() \
            and self.report.in_M.status == "yes"

    def to_dict(self) -> dict:
        return {
            "element": str(self.element),
            "m": None if self.m is None else str(self.m),
            "m_in_kernel": self.m_in_kernel,
            "m_in_M": None if self.report is None else self.report.in_M.status,
            "certificates": [] if self.report is None else [c.to_dict() for c in self.report.certificates],
            "consistent": self.consistent,
            "error": self.error,
        }


@dataclass
class UniquenessReport:
    kernel: list
    vertex_images_nonzero: bool
    aperiodic: str
    corollary: str
    terms_examined: int
    random_samples: int

    @property
    def consistent(self) -> bool:
        return all(k.consistent for k in self.kernel) and self.corollary != "violated"

    @property
    def injective_on_M(self) -> bool:
        """False as soon as a nonzero kernel element of M has been exhibited."""
        return not any(k.consistent for k in self.kernel)

    def summary(self) -> str:
        if not self.kernel:
            head = "no kernel samples found; consistent with injectivity"
        elif self.consistent:
            head = (f"{len(self.kernel)} kernel samples, each compressed to a nonzero kernel "
                    f"element of M: restriction to M not injective, consistent")
        else:
            head = "INCONSISTENT: some kernel sample did not compress into M"
        return head

    def to_dict(self) -> dict:
        return {
            "summary": self.summary(),
            "consistent": self.consistent,
            "injective_on_M_sampled": self.injective_on_M,
            "kernel": [k.to_dict() for k in self.kernel],
            "vertex_images_nonzero": self.vertex_images_nonzero,
            "aperiodic": self.aperiodic,
            "corollary": self.corollary,
            "terms_examined": self.terms_examined,
            "random_samples": self.random_samples,
        }


def spanning_terms(g: KGraph, bound) -> list:
    """All ``(alpha, beta)`` with a common source and degrees <= ``bound``."""
    if isinstance(bound, int):
        bound = deg_diag(g.rank, bound)
    by_source = {}
    for lam in g.paths_up_to(bound):
        by_source.setdefault(lam.source, []).append(lam)
    out = []
    for v in sorted(by_source):
        out.extend(itertools.product(by_source[v], by_source[v]))
    out.sort(key=lambda ab: (sum(ab[0].degree) + sum(ab[1].degree), ab[0].sort_key, ab[1].sort_key))
    return out


def _nonzero_scalars(R: RingSpec) -> list:
    if R.modulus is not None:
        return list(range(1, R.modulus))
    from fractions import Fraction
    out = [1, -1, 2, 3, 5]
    if R.name == "Q":
        out.append(Fraction(1, 2))
    return out


def uniqueness_check(fam, g: KGraph, ring: RingSpec | None = None, samples: int = 50,
                     bounds: CompressionBounds | None = None, term_bound=2,
                     max_kernel: int = 5, seed: int = 0) -> UniquenessReport:
    """Search for kernel elements and push each through the compression step."""
    rep = fam.validate(g)
    if not rep.valid:
        raise PreconditionError(f"family is not a Kumjian-Pask family: {rep}")
    R = ring or fam.ring
    bounds = bounds or CompressionBounds()
    terms = spanning_terms(g, term_bound)
    elems = [KPElement.spanning(g, R, a, b) for a, b in terms]
    images = [apply_representation(fam, e) for e in elems]

    kernel = []

    def offer(k: KPElement):
        if len(kernel) >= max_kernel or k.is_zero():
            return
        if any(k.equals(old.element) or k.equals(-old.element) for old in kernel):
            return
        kernel.append(KernelCase(k))

    for e, img in zip(elems, images):
        if fam.is_zero_image(img):
            offer(e)
    for i, j in itertools.combinations(range(len(elems)), 2):
        if len(kernel) >= max_kernel:
            break
        d = elems[j] - elems[i]
        if fam.is_zero_image(apply_representation(fam, d)):
            offer(d)
    rng = random.Random(seed)
    for _ in range(samples):
        if len(kernel) >= max_kernel or not elems:
            break
        picks = rng.sample(range(len(elems)), min(3, len(elems)))
        k = KPElement.zero(g, R)
        for i in picks:
            k = k + elems[i].scale(R.sample_nonzero(rng, 2))
        if not k.is_zero() and fam.is_zero_image(apply_representation(fam, k)):
            offer(k)

    for case in kernel:
        try:
            m, crep = compress_to_cycline(case.element, bounds=bounds)
        except (SearchExhausted, PreconditionError) as exc:
            case.error = str(exc)
            continue
        case.m = m
        case.report = crep
        case.m_in_kernel = fam.is_zero_image(apply_representation(fam, m))

    vertex_ok = all(not fam.is_zero_image(apply_representation(fam, p(g, R, v, r)))
                    for v in g.vertices for r in _nonzero_scalars(R))
    ap = is_aperiodic(g, bounds.depth).status
    if ap != "aperiodic":
        corollary = "not applicable (graph not aperiodic)"
    elif vertex_ok and kernel:
        corollary = "violated"
    elif vertex_ok:
        corollary = "consistent: r p_v never vanish and no kernel samples"
    else:
        corollary = "consistent: some r p_v vanishes"
    return UniquenessReport(kernel, vertex_ok, ap, corollary, len(elems), samples)
