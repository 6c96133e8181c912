"""Elements of the Kumjian-Pask algebra KP_R(Lambda).

An element is a finite R-combination of spanning terms ``s_alpha s_{beta*}``
with ``s(alpha) = s(beta)``, stored as ``{(alpha, beta): coefficient}``.
Products use minimal common extensions; equality is decided per graded
component after pushing every ghost path to one common degree.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import GraphError, RingMismatchError
from .kgraph import KGraph, Path, deg_join, deg_le, deg_sub, deg_zero
from .ring import RingElem, RingSpec


def grade_of(alpha: Path, beta: Path):
    return deg_sub(alpha.degree, beta.degree)


def term_key(pair):
    alpha, beta = pair
    return (grade_of(alpha, beta), beta.sort_key, alpha.sort_key)


class KPElement:
    __slots__ = ("graph", "ring", "terms")
    __hash__ = None

    def __init__(self, graph: KGraph, ring: RingSpec, terms: dict | None = None):
        self.graph = graph
        self.ring = ring
        self.terms = {}
        if terms:
            for (alpha, beta), c in terms.items():
                c = ring.normalize(c)
                if c != 0:
                    if alpha.source != beta.source:
                        raise GraphError(f"s({alpha}) != s({beta}) in a spanning term")
                    self.terms[(alpha, beta)] = c

    @classmethod
    def _raw(cls, graph, ring, terms):
        out = cls.__new__(cls)
        out.graph = graph
        out.ring = ring
        out.terms = terms
        return out

    # construction helpers

    @classmethod
    def zero(cls, graph: KGraph, ring: RingSpec) -> KPElement:
        return cls._raw(graph, ring, {})

    @classmethod
    def spanning(cls, graph, ring, alpha: Path, beta: Path, coef=1) -> KPElement:
        """``coef * s_alpha s_{beta*}``; zero when the sources differ."""
        if alpha.source != beta.source:
            return cls.zero(graph, ring)
        return cls(graph, ring, {(alpha, beta): coef})

    # bookkeeping

    def _check(self, other: KPElement):
        if other.graph is not self.graph:
            raise GraphError("elements live over different graphs")
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine elements over {self.ring} and {other.ring}")

    def _coerce_scalar(self, c):
        if isinstance(c, RingElem):
            if c.spec != self.ring:
                raise RingMismatchError(f"scalar from {c.spec} used over {self.ring}")
            return c.value
        if isinstance(c, (int, Fraction)):
            return self.ring.normalize(c)
        raise TypeError(f"cannot use {c!r} as a scalar")

    def sorted_terms(self) -> list:
        """``(alpha, beta, coef)`` in canonical order."""
        return [(a, b, self.terms[(a, b)]) for a, b in sorted(self.terms, key=term_key)]

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def coefficient(self, alpha: Path, beta: Path):
        return self.terms.get((alpha, beta), 0)

    # linear structure

    def __add__(self, other):
        if not isinstance(other, KPElement):
            return NotImplemented
        self._check(other)
        R = self.ring
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = R.add(out.get(key, 0), c)
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v
        return KPElement._raw(self.graph, R, out)

    def __neg__(self):
        R = self.ring
        return KPElement._raw(self.graph, R, {k: R.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, KPElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> KPElement:
        R = self.ring
        c = self._coerce_scalar(c)
        out = {}
        for key, v in self.terms.items():
            w = R.mul(c, v)
            if w != 0:
                out[key] = w
        return KPElement._raw(self.graph, R, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, KPElement):
            return mul(self, other)
        return self.scale(other)

    # structure

    def star(self) -> KPElement:
        return KPElement._raw(self.graph, self.ring,
                              {(b, a): c for (a, b), c in self.terms.items()})

    def grades(self) -> list:
        return sorted({grade_of(a, b) for a, b in self.terms})

    def graded_component(self, n) -> KPElement:
        n = tuple(n)
        if len(n) != self.graph.rank:
            raise GraphError(f"grade {n} has the wrong length for a {self.graph.rank}-graph")
        return KPElement._raw(self.graph, self.ring,
                              {(a, b): c for (a, b), c in self.terms.items() if grade_of(a, b) == n})

    def components(self) -> dict:
        out = {}
        for (a, b), c in self.terms.items():
            out.setdefault(grade_of(a, b), {})[(a, b)] = c
        return {n: KPElement._raw(self.graph, self.ring, t) for n, t in sorted(out.items())}

    def beta_join(self):
        if not self.terms:
            return deg_zero(self.graph.rank)
        return deg_join(*(b.degree for _, b in self.terms))

    def normal_form(self, m=None) -> KPElement:
        """Equal element whose ghost paths all have degree ``m``
        (default: the join of the current ghost degrees)."""
        g, R = self.graph, self.ring
        m = self.beta_join() if m is None else tuple(m)
        out = {}
        for (alpha, beta), c in self.terms.items():
            if not deg_le(beta.degree, m):
                raise GraphError(f"normal form degree {m} is below d({beta}) = {beta.degree}")
            for gam in g.enumerate_paths(beta.source, deg_sub(m, beta.degree)):
                key = (g.compose(alpha, gam), g.compose(beta, gam))
                v = R.add(out.get(key, 0), c)
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
        return KPElement._raw(g, R, out)

    def canonical(self) -> KPElement:
        """Normal form taken separately in each graded component, then
        coarsened while whole extension families share a coefficient.
        Equal elements give identical term dictionaries."""
        out = {}
        for comp in self.components().values():
            out.update(_coarsen(comp.normal_form()).terms)
        return KPElement._raw(self.graph, self.ring, out)

    def is_zero(self) -> bool:
        return all(not comp.normal_form().terms for comp in self.components().values())

    def equals(self, other: KPElement) -> bool:
        self._check(other)
        return (self - other).is_zero()

    def __eq__(self, other):
        if isinstance(other, KPElement):
            return self.equals(other)
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def same_terms(self, other: KPElement) -> bool:
        """Syntactic equality of the stored combinations."""
        return self.terms == other.terms and self.ring == other.ring

    # printing

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"KPElement({self})"


def _lower(a: KPElement, i: int):
    """Rewrite a single-degree normal form at ghost degree ``m - e_i``, or ``None``."""
    g = a.graph
    groups = {}
    for (alpha, beta), c in a.terms.items():
        if alpha.degree[i] == 0 or beta.degree[i] == 0:
            return None
        da = tuple(x - (j == i) for j, x in enumerate(alpha.degree))
        db = tuple(x - (j == i) for j, x in enumerate(beta.degree))
        a1, ga = g.factor(alpha, da)
        b1, gb = g.factor(beta, db)
        if ga != gb:
            return None
        groups.setdefault((a1, b1), {})[ga] = c
    unit = tuple(int(j == i) for j in range(g.rank))
    out = {}
    for (a1, b1), tails in groups.items():
        full = g.enumerate_paths(b1.source, unit)
        coefs = set(tails.values())
        if len(tails) != len(full) or len(coefs) != 1:
            return None
        out[(a1, b1)] = coefs.pop()
    return KPElement._raw(g, a.ring, out)


def _coarsen(a: KPElement) -> KPElement:
    """Greedily lower the ghost degree, lowest coordinate first."""
    progress = True
    while progress and a.terms:
        progress = False
        for i in range(a.graph.rank):
            low = _lower(a, i)
            if low is not None:
                a = low
                progress = True
                break
    return a


def _term_text(alpha: Path, beta: Path) -> str:
    if alpha.is_vertex and beta.is_vertex:
        return f"p[{alpha.range}]"
    parts = []
    if not alpha.is_vertex:
        parts.append(f"s[{alpha}]")
    if not beta.is_vertex:
        parts.append(f"t[{beta}]")
    return "".join(parts)


def format_element(a: KPElement, raw: bool = False) -> str:
    """Canonical text; ``raw`` prints the stored terms instead."""
    chunks = []
    for alpha, beta, c in (a if raw else a.canonical()).sorted_terms():
        body = _term_text(alpha, beta)
        neg = c < 0
        mag = -c if neg else c
        coef = "" if mag == 1 else f"{mag} "
        if not chunks:
            chunks.append(("-" if neg else "") + coef + body)
        else:
            chunks.append((" - " if neg else " + ") + coef + body)
    return "".join(chunks) if chunks else "0"


def mul(a: KPElement, b: KPElement) -> KPElement:
    a._check(b)
    g, R = a.graph, a.ring
    out = {}
    for (alpha, beta), c in a.terms.items():
        for (mu, nu), d in b.terms.items():
            cd = R.mul(c, d)
            if cd == 0:
                continue
            for gam, eta in g.mce(beta, mu):
                key = (g.compose(alpha, gam), g.compose(nu, eta))
                v = R.add(out.get(key, 0), cd)
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
    return KPElement._raw(g, R, out)


def product(*elems: KPElement) -> KPElement:
    out = elems[0]
    for e in elems[1:]:
        out = mul(out, e)
    return out


def p(g: KGraph, ring: RingSpec, v: str, coef=1) -> KPElement:
    w = g.vertex(v)
    return KPElement(g, ring, {(w, w): coef})


def s(g: KGraph, ring: RingSpec, lam: Path | str, coef=1) -> KPElement:
    if isinstance(lam, str):
        lam = g.path(lam)
    return KPElement(g, ring, {(lam, g.vertex(lam.source)): coef})


def t(g: KGraph, ring: RingSpec, lam: Path | str, coef=1) -> KPElement:
    """The ghost generator ``s_{lam*}``."""
    if isinstance(lam, str):
        lam = g.path(lam)
    return KPElement(g, ring, {(g.vertex(lam.source), lam): coef})


def st(g: KGraph, ring: RingSpec, alpha: Path | str, beta: Path | str, coef=1) -> KPElement:
    if isinstance(alpha, str):
        alpha = g.path(alpha)
    if isinstance(beta, str):
        beta = g.path(beta)
    return KPElement.spanning(g, ring, alpha, beta, coef)


def projection(g: KGraph, ring: RingSpec, mu: Path) -> KPElement:
    """``s_mu s_{mu*}``."""
    return KPElement(g, ring, {(mu, mu): 1})


def linear(op: str, a: KPElement, b) -> KPElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown linear operation {op!r}")


def star(a: KPElement) -> KPElement:
    return a.star()


def graded_component(a: KPElement, n) -> KPElement:
    return a.graded_component(n)


def normal_form(a: KPElement, m=None) -> KPElement:
    return a.normal_form(m)


def equals(a: KPElement, b: KPElement) -> bool:
    return a.equals(b)


def sum_elements(elems: Iterable[KPElement], g: KGraph, ring: RingSpec) -> KPElement:
    out = KPElement.zero(g, ring)
    for e in elems:
        out = out + e
    return out
