"""Finite k-graphs presented by a colored skeleton plus factorization squares.

A path is stored in its color-blocked form: all color-1 edges first, then
color 2, and so on. Unique factorization makes this form unique, so path
equality is tuple equality. Re-blocking after concatenation is done by
adjacent square swaps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import GraphError

Degree = tuple  # tuple[int, ...] of length k


def deg_zero(k: int) -> Degree:
    return (0,) * k


def deg_unit(k: int, color: int) -> Degree:
    return tuple(1 if i == color - 1 else 0 for i in range(k))


def deg_diag(k: int, t: int) -> Degree:
    return (t,) * k


def deg_add(m: Degree, n: Degree) -> Degree:
    return tuple(a + b for a, b in zip(m, n))


def deg_sub(m: Degree, n: Degree) -> Degree:
    return tuple(a - b for a, b in zip(m, n))


def deg_le(m: Degree, n: Degree) -> bool:
    return all(a <= b for a, b in zip(m, n))


def deg_join(*ds: Degree) -> Degree:
    return tuple(max(c) for c in zip(*ds))


def degrees_up_to(bound: Degree) -> list[Degree]:
    """All n with 0 <= n <= bound, ordered by total size then lexicographically."""
    ds = list(product(*(range(b + 1) for b in bound)))
    ds.sort(key=lambda d: (sum(d), d))
    return ds


@dataclass(frozen=True)
class Edge:
    name: str
    range: str
    source: str
    color: int


@dataclass(frozen=True)
class Path:
    range: str
    source: str
    degree: Degree
    edges: tuple = ()

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def sort_key(self):
        return (sum(self.degree), self.degree, self.edges, self.range)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return ".".join(self.edges) if self.edges else self.range

    def __repr__(self):
        return f"Path({self})"


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)
    summary: str = ""

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return f"valid ({self.summary})"
        return "invalid: " + "; ".join(self.problems)


class KGraph:
    """A finite k-graph presentation.

    ``squares`` maps a composable pair ``(e, f)`` with ``color(e) < color(f)``
    to the pair ``(f2, e2)`` such that ``e f = f2 e2``.
    """

    def __init__(self, rank: int, vertices: Iterable[str], edges: Iterable[Edge],
                 squares: dict | None = None, name: str | None = None):
        self.rank = rank
        self.vertices = tuple(vertices)
        self.edges = {e.name: e for e in edges}
        self.squares = dict(squares or {})
        self.name = name
        self._report = None
        self._swap = {}
        for (e, f), (f2, e2) in self.squares.items():
            self._swap[(e, f)] = (f2, e2)
            self._swap.setdefault((f2, e2), (e, f))
        self._by_range = {}
        self._by_source = {}
        for e in sorted(self.edges.values(), key=lambda e: e.name):
            self._by_range.setdefault((e.range, e.color), []).append(e)
            self._by_source.setdefault((e.source, e.color), []).append(e)
        self._compose_cache = {}
        self._enum_cache = {}
        self._mce_cache = {}
        self._factor_cache = {}

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<KGraph{label} k={self.rank} |V|={len(self.vertices)} |E|={len(self.edges)}>"

    # validation

    def validate(self) -> ValidationReport:
        if self._report is None:
            self._report = self._validate()
        return self._report

    @property
    def is_valid(self) -> bool:
        return self.validate().valid

    def require_valid(self):
        rep = self.validate()
        if not rep.valid:
            raise GraphError(str(rep))

    def _validate(self) -> ValidationReport:
        k = self.rank
        probs = []
        if k < 1:
            probs.append(f"rank k={k} must be at least 1")
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            probs.append("duplicate vertex names")
        for e in self.edges.values():
            if e.range not in vset or e.source not in vset:
                probs.append(f"edge {e.name} has an unknown endpoint")
            if not 1 <= e.color <= k:
                probs.append(f"edge {e.name} has color {e.color} outside 1..{k}")
            if e.name in vset:
                probs.append(f"edge {e.name} shares its name with a vertex")
        if probs:
            return ValidationReport(probs)

        col = {name: e.color for name, e in self.edges.items()}
        E = self.edges
        for v in self.vertices:
            for c in range(1, k + 1):
                if not self._by_range.get((v, c)):
                    probs.append(f"vertex {v} has no color-{c} edge into it (source)")

        for (e, f), (f2, e2) in sorted(self.squares.items()):
            names = (e, f, f2, e2)
            if any(n not in E for n in names):
                probs.append(f"square {e}.{f} = {f2}.{e2} mentions an unknown edge")
                continue
            if not col[e] < col[f]:
                probs.append(f"square {e}.{f}: left side must go from lower to higher color")
            if col[f2] != col[f] or col[e2] != col[e]:
                probs.append(f"square {e}.{f} = {f2}.{e2}: colors do not match")
            if E[e].source != E[f].range:
                probs.append(f"square {e}.{f}: {e}.{f} is not composable")
            if E[f2].source != E[e2].range:
                probs.append(f"square {e}.{f} = {f2}.{e2}: {f2}.{e2} is not composable")
            if E[f2].range != E[e].range or E[e2].source != E[f].source:
                probs.append(f"square {e}.{f} = {f2}.{e2}: range/source mismatch")

        # bijection between ij-paths and ji-paths for every i < j
        images = {}
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                for e in E.values():
                    if e.color != i:
                        continue
                    for f in self._by_range.get((e.source, j), []):
                        if (e.name, f.name) not in self.squares:
                            probs.append(f"missing square for ({e.name},{f.name})")
                for f2 in E.values():
                    if f2.color != j:
                        continue
                    for e2 in self._by_range.get((f2.source, i), []):
                        images[(f2.name, e2.name)] = 0
        for key, img in self.squares.items():
            if img in images:
                images[img] += 1
        for img, count in sorted(images.items()):
            if count == 0:
                probs.append(f"non-bijective squares: {img[0]}.{img[1]} is not the image of any square")
            elif count > 1:
                probs.append(f"non-bijective squares: {img[0]}.{img[1]} is the image of {count} squares")

        if k >= 3 and not probs:
            probs.extend(self._cube_failures())

        summary = (f"k={k}, {_plural(len(self.vertices), 'vertex', 'vertices')}, "
                   f"{_plural(len(E), 'edge')}, {_plural(len(self.squares), 'square')}")
        return ValidationReport(probs, summary)

    def _cube_failures(self) -> list:
        col = {name: e.color for name, e in self.edges.items()}
        out = []
        for x in self.edges.values():
            for y in self.edges.values():
                if not (x.color > y.color and y.range == x.source):
                    continue
                for z in self._iter_by_range(y.source):
                    if not y.color > z.color:
                        continue
                    w = [x.name, y.name, z.name]
                    a = list(w)
                    for p in (0, 1, 0):
                        a[p], a[p + 1] = self._swap[(a[p], a[p + 1])]
                    b = list(w)
                    for p in (1, 0, 1):
                        b[p], b[p + 1] = self._swap[(b[p], b[p + 1])]
                    if a != b:
                        out.append(f"cube condition fails for {'.'.join(w)}: "
                                   f"{'.'.join(a)} vs {'.'.join(b)}")
                    assert [col[n] for n in a] == sorted(col[n] for n in w)
        return out

    def _iter_by_range(self, v):
        for c in range(1, self.rank + 1):
            yield from self._by_range.get((v, c), [])

    # basic constructors

    def color(self, edge: str) -> int:
        return self.edges[edge].color

    def vertex(self, v: str) -> Path:
        if v not in self.vertices:
            raise GraphError(f"unknown vertex {v!r}")
        return Path(v, v, deg_zero(self.rank))

    def edge_path(self, name: str) -> Path:
        if name not in self.edges:
            raise GraphError(f"unknown edge {name!r}")
        e = self.edges[name]
        return Path(e.range, e.source, deg_unit(self.rank, e.color), (name,))

    def path(self, names: Sequence[str] | str) -> Path:
        """Compose edges (or a single vertex) given in any composable order.

        Accepts a sequence of names or a dot-separated string."""
        if isinstance(names, str):
            names = [n for n in names.split(".") if n]
        if len(names) == 1 and names[0] in self.vertices:
            return self.vertex(names[0])
        if not names:
            raise GraphError("empty path")
        out = self.edge_path(names[0])
        for n in names[1:]:
            out = self.compose(out, self.edge_path(n))
        return out

    def _from_word(self, word) -> Path:
        E = self.edges
        deg = [0] * self.rank
        for n in word:
            deg[E[n].color - 1] += 1
        return Path(E[word[0]].range, E[word[-1]].source, tuple(deg), tuple(word))

    def _reorder(self, word, target) -> list:
        """Rewrite ``word`` into the equal edge word whose colors read ``target``."""
        word = list(word)
        for p in range(len(word)):
            want = target[p]
            q = p
            while self.edges[word[q]].color != want:
                q += 1
            while q > p:
                try:
                    word[q - 1], word[q] = self._swap[(word[q - 1], word[q])]
                except KeyError:
                    raise GraphError(f"no square relating {word[q - 1]}.{word[q]}") from None
                q -= 1
        return word

    # path algebra

    def compose(self, lam: Path, mu: Path) -> Path:
        if lam.source != mu.range:
            raise GraphError(f"cannot compose {lam} with {mu}: s({lam})={lam.source} != r({mu})={mu.range}")
        if mu.is_vertex:
            return lam
        if lam.is_vertex:
            return mu
        key = (lam.edges, mu.edges)
        hit = self._compose_cache.get(key)
        if hit is None:
            word = lam.edges + mu.edges
            target = sorted(self.edges[n].color for n in word)
            hit = self._from_word(self._reorder(word, target))
            self._compose_cache[key] = hit
        return hit

    def compose_all(self, *paths: Path) -> Path:
        out = paths[0]
        for p in paths[1:]:
            out = self.compose(out, p)
        return out

    def factor(self, lam: Path, m: Degree) -> tuple:
        """Unique ``(mu, nu)`` with ``d(mu) = m`` and ``lam = mu nu``."""
        m = tuple(m)
        if len(m) != self.rank or not deg_le(m, lam.degree) or min(m) < 0:
            raise GraphError(f"degree {m} is not <= d({lam}) = {lam.degree}")
        if not any(m):
            return self.vertex(lam.range), lam
        if m == lam.degree:
            return lam, self.vertex(lam.source)
        key = (lam.edges, m)
        hit = self._factor_cache.get(key)
        if hit is None:
            rest = deg_sub(lam.degree, m)
            target = [c for c in range(1, self.rank + 1) for _ in range(m[c - 1])]
            cut = len(target)
            target += [c for c in range(1, self.rank + 1) for _ in range(rest[c - 1])]
            word = self._reorder(lam.edges, target)
            hit = (self._from_word(word[:cut]), self._from_word(word[cut:]))
            self._factor_cache[key] = hit
        return hit

    def segment(self, lam: Path, m: Degree, n: Degree) -> Path:
        """The subpath ``lam(m, n)``."""
        head, _ = self.factor(lam, n)
        return self.factor(head, m)[1]

    def enumerate_paths(self, v: str, n: Degree, direction: str = "range") -> list:
        """All paths of degree ``n`` with range ``v`` (or source ``v``), sorted."""
        if v not in self.vertices:
            raise GraphError(f"unknown vertex {v!r}")
        n = tuple(n)
        if len(n) != self.rank or min(n) < 0:
            raise GraphError(f"bad degree {n} for a {self.rank}-graph")
        if direction not in ("range", "source"):
            raise ValueError(f"direction must be 'range' or 'source', not {direction!r}")
        key = (v, n, direction)
        hit = self._enum_cache.get(key)
        if hit is not None:
            return hit
        if direction == "range":
            partial = [((), v)]
            for c in range(1, self.rank + 1):
                for _ in range(n[c - 1]):
                    partial = [(w + (e.name,), e.source)
                               for w, end in partial for e in self._by_range.get((end, c), [])]
        else:
            partial = [((), v)]
            for c in range(self.rank, 0, -1):
                for _ in range(n[c - 1]):
                    partial = [((e.name,) + w, e.range)
                               for w, end in partial for e in self._by_source.get((end, c), [])]
        if any(n):
            out = sorted(self._from_word(w) for w, _ in partial)
        else:
            out = [self.vertex(v)]
        self._enum_cache[key] = out
        return out

    def paths_up_to(self, bound: Degree, vertices: Iterable[str] | None = None) -> list:
        """Every path of degree <= ``bound`` (with range among ``vertices``)."""
        vs = self.vertices if vertices is None else tuple(vertices)
        out = []
        for n in degrees_up_to(tuple(bound)):
            for v in vs:
                out.extend(self.enumerate_paths(v, n))
        out.sort()
        return out

    def extensions(self, lam: Path, n: Degree) -> list:
        """All ``lam gamma`` with ``d(gamma) = n``."""
        return [self.compose(lam, g) for g in self.enumerate_paths(lam.source, n)]

    def mce(self, lam: Path, mu: Path) -> list:
        """Pairs ``(alpha, beta)`` with ``lam alpha = mu beta`` of degree d(lam) v d(mu)."""
        key = (lam, mu)
        hit = self._mce_cache.get(key)
        if hit is not None:
            return hit
        out = []
        if lam.range == mu.range:
            if lam.degree == mu.degree:
                if lam == mu:
                    out = [(self.vertex(lam.source), self.vertex(lam.source))]
            else:
                q = deg_join(lam.degree, mu.degree)
                for alpha in self.enumerate_paths(lam.source, deg_sub(q, lam.degree)):
                    head, beta = self.factor(self.compose(lam, alpha), mu.degree)
                    if head == mu:
                        out.append((alpha, beta))
        self._mce_cache[key] = out
        return out

    def reachable(self, v: str) -> list:
        """Vertices ``s(lam)`` for paths ``lam`` with range ``v``."""
        seen = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for e in self._iter_by_range(w):
                if e.source not in seen:
                    seen.add(e.source)
                    stack.append(e.source)
        return sorted(seen)

    def in_edges(self, v: str, color: int) -> list:
        """Edges ``e`` with ``r(e) = v`` of the given color."""
        return list(self._by_range.get((v, color), []))


def _plural(n, word, plural=None):
    return f"{n} {word if n == 1 else (plural or word + 's')}"


def validate_presentation(g: KGraph) -> ValidationReport:
    return g.validate()


def enumerate_paths(g: KGraph, v: str, n: Degree, direction: str = "range") -> list:
    g.require_valid()
    return g.enumerate_paths(v, n, direction)


def compose(g: KGraph, lam: Path, mu: Path) -> Path:
    return g.compose(lam, mu)


def factor(g: KGraph, lam: Path, m: Degree) -> tuple:
    return g.factor(lam, m)


def mce(g: KGraph, lam: Path, mu: Path) -> list:
    return g.mce(lam, mu)
