"""Text formats: graph files, element expressions, family files.

Graph file::

    kgraph k=2
    ring Q
    vertex v
    edge a v v 1          # edge <name> <range> <source> <color>
    square a.b = b.a      # e.f = f'.e' with color(e) < color(f)

Element expressions are sums of terms; a term is an optional scalar, an
optional ``*``, then juxtaposed generators ``p[v]``, ``s[mu]`` and ``t[mu]``
(the ghost ``s_{mu*}``), with ``mu`` a dot-separated edge list.
"""
from __future__ import annotations

import re
import warnings

from .errors import GraphError, ParseError, ScalarParseError
from .kgraph import Edge, KGraph, ValidationReport
from .kpalg import KPElement, mul
from .ring import RingSpec


class InvalidGraphError(GraphError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(str(report))


class SourceMismatchWarning(UserWarning):
    """``s[mu] t[nu]`` with ``s(mu) != s(nu)``; the product is zero."""


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph_file(text: str, name: str | None = None, validate: bool = True):
    """Returns ``(KGraph, RingSpec)``."""
    rank = None
    ring = None
    vertices = []
    edges = []
    edge_lines = {}
    squares = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "kgraph":
            m = re.fullmatch(r"kgraph\s+k\s*=\s*(\d+)", line)
            if not m:
                raise ParseError("expected 'kgraph k=<int>'", lineno)
            if rank is not None:
                raise ParseError("repeated kgraph header", lineno)
            rank = int(m.group(1))
        elif rank is None:
            raise ParseError("file must start with 'kgraph k=<int>'", lineno)
        elif head == "ring":
            if len(words) != 2:
                raise ParseError("expected 'ring <Z|Q|Z/n>'", lineno)
            try:
                ring = RingSpec.from_name(words[1])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif head == "vertex":
            if len(words) != 2 or not re.fullmatch(_NAME, words[1]):
                raise ParseError("expected 'vertex <name>'", lineno)
            if words[1] in vertices:
                raise ParseError(f"duplicate vertex {words[1]!r}", lineno)
            vertices.append(words[1])
        elif head == "edge":
            if len(words) != 5 or not re.fullmatch(_NAME, words[1]) or not words[4].isdigit():
                raise ParseError("expected 'edge <name> <range> <source> <color>'", lineno)
            ename = words[1]
            if ename in edge_lines:
                raise ParseError(f"duplicate edge {ename!r} (first defined on line {edge_lines[ename]})", lineno)
            for end in words[2:4]:
                if end not in vertices:
                    raise ParseError(f"unknown vertex {end!r}", lineno)
            color = int(words[4])
            if not 1 <= color <= rank:
                raise ParseError(f"color {color} outside 1..{rank}", lineno)
            edge_lines[ename] = lineno
            edges.append(Edge(ename, words[2], words[3], color))
        elif head == "square":
            m = re.fullmatch(rf"square\s+({_NAME})\.({_NAME})\s*=\s*({_NAME})\.({_NAME})", line)
            if not m:
                raise ParseError("expected 'square <e>.<f> = <f'>.<e'>'", lineno)
            e, f, f2, e2 = m.groups()
            for n in (e, f, f2, e2):
                if n not in edge_lines:
                    raise ParseError(f"unknown edge {n!r}", lineno)
            if (e, f) in squares:
                raise ParseError(f"duplicate square for ({e},{f})", lineno)
            squares[(e, f)] = (f2, e2)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if rank is None:
        raise ParseError("missing 'kgraph k=<int>' header")
    g = KGraph(rank, vertices, edges, squares, name=name)
    if validate:
        rep = g.validate()
        if not rep.valid:
            raise InvalidGraphError(rep)
    return g, (ring or RingSpec.from_name("Z"))


def format_graph(g: KGraph, ring: RingSpec) -> str:
    lines = [f"kgraph k={g.rank}", f"ring {ring.name}"]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.name} {e.range} {e.source} {e.color}" for e in g.edges.values()]
    lines += [f"square {e}.{f} = {f2}.{e2}" for (e, f), (f2, e2) in g.squares.items()]
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<gen>[pst]\[[^\]]*\])
  | (?P<op>[+\-*])
""", re.VERBOSE)


def _tokenize(text: str):
    text = text.replace("−", "-")
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos + 1))
        pos = m.end()
    return out


def _generator(tok: str, g: KGraph, ring: RingSpec):
    """Returns ``(element, range-side vertex, source-side vertex, kind)``."""
    kind, body = tok[0], tok[2:-1].strip()
    try:
        lam = g.path(body)
    except GraphError as exc:
        raise ParseError(f"in {tok}: {exc}") from None
    if kind == "p":
        if not lam.is_vertex:
            raise ParseError(f"p[...] needs a vertex, got {tok}")
        return KPElement(g, ring, {(lam, lam): 1}), lam.range, lam.range, kind
    if kind == "s":
        return KPElement(g, ring, {(lam, g.vertex(lam.source)): 1}), lam.range, lam.source, kind
    return KPElement(g, ring, {(g.vertex(lam.source), lam): 1}), lam.source, lam.range, kind


def parse_element(text: str, g: KGraph, ring: RingSpec) -> KPElement:
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    if len(toks) == 1 and toks[0][1] == "0":
        return KPElement.zero(g, ring)
    total = KPElement.zero(g, ring)
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "op" and toks[i][1] in "+-":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at column {toks[i][2]}")
        first = False
        coef = ring.one
        if i < len(toks) and toks[i][0] == "num":
            try:
                coef = ring.parse(toks[i][1])
            except ScalarParseError as exc:
                raise ParseError(str(exc)) from None
            i += 1
            if i < len(toks) and toks[i] == ("op", "*", toks[i][2]):
                i += 1
        gens = []
        while i < len(toks) and toks[i][0] == "gen":
            gens.append(toks[i][1])
            i += 1
        if not gens:
            col = toks[i][2] if i < len(toks) else len(text)
            raise ParseError(f"expected a generator at column {col}")
        term = None
        prev_end = prev_kind = prev_tok = None
        for tok in gens:
            elem, rng, src, kind = _generator(tok, g, ring)
            if term is None:
                term = elem
            else:
                if prev_end != rng:
                    if prev_kind == "s" and kind == "t":
                        warnings.warn(f"{prev_tok}{tok}: sources differ, the product is 0",
                                      SourceMismatchWarning, stacklevel=2)
                    else:
                        raise ParseError(f"{prev_tok} and {tok} are not composable")
                term = mul(term, elem)
            prev_end, prev_kind, prev_tok = src, kind, tok
        c = ring.normalize(coef * sign)
        total = total + term.scale(c)
    return total


def format_element(a: KPElement) -> str:
    return str(a)


def parse_family(text: str, g: KGraph):
    """Family file: ``dim N``, ``ring R``, then ``matrix <gen>`` blocks of N rows."""
    from .uniqueness import MatrixKPFamily

    dim = None
    ring = None
    mats = {}
    cur = None
    rows = []
    cur_line = None

    def finish():
        if cur is None:
            return
        if len(rows) != dim:
            raise ParseError(f"matrix {cur} has {len(rows)} rows, expected {dim}", cur_line)
        mats[cur] = rows

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        words = line.split()
        if words[0] == "dim":
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("expected 'dim <N>'", lineno)
            dim = int(words[1])
        elif words[0] == "ring":
            try:
                ring = RingSpec.from_name(words[1])
            except (ValueError, IndexError):
                raise ParseError("expected 'ring <Z|Q|Z/n>'", lineno) from None
        elif words[0] == "matrix":
            if dim is None or ring is None:
                raise ParseError("'dim' and 'ring' must come before matrices", lineno)
            finish()
            m = re.fullmatch(r"([pst])\[(" + _NAME + r")\]", "".join(words[1:]))
            if not m:
                raise ParseError("expected 'matrix p[v]', 'matrix s[e]' or 'matrix t[e]'", lineno)
            kind, nm = m.groups()
            if kind == "p" and nm not in g.vertices:
                raise ParseError(f"unknown vertex {nm!r}", lineno)
            if kind in "st" and nm not in g.edges:
                raise ParseError(f"unknown edge {nm!r}", lineno)
            cur = f"{kind}[{nm}]"
            if cur in mats:
                raise ParseError(f"duplicate matrix {cur}", lineno)
            rows = []
            cur_line = lineno
        else:
            if cur is None:
                raise ParseError(f"unexpected line {line!r}", lineno)
            if len(words) != dim:
                raise ParseError(f"row has {len(words)} entries, expected {dim}", lineno)
            try:
                rows.append(tuple(ring.parse(w) for w in words))
            except ScalarParseError as exc:
                raise ParseError(str(exc), lineno) from None
            if len(rows) > dim:
                raise ParseError(f"too many rows for {cur}", lineno)
    finish()
    if dim is None or ring is None:
        raise ParseError("family file needs 'dim' and 'ring'")
    vertex_m = {}
    edge_m = {}
    ghost_m = {}
    for v in g.vertices:
        key = f"p[{v}]"
        if key not in mats:
            raise ParseError(f"missing matrix {key}")
        vertex_m[v] = mats[key]
    for e in g.edges:
        for kind, target in (("s", edge_m), ("t", ghost_m)):
            key = f"{kind}[{e}]"
            if key not in mats:
                raise ParseError(f"missing matrix {key}")
            target[e] = mats[key]
    return MatrixKPFamily(ring, dim, vertex_m, edge_m, ghost_m)


def format_family(fam) -> str:
    lines = [f"dim {fam.dim}", f"ring {fam.ring.name}"]

    def block(label, m):
        lines.append(f"matrix {label}")
        lines.extend(" ".join(str(x) for x in row) for row in m)

    for v, m in fam.vertex.items():
        block(f"p[{v}]", m)
    for e in fam.edge:
        block(f"s[{e}]", fam.edge[e])
        block(f"t[{e}]", fam.ghost[e])
    return "\n".join(lines) + "\n"
