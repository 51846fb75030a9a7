"""Local grammars: a small textual transducer language and its matcher.

A grammar file holds named graphs::

    // the venue category alone
    graph MAIN {
      q0 -[<N+LieuSport> @SportVenueCategory]-> q1;
      final q1;
    }
    main MAIN;

Arc labels are ``"literal"``, a lexical constraint ``<CAT+flag+...>``,
``<UNK>`` (a word the lexicon does not know), ``#digits(min,max)``,
``:GRAPH`` (subgraph call) and ``~eps``.  Besides categories and dictionary
flags a lexical constraint may hold ``m``/``f``, ``s``/``p``, ``DEF`` or
``INDEF`` (article present or absent) and ``CL=ب`` (required prepositional
proclitic).  Without ``CL=`` the word may carry no proclitic other than the
article.

Matching is longest-match from a start token.  Among derivations of equal
length the first one wins, where derivations are ordered by arc declaration
order, subgraph and multi-token results are tried longest first, and
stopping in a final state comes after every outgoing arc.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .lexicon import CATEGORIES, FLAGS, GENDERS, NUMBERS, satisfies

CAPTURE_TAGS = (
    "SportVenue", "SportVenueCategory", "Ethnonym", "Toponym", "Adjective",
    "Pragmonym", "CommonNoun", "Function", "CatGeo", "Demonym", "Date",
    "DateNum", "Month",
)


class GrammarError(Exception):
    pass


class GrammarSyntaxError(GrammarError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UndefinedSubgraph(GrammarError):
    def __init__(self, name, caller=None):
        where = f" (called from {caller})" if caller else ""
        super().__init__(f"undefined subgraph {name!r}{where}")
        self.name = name


class NoFinalState(GrammarError):
    def __init__(self, graph, reason="no final state"):
        super().__init__(f"graph {graph}: {reason}")
        self.graph = graph


class RecursionLimit(GrammarError):
    pass


# -- labels ------------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    category: str | None = None
    flags: frozenset = frozenset()
    gender: str | None = None
    number: str | None = None
    det: bool | None = None
    clitic: str | None = None

    def to_text(self):
        parts = [self.category] if self.category else []
        parts += [f for f in FLAGS if f in self.flags]
        parts += [x for x in (self.gender, self.number) if x]
        if self.det is not None:
            parts.append("DEF" if self.det else "INDEF")
        if self.clitic:
            parts.append(f"CL={self.clitic}")
        return "<" + "+".join(parts) + ">"


@dataclass(frozen=True)
class Literal:
    text: str

    def to_text(self):
        return '"' + self.text.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class Lexical:
    constraint: Constraint

    def to_text(self):
        return self.constraint.to_text()


@dataclass(frozen=True)
class Unknown:
    def to_text(self):
        return "<UNK>"


@dataclass(frozen=True)
class DigitRun:
    min: int
    max: int

    def to_text(self):
        return f"#digits({self.min},{self.max})"


@dataclass(frozen=True)
class SubgraphCall:
    name: str

    def to_text(self):
        return f":{self.name}"


@dataclass(frozen=True)
class Epsilon:
    def to_text(self):
        return "~eps"


@dataclass(frozen=True)
class Arc:
    src: str
    dst: str
    label: object
    capture: str | None = None

    def to_text(self):
        cap = f" @{self.capture}" if self.capture else ""
        return f"{self.src} -[{self.label.to_text()}{cap}]-> {self.dst};"


@dataclass(frozen=True)
class Graph:
    name: str
    arcs: tuple
    finals: tuple

    @property
    def initial(self):
        return self.arcs[0].src if self.arcs else self.finals[0]

    @property
    def states(self):
        seen = [self.initial]
        for arc in self.arcs:
            for q in (arc.src, arc.dst):
                if q not in seen:
                    seen.append(q)
        for q in self.finals:
            if q not in seen:
                seen.append(q)
        return tuple(seen)

    @cached_property
    def _by_state(self):
        table = {}
        for a in self.arcs:
            table.setdefault(a.src, []).append(a)
        return table

    def outgoing(self, state):
        return self._by_state.get(state, ())


@dataclass(frozen=True)
class Grammar:
    graphs: dict
    main: str

    def __eq__(self, other):
        return (
            isinstance(other, Grammar)
            and self.main == other.main
            and list(self.graphs.items()) == list(other.graphs.items())
        )

    def __hash__(self):
        return id(self)

    @cached_property
    def checked(self):
        validate(self)
        return True

    @cached_property
    def nullable(self):
        return frozenset(_nullable_graphs(self))

    @cached_property
    def _firsts(self):
        return {name: self._first_labels_of(name) for name in self.graphs}

    @property
    def first_labels(self):
        """Consuming labels that can start a non-empty match of the main graph."""
        return self._firsts[self.main]

    def _first_labels_of(self, name):
        labels = []
        seen = set()
        todo = [(name, self.graphs[name].initial)]
        while todo:
            node = todo.pop()
            if node in seen:
                continue
            seen.add(node)
            g = self.graphs[node[0]]
            for a in g.outgoing(node[1]):
                lab = a.label
                if isinstance(lab, Epsilon):
                    todo.append((g.name, a.dst))
                elif isinstance(lab, SubgraphCall):
                    if lab.name not in self.graphs:
                        continue
                    sub = self.graphs[lab.name]
                    todo.append((sub.name, sub.initial))
                    if sub.name in self.nullable:
                        todo.append((g.name, a.dst))
                elif lab not in labels:
                    labels.append(lab)
        return tuple(labels)


# -- parsing -------------------------------------------------------------------

_LABEL = r'"(?:[^"\\]|\\.)*"|<[^<>]*>|\#digits\(\s*\d+\s*,\s*\d+\s*\)|:\w+|~eps'
_STATEMENT = re.compile(
    r"""\s*(?:
      (?P<graph>graph\s+(?P<gname>\w+)\s*\{)
    | (?P<close>\})
    | (?P<main>main\s+(?P<mname>\w+)\s*;)
    | (?P<final>final\s+(?P<fstates>\w+(?:\s*,\s*\w+)*)\s*;)
    | (?P<arc>(?P<src>\w+)\s*-\[\s*(?P<label>""" + _LABEL + r""")\s*(?:@(?P<cap>\w+))?\s*\]->\s*(?P<dst>\w+)\s*;)
    )""",
    re.VERBOSE,
)
_COMMENT = re.compile(r"//[^\n]*")


def _parse_constraint(body, line):
    if body == "UNK":
        return Unknown()
    parts = [p.strip() for p in body.split("+")] if body else []
    c = dict(category=None, flags=set(), gender=None, number=None, det=None, clitic=None)
    for i, part in enumerate(parts):
        if i == 0 and part in CATEGORIES:
            c["category"] = part
        elif part in FLAGS:
            c["flags"].add(part)
        elif part in GENDERS:
            c["gender"] = part
        elif part in NUMBERS:
            c["number"] = part
        elif part in ("DEF", "INDEF"):
            c["det"] = part == "DEF"
        elif part.startswith("CL="):
            c["clitic"] = part[3:]
        else:
            raise GrammarSyntaxError(line, f"unknown constraint item {part!r}")
    c["flags"] = frozenset(c["flags"])
    return Lexical(Constraint(**c))


def _parse_label(text, line):
    if text.startswith('"'):
        return Literal(re.sub(r"\\(.)", r"\1", text[1:-1]))
    if text.startswith("<"):
        return _parse_constraint(text[1:-1].strip(), line)
    if text.startswith("#digits"):
        lo, hi = (int(x) for x in re.findall(r"\d+", text))
        if lo < 1 or hi < lo:
            raise GrammarSyntaxError(line, f"bad digit range {text}")
        return DigitRun(lo, hi)
    if text.startswith(":"):
        return SubgraphCall(text[1:])
    return Epsilon()


def parse_grammar(text: str) -> Grammar:
    # blank out comments but keep offsets for line numbers
    text = _COMMENT.sub(lambda m: " " * len(m.group()), text)
    graphs: dict[str, Graph] = {}
    main = None
    current = None
    arcs: list = []
    finals: list = []
    pos = 0

    def line_at(i):
        return text.count("\n", 0, i) + 1

    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _STATEMENT.match(text, pos)
        if not m:
            snippet = text[pos:pos + 30].split("\n")[0]
            raise GrammarSyntaxError(line_at(pos), f"cannot parse {snippet!r}")
        line = line_at(m.start())
        if m["graph"]:
            if current is not None:
                raise GrammarSyntaxError(line, "nested graph")
            current = m["gname"]
            if current in graphs:
                raise GrammarSyntaxError(line, f"graph {current} defined twice")
            arcs, finals = [], []
        elif m["close"]:
            if current is None:
                raise GrammarSyntaxError(line, "unbalanced '}'")
            if not finals:
                raise NoFinalState(current)
            graphs[current] = Graph(current, tuple(arcs), tuple(finals))
            current = None
        elif m["main"]:
            if current is not None:
                raise GrammarSyntaxError(line, "main inside graph")
            if main is not None:
                raise GrammarSyntaxError(line, "main given twice")
            main = m["mname"]
        elif m["final"]:
            if current is None:
                raise GrammarSyntaxError(line, "final outside graph")
            for q in re.split(r"\s*,\s*", m["fstates"]):
                if q not in finals:
                    finals.append(q)
        else:
            if current is None:
                raise GrammarSyntaxError(line, "arc outside graph")
            cap = m["cap"]
            if cap is not None and cap not in CAPTURE_TAGS:
                raise GrammarSyntaxError(line, f"unknown capture tag {cap!r}")
            arcs.append(Arc(m["src"], m["dst"], _parse_label(m["label"], line), cap))
        pos = m.end()
    if current is not None:
        raise GrammarSyntaxError(line_at(len(text)), f"graph {current} not closed")
    if main is None:
        raise GrammarSyntaxError(line_at(len(text)), "no 'main' declaration")
    grammar = Grammar(graphs, main)
    validate(grammar)
    return grammar


def serialize_grammar(grammar: Grammar) -> str:
    out = []
    for g in grammar.graphs.values():
        out.append(f"graph {g.name} {{")
        out += [f"  {a.to_text()}" for a in g.arcs]
        out.append(f"  final {', '.join(g.finals)};")
        out.append("}")
    out.append(f"main {grammar.main};")
    return "\n".join(out) + "\n"


def _nullable_graphs(grammar):
    nullable = set()
    changed = True
    while changed:
        changed = False
        for g in grammar.graphs.values():
            if g.name in nullable:
                continue
            reach = {g.initial}
            grew = True
            while grew:
                grew = False
                for a in g.arcs:
                    if a.src in reach and a.dst not in reach:
                        lab = a.label
                        if isinstance(lab, Epsilon) or (
                            isinstance(lab, SubgraphCall) and lab.name in nullable
                        ):
                            reach.add(a.dst)
                            grew = True
            if reach.intersection(g.finals):
                nullable.add(g.name)
                changed = True
    return nullable


def validate(grammar: Grammar) -> None:
    if grammar.main not in grammar.graphs:
        raise UndefinedSubgraph(grammar.main)
    for g in grammar.graphs.values():
        for a in g.arcs:
            if isinstance(a.label, SubgraphCall) and a.label.name not in grammar.graphs:
                raise UndefinedSubgraph(a.label.name, g.name)
        reachable = {g.initial}
        grew = True
        while grew:
            grew = False
            for a in g.arcs:
                if a.src in reachable and a.dst not in reachable:
                    reachable.add(a.dst)
                    grew = True
        unreachable = [q for q in g.finals if q not in reachable]
        if unreachable:
            raise NoFinalState(g.name, f"unreachable final state(s) {unreachable}")

    # cycles that consume no input
    nullable = _nullable_graphs(grammar)
    edges: dict = {}
    for g in grammar.graphs.values():
        for a in g.arcs:
            node = (g.name, a.src)
            if isinstance(a.label, Epsilon):
                edges.setdefault(node, []).append((g.name, a.dst))
            elif isinstance(a.label, SubgraphCall):
                sub = grammar.graphs[a.label.name]
                edges.setdefault(node, []).append((sub.name, sub.initial))
                if sub.name in nullable:
                    edges.setdefault(node, []).append((g.name, a.dst))
    color: dict = {}

    def visit(node):
        color[node] = 1
        for nxt in edges.get(node, ()):
            c = color.get(nxt, 0)
            if c == 1:
                raise RecursionLimit(f"cycle consuming no input through {nxt[0]}:{nxt[1]}")
            if c == 0:
                visit(nxt)
        color[node] = 2

    for node in list(edges):
        if color.get(node, 0) == 0:
            visit(node)


# -- matching ------------------------------------------------------------------


@dataclass(frozen=True)
class Analysis:
    """One reading of the token(s) starting at a position."""

    entry: object
    features: object
    proclitics: tuple = ()
    length: int = 1

    @property
    def determined(self):
        return "ال" in self.proclitics


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str = "word"  # word | number | punct
    analyses: tuple = ()
    start: int = 0
    end: int = 0
    norm: str | None = None

    @property
    def text(self):
        return self.norm if self.norm is not None else self.surface

    @property
    def unknown(self):
        return self.kind == "word" and not self.analyses


@dataclass(frozen=True)
class Capture:
    tag: str
    start: int
    end: int
    analyses: tuple = ()
    children: tuple = ()


@dataclass(frozen=True)
class MatchResult:
    start: int
    end: int
    captures: tuple
    char_span: tuple | None = field(default=None, compare=False)


def analysis_matches(analysis: Analysis, c: Constraint) -> bool:
    if not satisfies((analysis.entry, analysis.features), c):
        return False
    extra = tuple(p for p in analysis.proclitics if p != "ال")
    if c.clitic is None:
        if extra:
            return False
    elif extra != (c.clitic,):
        return False
    det = analysis.determined
    if c.det is not None and det != c.det:
        return False
    feats = analysis.features
    if det and "PR" in feats.flags and "DetOpt" not in feats.flags:
        return False
    return True


class _Scanner:
    """Memoized matcher over one token stream.

    ``memo`` maps (graph, state, pos) to {end: captures of the first
    derivation reaching that end}.  Lexical tests are cached per distinct
    analyses tuple, which tokenization shares between equal words.
    """

    def __init__(self, grammar, tokens):
        grammar.checked  # raises on invalid grammars, once per grammar
        self.grammar = grammar
        self.tokens = tokens
        self.n = len(tokens)
        self.memo: dict = {}
        self.firsts: dict = {}
        self.lexical: dict = {}

    def lexical_hits(self, analyses, constraint, pos):
        key = (id(analyses), id(constraint))
        hit = self.lexical.get(key)
        if hit is None:
            by_length: dict = {}
            for a in analyses:
                if analysis_matches(a, constraint):
                    by_length.setdefault(a.length, []).append(a)
            hit = self.lexical[key] = [(k, tuple(by_length[k])) for k in sorted(by_length, reverse=True)]
        return [(pos + k, an) for k, an in hit if pos + k <= self.n]

    def may_enter(self, name, pos):
        """False when no match of graph ``name`` can start on token ``pos``."""
        if pos >= self.n:
            return False
        tok = self.tokens[pos]
        # the answer depends only on the token's text, kind and (shared) analyses
        key = (name, tok.text, tok.kind, id(tok.analyses))
        ok = self.firsts.get(key)
        if ok is None:
            ok = self.firsts[key] = _can_start(self.grammar._firsts[name], tok)
        return ok

    def step(self, arc, pos):
        """(end, captures) alternatives for traversing one arc from ``pos``."""
        label = arc.label
        kind = type(label)
        if kind is Lexical:
            if pos >= self.n:
                return ()
            hits = self.lexical_hits(self.tokens[pos].analyses, label.constraint, pos)
            if arc.capture:
                return [(e, (Capture(arc.capture, pos, e, an, ()),)) for e, an in hits]
            return [(e, ()) for e, _ in hits]
        if kind is SubgraphCall:
            name = label.name
            if name not in self.grammar.nullable and not self.may_enter(name, pos):
                return ()
            sub = self.grammar.graphs[name]
            results = self.run(sub, sub.initial, pos)
            ends = sorted(results, reverse=True)
            if arc.capture:
                return [(e, (Capture(arc.capture, pos, e, (), results[e]),)) for e in ends]
            return [(e, results[e]) for e in ends]
        if kind is Epsilon:
            return ((pos, ()),)
        if pos >= self.n:
            return ()
        tok = self.tokens[pos]
        if kind is Literal:
            ok = tok.text == label.text
        elif kind is Unknown:
            ok = tok.unknown
        elif kind is DigitRun:
            ok = tok.kind == "number" and label.min <= len(tok.text) <= label.max
        else:
            raise GrammarError(f"unknown label {label!r}")
        if not ok:
            return ()
        if arc.capture:
            return ((pos + 1, (Capture(arc.capture, pos, pos + 1, (), ()),)),)
        return ((pos + 1, ()),)

    def run(self, graph, state, pos):
        """{end: captures} of the first derivation from ``state`` ending at each end.

        Termination relies on :func:`validate` having rejected cycles that
        consume no input.
        """
        key = (graph.name, state, pos)
        memo = self.memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        results: dict = {}
        for arc in graph.outgoing(state):
            for end, caps in self.step(arc, pos):
                cont = self.run(graph, arc.dst, end)
                for end2, caps2 in cont.items():
                    if end2 not in results:
                        results[end2] = caps + caps2
        if state in graph.finals and pos not in results:
            results[pos] = ()
        memo[key] = results
        return results

    def apply(self, start):
        grammar = self.grammar
        main = grammar.graphs[grammar.main]
        results = self.run(main, main.initial, start)
        if not results:
            return None
        end = max(results)
        char_span = None
        tokens = self.tokens
        if end > start and hasattr(tokens[start], "start"):
            char_span = (tokens[start].start, tokens[end - 1].end)
        return MatchResult(start, end, results[end], char_span)


def apply(grammar: Grammar, tokens, start: int = 0) -> MatchResult | None:
    """Longest match of the main graph beginning at token ``start``."""
    return _Scanner(grammar, tokens).apply(start)


def _can_start(labels, tok):
    for label in labels:
        if isinstance(label, Literal):
            if tok.text == label.text:
                return True
        elif isinstance(label, Lexical):
            if any(analysis_matches(a, label.constraint) for a in tok.analyses):
                return True
        elif isinstance(label, Unknown):
            if tok.unknown:
                return True
        elif isinstance(label, DigitRun):
            if tok.kind == "number" and label.min <= len(tok.text) <= label.max:
                return True
        else:
            return True
    return False


def scan(grammar: Grammar, tokens) -> list[MatchResult]:
    """Leftmost-longest, non-overlapping matches over the whole stream."""
    scanner = _Scanner(grammar, tokens)
    matches = []
    i = 0
    n = len(tokens)
    while i < n:
        if not scanner.may_enter(grammar.main, i):
            i += 1
            continue
        m = scanner.apply(i)
        if m is not None and m.end > i:
            matches.append(m)
            i = m.end
            # entries before the new start are dead; keeping the rest is only a speedup
            scanner.memo = {}
        else:
            i += 1
    return matches
