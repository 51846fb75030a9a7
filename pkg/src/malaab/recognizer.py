"""Tokenization and component-tree construction for venue names."""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from . import grammar as gr
from .lexicon import Lexicon, normalize
from .morphology import ARTICLE, clitic_sequences, segment

__all__ = [
    "Document", "ComponentTree", "tokenize", "recognize", "to_xml", "from_xml",
    "to_json", "normalize",
]

_TOKEN = re.compile(
    r"(?P<num>\d+)"
    r"|(?P<word>(?:[^\W\d_]|[\u0610-\u061a\u064b-\u065f\u0670\u0640])+)"
    r"|(?P<punct>\S)"
)

NODE_TYPES = (
    "SportVenue", "SportVenueCategory", "Ethnonym", "Toponym", "Adjective",
    "Pragmonym", "CommonNoun", "Function", "Demonym", "Date", "DateNum",
    "Month", "CatGeo",
)


@dataclass
class Document:
    id: str
    text: str
    tokens: list

    def span_text(self, start_tok, end_tok):
        return self.text[self.tokens[start_tok].start:self.tokens[end_tok - 1].end]


@dataclass
class ComponentTree:
    type: str
    arabic: str
    span: tuple  # character offsets in the source text
    token_span: tuple
    lex: tuple | None = None  # (LexEntry, FeatureSet)
    children: list = field(default_factory=list)
    kind: str | None = None
    french: str | None = None
    after_hyphen: bool = False
    ambiguous: str | None = None
    untranslated: bool = False

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def shape(self):
        """(type, children shapes), the part of a tree XML preserves."""
        if self.type in ("SportVenue",):
            return (self.type, tuple(c.shape() for c in self.children))
        return (self.type, ())


def _word_analyses(norm, lexicon):
    out = []
    for seg in segment(norm, lexicon):
        for entry, feats in seg.stem_analyses:
            out.append(gr.Analysis(entry, feats, seg.proclitics, 1))
    return out


_CLITIC_PREFIXES = sorted({"".join(s) for s in clitic_sequences()}, key=len)


def _compound_heads(word, lexicon):
    """(prefix, candidates) for every clitic split of ``word`` that begins a multiword entry."""
    out = []
    for prefix in _CLITIC_PREFIXES:
        if not word.startswith(prefix) or len(word) == len(prefix):
            continue
        candidates = lexicon.multiword(word[len(prefix):])
        if candidates:
            out.append((prefix, candidates))
    return tuple(out)


def _compound_analyses(tokens, i, heads):
    """Multiword dictionary entries starting at token ``i``."""
    out = []
    for prefix, candidates in heads:
        for words, entry, feats in candidates:
            n = len(words)
            following = tokens[i + 1:i + n]
            if len(following) == n - 1 and all(
                t[0] == "word" and t[1] == w for t, w in zip(following, words[1:])
            ):
                procl = _split_prefix(prefix)
                out.append(gr.Analysis(entry, feats, procl, n))
    return out


def _split_prefix(prefix):
    for seq in clitic_sequences():
        if "".join(seq) == prefix:
            return seq
    raise ValueError(prefix)


def tokenize(text: str, lexicon: Lexicon, doc_id: str = "doc") -> Document:
    raw = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        kind = {"num": "number"}.get(kind, kind)
        surface = m.group()
        norm = normalize(surface) if kind == "word" else surface
        raw.append((kind, norm, surface, m.start(), m.end()))
    tokens = []
    cache: dict = {}
    for i, (kind, norm, surface, start, end) in enumerate(raw):
        analyses = ()
        if kind == "word":
            hit = cache.get(norm)
            if hit is None:
                hit = cache[norm] = (tuple(_word_analyses(norm, lexicon)), _compound_heads(norm, lexicon))
            analyses, heads = hit
            if heads:
                compounds = _compound_analyses(raw, i, heads)
                analyses = tuple(sorted(compounds, key=lambda a: -a.length)) + analyses
        tokens.append(gr.Token(surface, kind, analyses, start, end, norm))
    return Document(doc_id, text, tokens)


# -- trees ---------------------------------------------------------------------

_PREFERRED_KIND = ("Ville", "Pays", "Region")


def _resolve(analyses):
    """Pick one analysis; a city reading wins over a country homograph."""
    if not analyses:
        return None
    for kind in _PREFERRED_KIND:
        for a in analyses:
            if kind in a.features.flags:
                return a
    return analyses[0]


def _strip_clitics(surface, proclitics):
    """Drop conjunction/preposition clitics, keep the article."""
    skip = sum(len(p) for p in proclitics if p != ARTICLE)
    i = 0
    while skip and i < len(surface):
        if normalize(surface[i]):
            skip -= 1
        i += 1
    return surface[i:]


def _build(cap, doc):
    toks = doc.tokens
    start, end = toks[cap.start].start, toks[cap.end - 1].end
    children = [_build(c, doc) for c in cap.children]
    node = ComponentTree(cap.tag, doc.text[start:end], (start, end), (cap.start, cap.end), children=children)
    if cap.analyses:
        a = _resolve(cap.analyses)
        node.lex = (a.entry, a.features)
        node.arabic = _strip_clitics(node.arabic, a.proclitics)
        node.span = (end - len(node.arabic), end)
        if node.type == "Toponym":
            node.kind = next((k for k in _PREFERRED_KIND if k in a.features.flags), None)
    elif children and cap.tag != "SportVenue":
        first = children[0]
        node.span = (first.span[0], end)
        node.arabic = doc.text[node.span[0]:end]
    if cap.start > 0 and toks[cap.start - 1].text == "-":
        node.after_hyphen = True
    return node


def _flag_club(tree):
    types = {c.type for c in tree.children}
    if "Demonym" in types and types <= {"SportVenueCategory", "Demonym", "Adjective"}:
        tree.ambiguous = "club-candidate"


def recognize(document: Document, grammar: gr.Grammar, lexicon: Lexicon = None) -> list[ComponentTree]:
    trees = []
    for m in gr.scan(grammar, document.tokens):
        root = gr.Capture("SportVenue", m.start, m.end, (), m.captures)
        if len(m.captures) == 1 and m.captures[0].tag == "SportVenue":
            root = m.captures[0]
        tree = _build(root, document)
        tree.span = m.char_span
        tree.arabic = document.text[m.char_span[0]:m.char_span[1]]
        _flag_club(tree)
        trees.append(tree)
    return trees


# -- output ----------------------------------------------------------------------


def _label(node):
    if node.french:
        return f"{node.arabic} = {node.french}"
    return node.arabic


def _xml_lines(node, indent):
    pad = "  " * indent
    el = ET.Element(node.type)
    el.text = _label(node)
    lines = [pad + ET.tostring(el, encoding="unicode")]
    if node.type == "SportVenue":
        lines.append(pad + "<Categories>")
        for c in node.children:
            lines += _xml_lines(c, indent + 1)
        lines.append(pad + "</Categories>")
    return lines


def to_xml(tree: ComponentTree) -> str:
    """Element/Categories pairs as in the typology examples."""
    return "\n".join(_xml_lines(tree, 0)) + "\n"


def to_xml_document(trees) -> str:
    out = ["<Examples>"]
    for i, t in enumerate(trees, 1):
        out.append(f"  <Example{i}>")
        out += ["    " + line for line in to_xml(t).splitlines()]
        out.append(f"  </Example{i}>")
    out.append("</Examples>")
    return "\n".join(out) + "\n"


def from_xml(text: str):
    """Shapes ``(type, children)`` of every top-level element pair in ``text``."""
    root = ET.fromstring(f"<root>{text}</root>")
    return _shapes(list(root))


def _shapes(elements):
    out = []
    i = 0
    while i < len(elements):
        el = elements[i]
        if el.tag == "SportVenue" and i + 1 < len(elements) and elements[i + 1].tag == "Categories":
            out.append((el.tag, tuple(_shapes(list(elements[i + 1])))))
            i += 2
        else:
            out.append((el.tag, ()))
            i += 1
    return out


def to_dict(node: ComponentTree) -> dict:
    d = {
        "type": node.type,
        "kind": node.kind,
        "arabic": node.arabic,
        "french": node.french,
        "children": [to_dict(c) for c in node.children],
    }
    if node.ambiguous:
        d["ambiguous"] = node.ambiguous
    if node.untranslated:
        d["untranslated"] = True
    return d


def to_json(tree: ComponentTree) -> str:
    return json.dumps(to_dict(tree), ensure_ascii=False, sort_keys=False)
