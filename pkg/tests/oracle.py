"""Brute-force reference matcher and a random grammar generator.

The oracle enumerates every accepting derivation explicitly (no memo, no
per-end pruning) in the documented preference order and keeps the first of
maximal length.  Only Literal, Epsilon, Unknown, simple Lexical and
SubgraphCall labels are supported, which is all the generator emits.
"""

import random

from malaab import grammar as gr
from malaab.lexicon import FeatureSet, LexEntry

ALPHABET = "abcde"
# symbol -> flag carried by its single analysis; 'e' is an unknown word
SYMBOL_FLAGS = {"a": "Ville", "b": "Pays", "c": "Perso", "d": "Perso"}
LEX_LABELS = ("Ville", "Pays", "Perso")


def make_tokens(symbols):
    toks = []
    for i, s in enumerate(symbols):
        if s in SYMBOL_FLAGS:
            feats = FeatureSet("N", frozenset({SYMBOL_FLAGS[s]}))
            entry = LexEntry(s, "ar", feats)
            analyses = (gr.Analysis(entry, feats),)
        else:
            analyses = ()
        toks.append(gr.Token(s, "word", analyses, i, i + 1, s))
    return toks


def derivations(grammar, graph_name, state, tokens, pos):
    graph = grammar.graphs[graph_name]
    out = []
    for arc in [a for a in graph.arcs if a.src == state]:
        for end, caps in _steps(grammar, arc, tokens, pos):
            for end2, caps2 in derivations(grammar, graph_name, arc.dst, tokens, end):
                out.append((end2, caps + caps2))
    if state in graph.finals:
        out.append((pos, ()))
    return out


def _steps(grammar, arc, tokens, pos):
    lab = arc.label
    if isinstance(lab, gr.Epsilon):
        return [(pos, ())]
    if isinstance(lab, gr.SubgraphCall):
        sub = grammar.graphs[lab.name]
        inner = derivations(grammar, lab.name, sub.initial, tokens, pos)
        inner = sorted(inner, key=lambda d: -d[0])  # stable: longest first
        if arc.capture:
            return [(e, (gr.Capture(arc.capture, pos, e, (), c),)) for e, c in inner]
        return inner
    if pos >= len(tokens):
        return []
    tok = tokens[pos]
    analyses = ()
    if isinstance(lab, gr.Literal):
        ok = tok.surface == lab.text
    elif isinstance(lab, gr.Unknown):
        ok = not tok.analyses
    elif isinstance(lab, gr.Lexical):
        (flag,) = lab.constraint.flags
        analyses = tuple(a for a in tok.analyses if flag in a.features.flags)
        ok = bool(analyses)
    else:
        raise AssertionError(lab)
    if not ok:
        return []
    caps = (gr.Capture(arc.capture, pos, pos + 1, analyses, ()),) if arc.capture else ()
    return [(pos + 1, caps)]


def oracle_apply(grammar, tokens, start):
    main = grammar.graphs[grammar.main]
    ds = derivations(grammar, grammar.main, main.initial, tokens, start)
    if not ds:
        return None
    best = max(e for e, _ in ds)
    caps = next(c for e, c in ds if e == best)
    return gr.MatchResult(start, best, caps)


def random_grammar(rng: random.Random):
    """Random grammar text within the small bounds: <= 2 graphs, <= 6 states."""
    names = ["G0", "G1"][: rng.randint(1, 2)]
    lines = []
    for name in names:
        n_states = rng.randint(1, 6)
        states = [f"q{i}" for i in range(n_states)]
        lines.append(f"graph {name} {{")
        for _ in range(rng.randint(1, 8)):
            src, dst = rng.choice(states), rng.choice(states)
            kind = rng.random()
            if kind < 0.45:
                label = f'"{rng.choice(ALPHABET)}"'
            elif kind < 0.6:
                label = f"<N+{rng.choice(LEX_LABELS)}>"
            elif kind < 0.7:
                label = "<UNK>"
            elif kind < 0.82:
                label = "~eps"
            else:
                label = f":{rng.choice(names)}"
            cap = f" @{rng.choice(['Toponym', 'Ethnonym', 'Adjective'])}" if rng.random() < 0.5 else ""
            if src == "q0" or rng.random() < 0.9:
                lines.append(f"  {src} -[{label}{cap}]-> {dst};")
        finals = rng.sample(states, rng.randint(1, min(2, n_states)))
        lines.append(f"  final {', '.join(finals)};")
        lines.append("}")
    lines.append(f"main {names[0]};")
    return "\n".join(lines)


def random_case(rng):
    """(grammar, tokens) or None when the drawn grammar is invalid."""
    text = random_grammar(rng)
    try:
        grammar = gr.parse_grammar(text)
    except gr.GrammarError:
        return None
    symbols = [rng.choice(ALPHABET) for _ in range(rng.randint(0, 8))]
    return grammar, make_tokens(symbols)
