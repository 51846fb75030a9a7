import random

import pytest
from hypothesis import given, settings, strategies as st

from malaab import grammar as gr
from oracle import make_tokens, oracle_apply, random_case
from suites import oracle_cases, oracle_mismatches

SIMPLE = """
// comment
graph MAIN {
  q0 -["a" @Toponym]-> q1;
  q1 -[:TAIL]-> q2;
  q0 -[<N+Ville>]-> q2;
  final q1, q2;
}
graph TAIL {
  t0 -[<UNK> @Ethnonym]-> t1;
  t1 -[~eps]-> t2;
  t0 -[#digits(1,2)]-> t2;
  final t1, t2;
}
main MAIN;
"""


def test_parse_simple_grammar():
    g = gr.parse_grammar(SIMPLE)
    assert g.main == "MAIN"
    assert set(g.graphs) == {"MAIN", "TAIL"}
    main = g.graphs["MAIN"]
    assert main.initial == "q0"
    assert main.finals == ("q1", "q2")
    labels = [a.label for a in main.arcs]
    assert labels[0] == gr.Literal("a")
    assert labels[1] == gr.SubgraphCall("TAIL")
    assert labels[2].constraint.flags == frozenset({"Ville"})
    assert g.graphs["TAIL"].arcs[2].label == gr.DigitRun(1, 2)


def test_serialize_parse_fixpoint(resources):
    for g in (gr.parse_grammar(SIMPLE), resources.grammar):
        text = gr.serialize_grammar(g)
        again = gr.parse_grammar(text)
        assert again == g
        assert gr.serialize_grammar(again) == text


def test_undefined_subgraph():
    with pytest.raises(gr.UndefinedSubgraph):
        gr.parse_grammar('graph M { q0 -[:NOPE]-> q1; final q1; } main M;')


def test_syntax_error_has_line():
    with pytest.raises(gr.GrammarSyntaxError) as info:
        gr.parse_grammar('graph M {\n  q0 -["a"-> q1;\n  final q1;\n}\nmain M;')
    assert info.value.line == 2


def test_unknown_capture_tag_rejected():
    with pytest.raises(gr.GrammarSyntaxError):
        gr.parse_grammar('graph M { q0 -["a" @Nonsense]-> q1; final q1; } main M;')


def test_unreachable_final():
    with pytest.raises(gr.NoFinalState):
        gr.parse_grammar('graph M { q0 -["a"]-> q1; final q9; } main M;')


def test_zero_consumption_cycle_rejected():
    text = 'graph M { q0 -[~eps]-> q1; q1 -[~eps]-> q0; q1 -["a"]-> q2; final q2; } main M;'
    with pytest.raises(gr.RecursionLimit):
        gr.parse_grammar(text)


def test_left_recursion_rejected():
    text = 'graph M { q0 -[:M]-> q1; q0 -["a"]-> q1; final q1; } main M;'
    with pytest.raises(gr.RecursionLimit):
        gr.parse_grammar(text)


def test_unvalidated_grammar_checked_before_matching():
    arcs = (gr.Arc("q0", "q0", gr.Epsilon()), gr.Arc("q0", "q1", gr.Literal("a")))
    g = gr.Grammar({"M": gr.Graph("M", arcs, ("q1",))}, "M")
    with pytest.raises(gr.RecursionLimit):
        gr.apply(g, make_tokens("a"))


def test_shipped_grammar_graphs(resources):
    g = resources.grammar
    assert g.main == "MAIN"
    assert {"STADE", "COMPLEXE", "NOM_DATE", "ADJ", "PAYS", "TOPO", "ETHNO", "LOC"} <= set(g.graphs)


def test_apply_longest_match():
    g = gr.parse_grammar(SIMPLE)
    toks = make_tokens("ae")
    m = gr.apply(g, toks)
    assert (m.start, m.end) == (0, 2)
    assert [c.tag for c in m.captures] == ["Toponym", "Ethnonym"]


def test_apply_no_match():
    g = gr.parse_grammar(SIMPLE)
    assert gr.apply(g, make_tokens("b")) is None


def test_tie_goes_to_first_declared_arc():
    g = gr.parse_grammar(
        'graph M { q0 -["a" @Toponym]-> q1; q0 -["a" @Ethnonym]-> q1; final q1; } main M;'
    )
    assert gr.apply(g, make_tokens("a")).captures[0].tag == "Toponym"


def test_scan_leftmost_longest_non_overlapping():
    g = gr.parse_grammar('graph M { q0 -["a"]-> q1; q1 -["a"]-> q1; final q1; } main M;')
    spans = [(m.start, m.end) for m in gr.scan(g, make_tokens("aabaaa"))]
    assert spans == [(0, 2), (3, 6)]


def test_nested_captures():
    g = gr.parse_grammar(SIMPLE)
    g2 = gr.parse_grammar(SIMPLE.replace("q1 -[:TAIL]-> q2;", "q1 -[:TAIL @Pragmonym]-> q2;"))
    m = gr.apply(g2, make_tokens("ae"))
    outer = m.captures[1]
    assert outer.tag == "Pragmonym" and outer.children[0].tag == "Ethnonym"
    assert gr.apply(g, make_tokens("ae")) != m


def test_two_venues_in_one_paragraph(pipeline):
    text = "لعب الفريق في ملعب صفاقس ثم انتقل إلى استاد الملك فهد الدولي بالرياض أمس."
    doc = pipeline.tokenize(text)
    matches = gr.scan(pipeline.resources.grammar, doc.tokens)
    spans = [text[m.char_span[0]:m.char_span[1]] for m in matches]
    assert spans == ["ملعب صفاقس", "استاد الملك فهد الدولي بالرياض"]


def test_concordance_page_yields_eighteen_matches(pipeline, corpus_dir):
    text = (corpus_dir / "concordance.txt").read_text(encoding="utf-8")
    doc = pipeline.tokenize(text)
    assert len(gr.scan(pipeline.resources.grammar, doc.tokens)) == 18


def test_oracle_equivalence_small_sample():
    cases = oracle_cases(150, seed=11)
    assert oracle_mismatches(cases) == []


def test_scan_matches_oracle_scan():
    for grammar, tokens in oracle_cases(150, seed=12):
        expected, i = [], 0
        while i < len(tokens):
            m = oracle_apply(grammar, tokens, i)
            if m is not None and m.end > i:
                expected.append(m)
                i = m.end
            else:
                i += 1
        assert gr.scan(grammar, tokens) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_apply_is_deterministic(seed):
    case = random_case(random.Random(seed))
    if case is None:
        return
    grammar, tokens = case
    for start in range(len(tokens)):
        assert gr.apply(grammar, tokens, start) == gr.apply(grammar, tokens, start)
        m = gr.apply(grammar, tokens, start)
        if m is not None:
            assert start <= m.end <= len(tokens)
