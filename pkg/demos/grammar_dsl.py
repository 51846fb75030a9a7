"""
Writing a local grammar
=======================

Grammars are small graphs in a text format.  Arcs read a literal, a
dictionary constraint, an unknown word, a run of digits or call another
graph; ``@Tag`` captures what the arc consumed.
"""

from malaab import Pipeline, apply, parse_grammar, scan, serialize_grammar
from malaab.grammar import RecursionLimit

text = """
graph MAIN {
  q0 -[<N+LieuSport> @SportVenueCategory]-> q1;
  q1 -[:PLACE]-> q2;
  final q2;
}
graph PLACE {
  p0 -[<N+Toponyme+CL=ب> @Toponym]-> p1;
  p0 -[<N+Toponyme> @Toponym]-> p1;
  final p1;
}
main MAIN;
"""
grammar = parse_grammar(text)

# the parsed grammar prints back in canonical form
print(serialize_grammar(grammar))

# tokens come with their dictionary analyses (clitics already split off)
pipeline = Pipeline()
doc = pipeline.tokenize("لعبوا في ملعب صفاقس ثم في مسبح بباجة")

match = apply(grammar, doc.tokens, start=2)
print(match.start, match.end, [c.tag for c in match.captures])

# scan() returns leftmost-longest, non-overlapping matches
for m in scan(grammar, doc.tokens):
    print(doc.text[m.char_span[0]:m.char_span[1]])

# a loop that reads nothing could run forever, so it is rejected up front
try:
    parse_grammar("graph M { a -[~eps]-> b; b -[~eps]-> a; b -[\"x\"]-> c; final c; } main M;")
except RecursionLimit as e:
    print("rejected:", e)
