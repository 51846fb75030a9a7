"""
Scoring against the gold corpus
===============================

The shipped corpus holds every venue name readable from the published
figures and examples, with their French renderings.  Matching is strict
on character spans; translations are compared after spacing normalization.
"""

from malaab import Pipeline
from malaab.evaluation import Prediction, concordance, load_corpus, score
from malaab.resources import data_path
from malaab.translator import normalize_spacing

docs, gold = load_corpus(data_path("corpus"))
pipeline = Pipeline()

predicted = []
for doc_id, text in sorted(docs.items()):
    for tree in pipeline.tag(text, doc_id):
        predicted.append(Prediction(doc_id, tree.span[0], tree.span[1], tree.french))

report = score(predicted, gold, docs)
print(report.to_text())

# the two renderings that differ from the published ones
found = {(p.doc_id, p.start, p.end): p.french for p in predicted}
for g in gold:
    ours = found.get((g.doc_id, g.start, g.end))
    if normalize_spacing(ours or "") != normalize_spacing(g.french):
        print(f"{g.arabic}\n  published: {g.french}\n  ours:      {ours}")

# keyword-in-context listing of one page
doc, trees = pipeline.run(docs["concordance"], "concordance")
for row in concordance(doc, trees, width=3)[:5]:
    print(row.to_tsv())
