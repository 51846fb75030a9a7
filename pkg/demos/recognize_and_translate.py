"""
Recognizing and translating venue names
=======================================

Tag a short Arabic text, look at the component tree of each venue and
print it in the XML layout of the typology.
"""

from malaab import Pipeline
from malaab.recognizer import to_xml_document

# the shipped dictionaries, paradigms and grammar are loaded once
pipeline = Pipeline()

text = (
    "افتتح استاد الملك فهد الدولي بالرياض سنة 1987 .\n"
    "وأقيمت المباراة في ملعب مدينة تشرين الرياضية ، أمس ."
)
doc, trees = pipeline.run(text)

# one tree per venue; spans are character offsets into the text
for tree in trees:
    print(tree.span, tree.arabic, "->", tree.french)

# components keep their Arabic order; the French follows French word order
for node in trees[0].children:
    print(f"  {node.type:20} {node.arabic:12} {node.french}")

# the nested complex "cité sportive Tchrine" is a venue of its own
print(trees[1].shape())

print(to_xml_document(trees))

# words the dictionary does not know are romanized
(tree,) = pipeline.tag("ستاد سحيم بن حمد")
print(tree.french)
