"""Recognize-then-translate over whole documents."""

from __future__ import annotations

from .recognizer import recognize, tokenize
from .resources import Resources, load_default


class Pipeline:
    def __init__(self, resources: Resources | None = None):
        self.resources = resources or load_default()
        self.translator = self.resources.translator()

    def tokenize(self, text, doc_id="doc"):
        return tokenize(text, self.resources.ar_lexicon, doc_id)

    def recognize(self, document):
        return recognize(document, self.resources.grammar, self.resources.ar_lexicon)

    def run(self, text, doc_id="doc"):
        """(document, translated trees)."""
        doc = self.tokenize(text, doc_id)
        trees = self.recognize(doc)
        for tree in trees:
            self.translator.translate(tree)
        return doc, trees

    def tag(self, text, doc_id="doc"):
        return self.run(text, doc_id)[1]
