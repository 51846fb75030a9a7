"""Proclitic segmentation of agglutinated Arabic tokens.

A token is split as ``[conjunction][preposition][article] stem`` where the
conjunction is و or ف, the preposition ب or ل and the article ال.  Only
splits whose stem is in the lexicon are returned.  Enclitic pronouns are
not analysed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .lexicon import Lexicon, normalize

CONJUNCTIONS = ("و", "ف")
PREPOSITIONS = ("ب", "ل")
ARTICLE = "ال"
PROCLITICS = CONJUNCTIONS + PREPOSITIONS + (ARTICLE,)

__all__ = ["Segmentation", "segment", "strip_article", "clitic_sequences", "normalize"]


@dataclass(frozen=True)
class Segmentation:
    proclitics: tuple
    stem: str
    stem_analyses: tuple = field(compare=False, repr=False)

    @property
    def determined(self) -> bool:
        return ARTICLE in self.proclitics

    @property
    def surface(self) -> str:
        return "".join(self.proclitics) + self.stem


def clitic_sequences():
    """Every legal proclitic sequence, the empty one included."""
    seqs = []
    for conj in ((),) + tuple((c,) for c in CONJUNCTIONS):
        for prep in ((),) + tuple((p,) for p in PREPOSITIONS):
            for art in ((), (ARTICLE,)):
                seqs.append(conj + prep + art)
    return seqs


_SEQUENCES = sorted(clitic_sequences(), key=lambda s: len("".join(s)))


def segment(token: str, lexicon: Lexicon) -> list[Segmentation]:
    """All lexicon-validated decompositions, longest stem first."""
    return list(_segment_cached(normalize(token), lexicon))


@lru_cache(maxsize=65536)
def _segment_cached(token, lexicon):
    out = []
    for seq in _SEQUENCES:
        prefix = "".join(seq)
        if not token.startswith(prefix) or len(token) == len(prefix):
            continue
        stem = token[len(prefix):]
        analyses = lexicon.lookup(stem)
        if analyses:
            out.append(Segmentation(seq, stem, tuple(analyses)))
    out.sort(key=lambda s: -len(s.stem))
    return tuple(out)


def strip_article(token: str) -> str | None:
    if token.startswith(ARTICLE) and len(token) > len(ARTICLE):
        return token[len(ARTICLE):]
    return None
