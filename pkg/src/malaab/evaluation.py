"""Span-level precision / recall / F-measure and KWIC concordances."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import asdict, dataclass
from pathlib import Path

from .translator import normalize_spacing


class DocMismatch(Exception):
    pass


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    start: int
    end: int
    arabic: str
    french: str


@dataclass(frozen=True)
class Prediction:
    doc_id: str
    start: int
    end: int
    french: str


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_measure: float
    translation_accuracy: float

    @classmethod
    def from_counts(cls, tp, fp, fn, translated_ok=0):
        precision = ratio(tp, tp + fp)
        recall = ratio(tp, tp + fn)
        return cls(tp, fp, fn, precision, recall, f_measure(precision, recall),
                   ratio(translated_ok, tp))

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self):
        return (
            f"TP={self.tp} FP={self.fp} FN={self.fn}\n"
            f"Precision  {self.precision:.2f}\n"
            f"Recall     {self.recall:.2f}\n"
            f"F-measure  {self.f_measure:.2f}\n"
            f"Translation accuracy  {self.translation_accuracy:.2f}\n"
        )


def ratio(num, den):
    return num / den if den else 0.0


def f_measure(precision, recall):
    total = precision + recall
    return 2 * precision * recall / total if total else 0.0


def score(predicted, gold, doc_ids=None) -> EvalReport:
    """Strict character-span matching; translations compared on the hits."""
    known = set(doc_ids) if doc_ids is not None else {g.doc_id for g in gold}
    for p in predicted:
        if p.doc_id not in known:
            raise DocMismatch(f"prediction for unknown document {p.doc_id!r}")
    by_span = {}
    for g in gold:
        by_span.setdefault((g.doc_id, g.start, g.end), []).append(g)
    tp = fp = ok = 0
    for p in predicted:
        bucket = by_span.get((p.doc_id, p.start, p.end))
        if bucket:
            g = bucket.pop()
            tp += 1
            if normalize_spacing(p.french) == normalize_spacing(g.french):
                ok += 1
        else:
            fp += 1
    fn = len(gold) - tp
    return EvalReport.from_counts(tp, fp, fn, ok)


# -- gold corpus -------------------------------------------------------------------


def read_gold(path) -> list[GoldAnnotation]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_gold(text)


def parse_gold(text: str) -> list[GoldAnnotation]:
    out = []
    reader = csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, row in enumerate(reader, 1):
        if not row or row[0].startswith("#"):
            continue
        if len(row) != 5:
            raise ValueError(f"gold line {lineno}: expected 5 columns, got {len(row)}")
        if row[0] == "doc_id":
            continue
        doc_id, start, end, arabic, french = row
        out.append(GoldAnnotation(doc_id, int(start), int(end), arabic, french))
    return out


def write_gold(annotations) -> str:
    lines = ["doc_id\tstart\tend\tarabic\tfrench"]
    lines += [f"{a.doc_id}\t{a.start}\t{a.end}\t{a.arabic}\t{a.french}" for a in annotations]
    return "\n".join(lines) + "\n"


def check_gold(annotations, documents: dict):
    for a in annotations:
        text = documents.get(a.doc_id)
        if text is None:
            raise DocMismatch(f"gold refers to missing document {a.doc_id!r}")
        if not (0 <= a.start < a.end <= len(text)) or text[a.start:a.end] != a.arabic:
            raise ValueError(f"gold span {a.doc_id}:{a.start}-{a.end} does not match its text")


def load_corpus(directory) -> tuple[dict, list]:
    """(documents by id, gold annotations) from ``gold.tsv`` + ``<id>.txt``."""
    directory = Path(directory)
    gold = read_gold(directory / "gold.tsv")
    docs = {p.stem: p.read_text(encoding="utf-8") for p in sorted(directory.glob("*.txt"))}
    check_gold(gold, docs)
    return docs, gold


# -- concordance ---------------------------------------------------------------------


@dataclass(frozen=True)
class ConcordanceRow:
    before: str
    match: str
    after: str
    start: int
    end: int

    def to_tsv(self):
        # one line per row even when the context spans line breaks
        return "\t".join(_flat(f) for f in (self.before, self.match, self.after))


def _flat(text):
    return re.sub(r"[\t\r\n]+", " ", text)


def concordance(document, trees, width: int = 5) -> list[ConcordanceRow]:
    tokens = document.tokens
    text = document.text
    rows = []
    for tree in trees:
        s, e = tree.token_span
        start, end = tree.span
        if width > 0 and s > 0:
            before = text[tokens[max(0, s - width)].start:start]
        else:
            before = ""
        if width > 0 and e < len(tokens):
            after = text[end:tokens[min(len(tokens), e + width) - 1].end]
        else:
            after = ""
        pair = f"{tree.arabic}/{tree.french or ''}"
        rows.append(ConcordanceRow(before, pair, after, start, end))
    return rows
