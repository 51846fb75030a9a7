"""Feature-annotated dictionaries and inflection paradigms.

Dictionary lines look like::

    ملعب,N+LieuSport+FLX=ملعب+FR=stade
    "Habib Bourguiba",N+PR+m+s

Paradigm lines look like::

    76 : 0:""/m+s ; 0:"e"/f+s ; 1:"ux"/m+p ; 0:"es"/f+p
    ملعب : ~12ا34/p

A rule ``<strip>:<append>`` removes ``strip`` trailing characters and appends a
string.  A rule ``~<template>`` rebuilds the word from a template in which the
digits 1-9 stand for the letters of the lemma (used for broken plurals).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

CATEGORIES = ("N", "A", "PREP", "DET", "NUM")
FLAGS = (
    "LieuSport", "Toponyme", "Ville", "Pays", "Region", "Perso", "Fonction",
    "Cat_Geo", "PR", "DETZ", "Apostrophe", "Demonym", "Mois", "DetOpt",
)
FRENCH_ONLY_FLAGS = frozenset({"DETZ", "Apostrophe"})
TOPONYM_KINDS = ("Ville", "Pays", "Region")
GENDERS = ("m", "f")
NUMBERS = ("s", "p")
ATTRIBUTES = ("FLX", "FR")

_TASHKEEL = re.compile("[\u064b-\u0652\u0640]")


class LexiconError(Exception):
    pass


class MalformedLine(LexiconError):
    def __init__(self, file, line, reason):
        super().__init__(f"{file}:{line}: {reason}")
        self.file = file
        self.line = line
        self.reason = reason


class UnknownParadigm(LexiconError):
    def __init__(self, paradigm_id, source):
        super().__init__(f"{source[0]}:{source[1]}: unknown paradigm {paradigm_id!r}")
        self.paradigm_id = paradigm_id
        self.source = source


def normalize(text: str) -> str:
    """Strip tashkeel and tatweel.  Alef/hamza variants are kept distinct."""
    return _TASHKEEL.sub("", text)


@dataclass(frozen=True)
class FeatureSet:
    category: str
    flags: frozenset = frozenset()
    gender: str | None = None
    number: str | None = None

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        flags = frozenset(self.flags)
        unknown = flags.difference(FLAGS)
        if unknown:
            raise ValueError(f"unknown feature(s) {sorted(unknown)}")
        if flags.intersection(TOPONYM_KINDS):
            flags |= {"Toponyme"}
        object.__setattr__(self, "flags", flags)
        if self.gender not in (None, *GENDERS):
            raise ValueError(f"bad gender {self.gender!r}")
        if self.number not in (None, *NUMBERS):
            raise ValueError(f"bad number {self.number!r}")

    def merge(self, gender=None, number=None, flags=()) -> FeatureSet:
        return FeatureSet(
            self.category,
            self.flags | frozenset(flags),
            gender or self.gender,
            number or self.number,
        )

    def has(self, flag: str) -> bool:
        return flag in self.flags

    def to_text(self) -> str:
        parts = [self.category]
        parts += [f for f in FLAGS if f in self.flags]
        if self.gender:
            parts.append(self.gender)
        if self.number:
            parts.append(self.number)
        return "+".join(parts)


@dataclass(frozen=True)
class LexEntry:
    lemma: str
    lang: str
    features: FeatureSet
    paradigm_id: str | None = None
    translation: str | None = None
    source: tuple = field(default=("<string>", 0), compare=False)

    @property
    def words(self) -> tuple:
        return tuple(self.lemma.split())

    def to_line(self) -> str:
        lemma = f'"{self.lemma}"' if _needs_quotes(self.lemma) else self.lemma
        parts = [self.features.to_text()]
        if self.paradigm_id is not None:
            parts.append(f"FLX={self.paradigm_id}")
        if self.translation is not None:
            tr = self.translation
            parts.append(f'FR="{tr}"' if _needs_quotes(tr) else f"FR={tr}")
        return f"{lemma},{'+'.join(parts)}"


def _needs_quotes(text):
    return any(c in text for c in " ,+=")


def _split_plus(text):
    """Split on '+' outside double quotes."""
    parts, buf, quoted = [], [], False
    for ch in text:
        if ch == '"':
            quoted = not quoted
            buf.append(ch)
        elif ch == "+" and not quoted:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if quoted:
        raise ValueError("unbalanced quote")
    parts.append("".join(buf))
    return [p.strip() for p in parts]


def _unquote(text):
    if len(text) >= 2 and text[0] == text[-1] == '"':
        return text[1:-1]
    return text


def parse_line(line: str, lang: str, file="<string>", lineno=0) -> LexEntry:
    def bad(reason):
        return MalformedLine(file, lineno, reason)

    line = line.strip()
    if line.startswith('"'):
        end = line.find('"', 1)
        if end < 0:
            raise bad("unterminated quoted lemma")
        lemma, rest = line[1:end], line[end + 1:].lstrip()
        if not rest.startswith(","):
            raise bad("expected ',' after lemma")
        rest = rest[1:]
    else:
        lemma, sep, rest = line.partition(",")
        if not sep:
            raise bad("missing ',' between lemma and features")
    lemma = normalize(lemma.strip())
    if not lemma:
        raise bad("missing lemma")
    if "+" in lemma or "," in lemma:
        raise bad("lemma contains a delimiter")
    try:
        parts = _split_plus(rest)
    except ValueError as e:
        raise bad(str(e)) from None
    category = parts[0]
    if category not in CATEGORIES:
        raise bad(f"unknown category {category!r}")

    flags, attrs, gender, number = set(), {}, None, None
    for part in parts[1:]:
        if not part:
            raise bad("empty feature")
        if "=" in part:
            key, _, value = part.partition("=")
            key, value = key.strip(), _unquote(value.strip())
            if key not in ATTRIBUTES:
                raise bad(f"unknown attribute {key!r}")
            if key in attrs:
                raise bad(f"duplicate attribute {key}=")
            if not value:
                raise bad(f"empty value for {key}=")
            attrs[key] = value
        elif part in GENDERS:
            if gender is not None:
                raise bad("gender given twice")
            gender = part
        elif part in NUMBERS:
            if number is not None:
                raise bad("number given twice")
            number = part
        elif part in FLAGS:
            flags.add(part)
        else:
            raise bad(f"unknown feature {part!r}")

    if lang == "ar":
        if flags & FRENCH_ONLY_FLAGS:
            raise bad(f"{sorted(flags & FRENCH_ONLY_FLAGS)} only allowed in French entries")
    elif lang == "fr":
        if "FR" in attrs:
            raise bad("FR= link only allowed in Arabic entries")
    else:
        raise ValueError(f"unknown language {lang!r}")

    translation = attrs.get("FR")
    if translation is not None:
        translation = normalize(translation)
    return LexEntry(
        lemma=lemma,
        lang=lang,
        features=FeatureSet(category, frozenset(flags), gender, number),
        paradigm_id=attrs.get("FLX"),
        translation=translation,
        source=(file, lineno),
    )


def parse_dictionary(text: str, lang: str, file="<string>") -> list[LexEntry]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        entries.append(parse_line(stripped, lang, file, lineno))
    return entries


def serialize_dictionary(entries: Iterable[LexEntry]) -> str:
    return "".join(e.to_line() + "\n" for e in entries)


# -- paradigms -------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    strip: int = 0
    append: str = ""
    template: str | None = None
    gender: str | None = None
    number: str | None = None

    def apply(self, lemma: str) -> str:
        if self.template is not None:
            out = []
            for ch in self.template:
                if "1" <= ch <= "9":
                    i = int(ch) - 1
                    if i >= len(lemma):
                        raise ValueError(f"template {self.template!r} too long for {lemma!r}")
                    out.append(lemma[i])
                else:
                    out.append(ch)
            return "".join(out)
        stem = lemma[: len(lemma) - self.strip] if self.strip else lemma
        return stem + self.append

    def to_text(self) -> str:
        body = f"~{self.template}" if self.template is not None else f'{self.strip}:"{self.append}"'
        feats = "+".join(x for x in (self.gender, self.number) if x)
        return f"{body}/{feats}" if feats else body


@dataclass(frozen=True)
class Paradigm:
    id: str
    rules: tuple

    def to_line(self) -> str:
        return f"{self.id} : " + " ; ".join(r.to_text() for r in self.rules)


_RULE = re.compile(r'^(?:(?P<strip>\d+):(?P<append>"[^"]*"|[^/"]*)|~(?P<template>[^/]+))(?:/(?P<feats>.*))?$')


def _parse_rule(text, file, lineno):
    m = _RULE.match(text.strip())
    if not m:
        raise MalformedLine(file, lineno, f"bad rule {text.strip()!r}")
    gender = number = None
    if m["feats"]:
        for f in m["feats"].split("+"):
            f = f.strip()
            if f in GENDERS and gender is None:
                gender = f
            elif f in NUMBERS and number is None:
                number = f
            else:
                raise MalformedLine(file, lineno, f"bad rule feature {f!r}")
    if m["template"] is not None:
        return Rule(template=m["template"].strip(), gender=gender, number=number)
    return Rule(int(m["strip"]), _unquote(m["append"].strip()), gender=gender, number=number)


def parse_paradigms(text: str, file="<string>") -> dict[str, Paradigm]:
    paradigms = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        pid, sep, body = line.partition(" : ")
        if not sep:
            raise MalformedLine(file, lineno, "expected 'id : rules'")
        pid = pid.strip()
        if pid in paradigms:
            raise MalformedLine(file, lineno, f"paradigm {pid!r} defined twice")
        rules = tuple(_parse_rule(r, file, lineno) for r in body.split(";") if r.strip())
        paradigms[pid] = Paradigm(pid, rules)
    return paradigms


def serialize_paradigms(paradigms: dict[str, Paradigm]) -> str:
    return "".join(p.to_line() + "\n" for p in paradigms.values())


def expand_inflections(entry: LexEntry, paradigms) -> list[tuple[str, FeatureSet]]:
    """All (surface, features) pairs of an entry, the lemma itself first."""
    if isinstance(paradigms, dict):
        table = paradigms
    else:
        table = {p.id: p for p in paradigms}
    out = [(entry.lemma, entry.features)]
    if entry.paradigm_id is None:
        return out
    paradigm = table.get(entry.paradigm_id)
    if paradigm is None:
        raise UnknownParadigm(entry.paradigm_id, entry.source)
    for rule in paradigm.rules:
        if " " in entry.lemma:
            # inflect the last word of a multiword lemma
            head, _, last = entry.lemma.rpartition(" ")
            surface = head + " " + rule.apply(last)
        else:
            surface = rule.apply(entry.lemma)
        pair = (surface, entry.features.merge(rule.gender, rule.number))
        if surface and pair not in out:
            out.append(pair)
    return out


# -- lookup ------------------------------------------------------------------


def satisfies(candidate, constraint) -> bool:
    """True iff the analysis meets a category/flags/gender/number constraint.

    ``constraint`` is any object with ``category``, ``flags``, ``gender`` and
    ``number`` attributes (a :class:`FeatureSet` works).
    """
    _, feats = candidate
    if constraint.category is not None and feats.category != constraint.category:
        return False
    if not feats.flags.issuperset(constraint.flags):
        return False
    if constraint.gender is not None and feats.gender != constraint.gender:
        return False
    if constraint.number is not None and feats.number != constraint.number:
        return False
    return True


class Lexicon:
    """Surface index over inflected dictionary entries.  Read-only once built."""

    def __init__(self, entries: Iterable[LexEntry], paradigms=None):
        self.entries = tuple(entries)
        self.paradigms = dict(paradigms or {})
        index: dict[str, list] = {}
        multi: dict[str, list] = {}
        for entry in self.entries:
            for surface, feats in expand_inflections(entry, self.paradigms):
                surface = normalize(surface)
                index.setdefault(surface, []).append((entry, feats))
                words = tuple(surface.split())
                if len(words) > 1:
                    multi.setdefault(words[0], []).append((words, entry, feats))
        self._index = {k: tuple(v) for k, v in index.items()}
        # longest multiword candidates first
        self._multi = {k: tuple(sorted(v, key=lambda t: -len(t[0]))) for k, v in multi.items()}

    def lookup(self, surface: str) -> list[tuple[LexEntry, FeatureSet]]:
        return list(self._index.get(normalize(surface), ()))

    def __contains__(self, surface) -> bool:
        return normalize(surface) in self._index

    def multiword(self, first_word: str):
        """Multiword entries whose first word is ``first_word``."""
        return self._multi.get(first_word, ())

    def surfaces(self):
        return self._index.keys()

    def __len__(self):
        return len(self.entries)


def lookup(lexicon: Lexicon, surface: str):
    return lexicon.lookup(surface)

