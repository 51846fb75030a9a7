"""French generation from recognized venue trees.

Each lexical leaf is transferred through its dictionary link, then the
components are put in French order (category, date, adjectives, names,
places), adjectives agree with the category noun and complements get the
``de``/``du``/``de la``/``de l'``/``des`` linker their French entry calls for.
Words without a dictionary entry are romanized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import Lexicon, expand_inflections, normalize


class TranslationError(Exception):
    pass


class MissingFrenchEntry(TranslationError):
    def __init__(self, lemma, source=None):
        where = f"{source[0]}:{source[1]}: " if source else ""
        super().__init__(f"{where}no French dictionary entry for {lemma!r}")
        self.lemma = lemma
        self.source = source


class MissingInflection(TranslationError):
    pass


class UnknownMonth(TranslationError):
    def __init__(self, surface):
        super().__init__(f"unknown month {surface!r}")
        self.surface = surface


class EmptyInput(TranslationError):
    pass


@dataclass(frozen=True)
class FrenchFragment:
    surface: str
    gender: str | None = None
    number: str | None = None
    flags: frozenset = frozenset()
    role: str | None = None


# -- romanization ----------------------------------------------------------------


class RomanizationTable:
    """Letter (or letter sequence) to Latin mapping.

    Keys may be anchored with ``^`` (word start) or ``$`` (word end).  At each
    position the longest applicable key is used.
    """

    def __init__(self, mapping: dict):
        self.mapping = dict(mapping)
        self._plain = {}
        self._initial = {}
        self._final = {}
        for key, value in self.mapping.items():
            if key.startswith("^"):
                self._initial[key[1:]] = value
            elif key.endswith("$"):
                self._final[key[:-1]] = value
            else:
                self._plain[key] = value
        self._maxlen = max((len(k) for k in self.mapping), default=1)

    @classmethod
    def parse(cls, text: str) -> RomanizationTable:
        return cls(parse_table(text))

    def letters(self):
        return {k for k in self._plain if len(k) == 1}

    def romanize_word(self, word: str) -> str:
        out = []
        i = 0
        n = len(word)
        while i < n:
            best = None
            for size in range(min(self._maxlen, n - i), 0, -1):
                chunk = word[i:i + size]
                if i + size == n and chunk in self._final:
                    best = (size, self._final[chunk])
                elif i == 0 and chunk in self._initial:
                    best = (size, self._initial[chunk])
                elif chunk in self._plain:
                    best = (size, self._plain[chunk])
                if best:
                    break
            if best is None:
                out.append(word[i])
                i += 1
            else:
                out.append(best[1])
                i += best[0]
        return "".join(out)


def parse_table(text: str) -> dict:
    """``key TAB value`` lines; '#' comments; an empty value is allowed."""
    table = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, sep, value = line.partition("\t")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key<TAB>value'")
        key = normalize(key.strip())
        if key in table:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        table[key] = value.strip()
    return table


def _capitalize(word):
    return word[:1].upper() + word[1:] if word else word


def transliterate(surface: str, table: RomanizationTable) -> str:
    surface = normalize(surface).strip()
    if not surface:
        raise EmptyInput("nothing to transliterate")
    words = [table.romanize_word(w) for w in surface.split()]
    return " ".join(_capitalize(w) for w in words if w)


# -- transfer ------------------------------------------------------------------

ADJECTIVE_ROLES = ("Adjective", "Demonym")
NAME_ROLES = ("Ethnonym", "Pragmonym", "SportVenue", "CommonNoun", "CatGeo", "Function")
LINKED_ROLES = ("Toponym", "CommonNoun", "SportVenue")


def choose_linker(left: FrenchFragment, right: FrenchFragment) -> str:
    """Preposition (plus article) joining a complement to what precedes it."""
    apostrophe = "Apostrophe" in right.flags
    if "DETZ" in right.flags:
        return "d'" if apostrophe else "de "
    if right.number == "p":
        return "des "
    if apostrophe:
        return "de l'"
    if right.gender == "m":
        return "du "
    if right.gender == "f":
        return "de la "
    return "de "


def reorder(children):
    """French order of one venue's components.

    Category first, then dates, adjectives, names / nested venues / common
    nouns, and places last.  Relative order within each group is kept.
    """
    rank = {
        "SportVenueCategory": 0, "Date": 1, "Adjective": 2, "Demonym": 2,
        "Function": 3, "Ethnonym": 3, "Pragmonym": 3, "SportVenue": 3,
        "CommonNoun": 3, "CatGeo": 3, "Toponym": 4,
    }
    return sorted(children, key=lambda c: rank.get(_role(c), 3))


def _role(c):
    return c.type if hasattr(c, "type") else c.role


class Translator:
    def __init__(self, ar_lexicon: Lexicon, fr_lexicon: Lexicon,
                 romanization: RomanizationTable, months: dict):
        self.ar = ar_lexicon
        self.fr = fr_lexicon
        self.table = romanization
        self.months = {normalize(k): v for k, v in months.items()}
        self._fragments = {}
        self._agreed = {}

    # single components

    def french_entry(self, lemma):
        for entry, _ in self.fr.lookup(lemma):
            if entry.lemma == lemma:
                return entry
        raise MissingFrenchEntry(lemma)

    def fragment_for(self, lemma, role=None) -> FrenchFragment:
        key = (lemma, role)
        frag = self._fragments.get(key)
        if frag is None:
            frag = self._fragments[key] = self._fragment(lemma, role)
        return frag

    def _fragment(self, lemma, role):
        entry = self.french_entry(lemma)
        gender, number = entry.features.gender, entry.features.number
        for surface, feats in expand_inflections(entry, self.fr.paradigms):
            if surface == lemma and feats.number in (None, "s"):
                gender = gender or feats.gender
                number = number or feats.number
        flags = entry.features.flags & {"DETZ", "Apostrophe"}
        return FrenchFragment(lemma, gender, number or "s", frozenset(flags), role)

    def transfer(self, node) -> FrenchFragment:
        if node.type == "Date":
            return FrenchFragment(self.translate_date(node), role="Date")
        if node.lex is None:
            if node.children:
                parts = [self.transfer(c).surface for c in node.children]
                return FrenchFragment(" ".join(parts), role=node.type)
            return FrenchFragment(transliterate(node.arabic, self.table), role=node.type)
        entry = node.lex[0]
        if entry.translation is None:
            raise MissingFrenchEntry(entry.lemma, entry.source)
        frag = self.fragment_for(entry.translation, node.type)
        return frag

    def agree(self, adjective: FrenchFragment, head: FrenchFragment) -> str:
        key = (adjective.surface, head.gender, head.number)
        form = self._agreed.get(key)
        if form is None:
            form = self._agreed[key] = self._agree(adjective, head)
        return form

    def _agree(self, adjective, head):
        entry = self.french_entry(adjective.surface)
        number = head.number or "s"
        exact, neutral = None, None
        for surface, feats in expand_inflections(entry, self.fr.paradigms):
            if feats.number != number:
                continue
            if feats.gender == head.gender and exact is None:
                exact = surface
            elif feats.gender is None and neutral is None:
                neutral = surface
        form = exact or neutral
        if form is None:
            raise MissingInflection(
                f"{adjective.surface!r} has no {head.gender or '?'}+{number} form"
            )
        return form

    def translate_date(self, node) -> str:
        day = next((c for c in node.children if c.type == "DateNum"), None)
        month = next((c for c in node.children if c.type == "Month"), None)
        if day is None or month is None:
            raise TranslationError("date needs a day and a month")
        key = month.lex[0].lemma if month.lex else normalize(month.arabic)
        french = self.months.get(key)
        if french is None:
            raise UnknownMonth(month.arabic)
        day_text = str(int(day.arabic))
        day.french = day_text
        if french == "*":
            node.untranslated = True
            french = transliterate(month.arabic, self.table)
        month.french = french
        return f"{day_text} {french}"

    # whole trees

    def translate(self, tree) -> str:
        if tree.type != "SportVenue":
            frag = self.transfer(tree)
            tree.french = frag.surface
            return frag.surface
        text, _ = self._venue(tree)
        if tree.ambiguous == "club-candidate":
            # club names are proper nouns: "Stade Tunisien"
            text = " ".join(_capitalize(w) for w in text.split(" "))
            tree.french = text
        return text

    def _venue(self, node):
        frags = {}
        for child in node.children:
            if child.type == "SportVenue":
                text, head = self._venue(child)
                frags[id(child)] = FrenchFragment(text, head.gender, head.number, head.flags, "SportVenue")
            else:
                frags[id(child)] = self.transfer(child)
                if child.type == "Ethnonym" and child.children:
                    for part in child.children:
                        part.french = self.transfer(part).surface
        cats = [c for c in node.children if c.type == "SportVenueCategory"]
        if not cats:
            raise TranslationError("venue without a category")
        head = frags[id(cats[0])]
        pieces = []
        for child in reorder(node.children):
            frag = frags[id(child)]
            if child.type in ADJECTIVE_ROLES:
                surface = self.agree(frag, head)
                piece = surface
            elif child.type in LINKED_ROLES and child.type != "SportVenueCategory":
                surface = frag.surface
                if child.after_hyphen:
                    piece = "- " + surface
                else:
                    piece = choose_linker(head, frag) + surface
            else:
                surface = piece = frag.surface
            if child.type != "SportVenue":
                child.french = surface
            pieces.append(piece)
        text = " ".join(pieces)
        node.french = text
        return text, head


def normalize_spacing(text: str) -> str:
    """Collapse whitespace and space hyphens that separate words."""
    text = re.sub(r"\s+", " ", text.strip())
    return re.sub(r"\s*-\s+|\s+-\s*", " - ", text)
