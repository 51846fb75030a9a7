"""Loading, cross-checking and bundling of the linguistic resources."""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass
from importlib import resources as ilr
from pathlib import Path

from .grammar import Grammar, parse_grammar
from .lexicon import Lexicon, UnknownParadigm, expand_inflections, parse_dictionary, parse_paradigms
from .translator import MissingFrenchEntry, RomanizationTable, Translator, parse_table

BUNDLE_MAGIC = b"MALAAB-BUNDLE\x00"
BUNDLE_VERSION = 1

DEFAULT_FILES = {
    "dict_ar": "dict_ar.dic",
    "dict_fr": "dict_fr.dic",
    "paradigms": "paradigms.flx",
    "grammar": "venues.grm",
    "translit": "translit.tsv",
    "months": "months.tsv",
}


class BundleError(Exception):
    pass


@dataclass
class Resources:
    ar_entries: list
    fr_entries: list
    paradigms: dict
    ar_lexicon: Lexicon
    fr_lexicon: Lexicon
    grammar: Grammar
    romanization: RomanizationTable
    months: dict
    sources: dict

    def translator(self) -> Translator:
        return Translator(self.ar_lexicon, self.fr_lexicon, self.romanization, self.months)


def data_path(name: str) -> Path:
    return Path(str(ilr.files("malaab") / "data" / name))


def default_sources() -> dict:
    return {key: data_path(name).read_text(encoding="utf-8") for key, name in DEFAULT_FILES.items()}


def read_sources(paths: dict) -> dict:
    """Reads each given path, falling back to the shipped file."""
    out = {}
    for key, name in DEFAULT_FILES.items():
        path = paths.get(key) or data_path(name)
        out[key] = Path(path).read_text(encoding="utf-8")
    return out


def build(sources: dict, names: dict | None = None) -> Resources:
    """Parses and cross-links every resource; any inconsistency raises."""
    names = names or DEFAULT_FILES
    paradigms = parse_paradigms(sources["paradigms"], names["paradigms"])
    ar_entries = parse_dictionary(sources["dict_ar"], "ar", names["dict_ar"])
    fr_entries = parse_dictionary(sources["dict_fr"], "fr", names["dict_fr"])
    for entry in ar_entries + fr_entries:
        if entry.paradigm_id is not None and entry.paradigm_id not in paradigms:
            raise UnknownParadigm(entry.paradigm_id, entry.source)
        expand_inflections(entry, paradigms)
    ar_lexicon = Lexicon(ar_entries, paradigms)
    fr_lexicon = Lexicon(fr_entries, paradigms)
    fr_lemmas = {e.lemma for e in fr_entries}
    for entry in ar_entries:
        if entry.translation is not None and entry.translation not in fr_lemmas:
            raise MissingFrenchEntry(entry.translation, entry.source)
    grammar = parse_grammar(sources["grammar"])
    romanization = RomanizationTable.parse(sources["translit"])
    months = parse_table(sources["months"])
    return Resources(ar_entries, fr_entries, paradigms, ar_lexicon, fr_lexicon,
                     grammar, romanization, months, dict(sources))


_DEFAULT = None


def load_default() -> Resources:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = build(default_sources())
    return _DEFAULT


def compile_bundle(sources: dict, names: dict | None = None) -> bytes:
    """Validated, deterministic bundle of the resource sources."""
    build(sources, names)
    payload = json.dumps(
        {"version": BUNDLE_VERSION, "sources": {k: sources[k] for k in sorted(DEFAULT_FILES)}},
        ensure_ascii=False, sort_keys=True,
    ).encode("utf-8")
    return BUNDLE_MAGIC + zlib.compress(payload, 9)


def load_bundle(data: bytes) -> Resources:
    if not data.startswith(BUNDLE_MAGIC):
        raise BundleError("not a resource bundle")
    try:
        payload = json.loads(zlib.decompress(data[len(BUNDLE_MAGIC):]).decode("utf-8"))
    except (zlib.error, ValueError) as e:
        raise BundleError(f"corrupt bundle: {e}") from None
    if payload.get("version") != BUNDLE_VERSION:
        raise BundleError(f"unsupported bundle version {payload.get('version')!r}")
    return build(payload["sources"])
