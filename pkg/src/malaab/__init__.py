"""Recognition of Arabic sport-venue names and their French translation."""

from .grammar import Grammar, apply, parse_grammar, scan, serialize_grammar
from .lexicon import FeatureSet, LexEntry, Lexicon, expand_inflections, parse_dictionary, satisfies
from .morphology import Segmentation, segment, strip_article
from .pipeline import Pipeline
from .recognizer import ComponentTree, Document, recognize, to_json, to_xml, tokenize
from .resources import Resources, build, load_default
from .translator import FrenchFragment, RomanizationTable, Translator, choose_linker, reorder, transliterate

__version__ = "0.1.0"
