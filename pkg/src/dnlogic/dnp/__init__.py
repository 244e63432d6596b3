from .detector import (
    AFFIRMATIVE, CLASSICAL, DNP, INCONCLUSIVE, NON_CLASSICAL, RHETORICAL, RULES, SINGLE,
    AnnotationRecord, DetectorConfig, DocumentProfile, Marker, annotate_sentence, annotate_text,
    profile_document, segment_text, summarize,
)
from .lexicon import Lexicon, default_lexicon, load_lexicon, parse_lexicon

__all__ = [
    "AFFIRMATIVE", "CLASSICAL", "DNP", "INCONCLUSIVE", "NON_CLASSICAL", "RHETORICAL", "RULES",
    "SINGLE", "AnnotationRecord", "DetectorConfig", "DocumentProfile", "Lexicon", "Marker",
    "annotate_sentence", "annotate_text", "default_lexicon", "load_lexicon", "parse_lexicon",
    "profile_document", "segment_text", "summarize",
]
