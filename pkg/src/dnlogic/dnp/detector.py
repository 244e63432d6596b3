"""Rule-based detection of doubly negated propositions.

Rule tags:

R1  rhetoric double negation (a pattern such as "nothing else than 10$"); excluded
R2  "only" / "nothing else"
R3  modal word
R4  comparison "no more ... than" / "no less ... than"
R5  question with exactly one explicit negative (surface form only, low confidence)
R6  a context-negative word supplies one of the negations

Each token yields at most one marker, chosen by priority explicit, context,
prefix, modal.  Explicit, context and prefix markers weigh 1.  R1 wins over
everything; R2, R3 or R4 alone make a DNP; otherwise two units of weight do;
otherwise R5 does.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .lexicon import Lexicon, compile_pattern, default_lexicon

AFFIRMATIVE = "Affirmative"
SINGLE = "SingleNegation"
DNP = "DNP"
RHETORICAL = "RhetoricalExcluded"

NON_CLASSICAL = "NonClassicalLikely"
INCONCLUSIVE = "Inconclusive"
CLASSICAL = "ClassicalLikely"

RULES = ("R1", "R2", "R3", "R4", "R5", "R6")
DEFAULT_ABBREVIATIONS = (
    "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "vs", "cf", "etc", "e.g", "i.e",
    "fig", "eq", "vol", "no", "pp", "p", "ch", "sec", "ed", "al", "approx",
)

_TOKEN = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?")
_END = re.compile(r"[.!?]+[\"')\]]*")


@dataclass(frozen=True)
class DetectorConfig:
    min_dnp_count: int = 5
    min_density: float = 3.0
    abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS


@dataclass(frozen=True)
class Marker:
    start: int
    end: int
    text: str
    kind: str

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "text": self.text, "kind": self.kind}


@dataclass(frozen=True)
class AnnotationRecord:
    start: int
    end: int
    text: str
    markers: tuple[Marker, ...]
    rules_fired: tuple[str, ...]
    classification: str
    weight: int
    confidence: str = "normal"

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "text": self.text,
            "classification": self.classification,
            "rules": list(self.rules_fired),
            "weight": self.weight,
            "confidence": self.confidence,
            "markers": [m.to_dict() for m in self.markers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    def to_human(self) -> str:
        out, pos = [], 0
        for m in sorted(self.markers, key=lambda m: (m.start, m.end)):
            s, e = m.start - self.start, m.end - self.start
            if s < pos:
                continue
            out.append(self.text[pos:s])
            out.append(f"[{self.text[s:e]}:{m.kind}]")
            pos = e
        out.append(self.text[pos:])
        rules = ",".join(self.rules_fired) or "-"
        return f"{self.start:>6}-{self.end:<6} {self.classification:<18} {rules:<8} {''.join(out)}"


def segment_text(text: str, config: DetectorConfig = DetectorConfig()) -> list[tuple[int, int]]:
    """Sentence spans ``(start, end)``, whitespace trimmed."""
    abbrevs = {a.lower() for a in config.abbreviations}
    spans: list[tuple[int, int]] = []
    start = 0
    for m in _END.finditer(text):
        end = m.end()
        if end < len(text) and not text[end].isspace():
            continue  # decimals, inline dots
        if m.group().startswith(".") and len(m.group().rstrip("\"')]")) == 1:
            word = re.search(r"([A-Za-z][A-Za-z.]*)$", text[start:m.start()])
            if word:
                w = word.group(1).lower()
                if w in abbrevs or (len(w) == 1 and word.group(1).isupper()):
                    continue
        spans.append((start, end))
        start = end
    spans.append((start, len(text)))
    out = []
    for s, e in spans:
        chunk = text[s:e]
        if not chunk.strip():
            continue
        s += len(chunk) - len(chunk.lstrip())
        e -= len(chunk) - len(chunk.rstrip())
        out.append((s, e))
    return out


def _token_marker(word: str, lex: Lexicon) -> str | None:
    w = word.lower()
    if w in lex.explicit_negatives or ("n't" in lex.explicit_negatives and w.endswith("n't")):
        return "explicit"
    if w in lex.context_negatives:
        return "context"
    for prefix in sorted(lex.negative_prefixes, key=len, reverse=True):
        if w.startswith(prefix) and lex.prefix_applies(w[len(prefix):]):
            return "prefix"
    if w in lex.modal_triggers:
        return "modal"
    return None


def annotate_sentence(
    sentence: str,
    lex: Lexicon | None = None,
    config: DetectorConfig = DetectorConfig(),
    offset: int = 0,
) -> AnnotationRecord:
    lex = lex or default_lexicon()
    markers: list[Marker] = []
    rules: set[str] = set()
    weight = 0
    explicit = 0
    for m in _TOKEN.finditer(sentence):
        kind = _token_marker(m.group(), lex)
        if kind is None:
            continue
        markers.append(Marker(offset + m.start(), offset + m.end(), m.group(), kind))
        if kind in ("explicit", "context", "prefix"):
            weight += 1
        if kind == "explicit":
            explicit += 1
        elif kind == "context":
            rules.add("R6")
        elif kind == "modal":
            rules.add("R3")

    rhetoric: list[tuple[int, int]] = []

    def pattern_hits(patterns, kind, rule):
        for p in patterns:
            for hit in compile_pattern(p).finditer(sentence):
                # a trigger inside a rhetoric phrase belongs to that phrase
                if any(s <= hit.start() and hit.end() <= e for s, e in rhetoric):
                    continue
                markers.append(Marker(offset + hit.start(), offset + hit.end(), hit.group(), kind))
                rules.add(rule)
                if rule == "R1":
                    rhetoric.append(hit.span())

    pattern_hits(lex.rhetoric_patterns, "rhetoric", "R1")
    pattern_hits(lex.only_triggers, "only", "R2")
    pattern_hits(lex.comparative_patterns, "comparative", "R4")
    if sentence.rstrip().endswith("?") and explicit == 1:
        rules.add("R5")

    confidence = "normal"
    if "R1" in rules:
        cls = RHETORICAL
    elif rules & {"R2", "R3", "R4"} or weight >= 2:
        cls = DNP
    elif "R5" in rules:
        cls = DNP
        confidence = "low"
    else:
        cls = SINGLE if weight >= 1 else AFFIRMATIVE
    ordered = tuple(sorted(set(markers), key=lambda m: (m.start, m.end, m.kind)))
    return AnnotationRecord(
        offset, offset + len(sentence), sentence, ordered, tuple(sorted(rules)), cls, weight, confidence
    )


def annotate_text(
    text: str, lex: Lexicon | None = None, config: DetectorConfig = DetectorConfig()
) -> list[AnnotationRecord]:
    lex = lex or default_lexicon()
    return [annotate_sentence(text[s:e], lex, config, s) for s, e in segment_text(text, config)]


@dataclass(frozen=True)
class DocumentProfile:
    sentence_count: int
    dnp_count: int
    dnp_density: float
    rule_histogram: dict = field(default_factory=dict)
    verdict: str = INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "sentence_count": self.sentence_count,
            "dnp_count": self.dnp_count,
            "dnp_density": round(self.dnp_density, 4),
            "rule_histogram": dict(self.rule_histogram),
            "verdict": self.verdict,
        }

    def to_text(self) -> str:
        hist = ", ".join(f"{r}={n}" for r, n in self.rule_histogram.items())
        return (
            f"sentences: {self.sentence_count}\n"
            f"DNPs: {self.dnp_count}\n"
            f"density: {self.dnp_density:.2f} per 100 sentences\n"
            f"rules: {hist}\n"
            f"verdict: {self.verdict}\n"
        )


def summarize(records: list[AnnotationRecord], config: DetectorConfig = DetectorConfig()) -> DocumentProfile:
    n = len(records)
    dnps = sum(1 for r in records if r.classification == DNP)
    density = 100.0 * dnps / n if n else 0.0
    hist = {rule: sum(1 for r in records if rule in r.rules_fired) for rule in RULES}
    if n == 0:
        verdict = INCONCLUSIVE
    elif dnps >= config.min_dnp_count and density >= config.min_density:
        verdict = NON_CLASSICAL
    elif dnps == 0:
        verdict = CLASSICAL
    else:
        verdict = INCONCLUSIVE
    return DocumentProfile(n, dnps, density, hist, verdict)


def profile_document(
    text: str, lex: Lexicon | None = None, config: DetectorConfig = DetectorConfig()
) -> DocumentProfile:
    return summarize(annotate_text(text, lex, config), config)
