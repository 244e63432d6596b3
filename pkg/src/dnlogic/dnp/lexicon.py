"""Negation lexicon: word lists, prefix stems and surface patterns."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

SECTIONS = (
    "explicit_negatives",
    "negative_prefixes",
    "context_negatives",
    "modal_triggers",
    "only_triggers",
    "comparative_patterns",
    "rhetoric_patterns",
    "stems",
)
QUANTITY = r"(?:[$€£]?\d+(?:[.,]\d+)*\s*[$€£%]?|one|two|three|four|five|six|seven|eight|nine|ten|a few)"


def compile_pattern(pattern: str) -> re.Pattern:
    """``no more ... than`` style pattern to a case-insensitive regex."""
    out = ""
    gap = False
    for word in pattern.split():
        if word == "...":
            out += r"\s+(?:\S+\s+)*?"
            gap = True
            continue
        if out and not gap:
            out += r"\s+"
        gap = False
        if word == "<quantity>":
            out += QUANTITY + r"(?!\w)"
        else:
            out += r"\b" + re.escape(word) + r"\b"
    return re.compile(out, re.IGNORECASE)


def _dedup(words) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for w in words:
        w = w.strip().lower()
        if w:
            seen.setdefault(w, None)
    return tuple(seen)


@dataclass(frozen=True)
class Lexicon:
    explicit_negatives: tuple[str, ...] = ()
    negative_prefixes: tuple[str, ...] = ()
    context_negatives: tuple[str, ...] = ()
    modal_triggers: tuple[str, ...] = ()
    only_triggers: tuple[str, ...] = ()
    comparative_patterns: tuple[str, ...] = ()
    rhetoric_patterns: tuple[str, ...] = ()
    stems: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for name in SECTIONS:
            value = getattr(self, name)
            if name == "stems":
                object.__setattr__(self, name, frozenset(_dedup(value)))
            else:
                object.__setattr__(self, name, _dedup(value))

    def without_context(self, word: str) -> "Lexicon":
        kept = tuple(w for w in self.context_negatives if w != word.lower())
        return Lexicon(**{**self._fields(), "context_negatives": kept})

    def _fields(self) -> dict:
        return {name: getattr(self, name) for name in SECTIONS}

    def prefix_applies(self, stem: str) -> bool:
        """A prefix counts when its stem is a known word (length 4 or more without a stem list)."""
        if self.stems:
            return stem in self.stems
        return len(stem) >= 4

    def to_text(self) -> str:
        out = []
        for name in SECTIONS:
            values = sorted(getattr(self, name)) if name == "stems" else getattr(self, name)
            out.append(f"[{name}]")
            out.extend(values)
            out.append("")
        return "\n".join(out)


def parse_lexicon(text: str) -> Lexicon:
    sections: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in SECTIONS:
                raise ValueError(f"line {lineno}: unknown lexicon section [{current}]")
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ValueError(f"line {lineno}: entry before any [section] header")
        sections[current].append(line)
    return Lexicon(**sections)


def load_lexicon(path: str | Path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def _data(name: str) -> str:
    return resources.files("dnlogic.dnp").joinpath("data", name).read_text(encoding="utf-8")


def default_lexicon() -> Lexicon:
    """Bundled lexicon with the bundled stem list merged in."""
    lex = parse_lexicon(_data("default_lexicon.txt"))
    if lex.stems:
        return lex
    stems = [l.split("#", 1)[0].strip() for l in _data("stems.txt").splitlines()]
    return Lexicon(**{**lex._fields(), "stems": frozenset(s for s in stems if s)})
