"""Linguistic metrics for snippets: word count, lexical density, and the
Flesch-Kincaid grade level, judged against per-role guideline ranges.

The primitives are deliberately dependency-free and deterministic: a fixed
regex tokenizer, a rule-based sentence splitter with a pinned abbreviation
list, a vowel-group syllable heuristic, and the pinned stopword list from
the data files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import defaults
from .defaults import RoleGuideline, guideline_for  # re-exported
from .errors import PlumeError
from .model import DashboardDocument, SnippetState

__all__ = [
    "MetricsReport",
    "Conformance",
    "RoleGuideline",
    "guideline_for",
    "tokenize_words",
    "split_sentences",
    "count_syllables",
    "lexical_density",
    "fk_grade",
    "analyze",
    "conformance",
]

# Words (letters/digits, unicode-aware) with internal apostrophes kept;
# hyphens and all other punctuation split.
_WORD_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*", re.UNICODE)

_TERMINATOR_RE = re.compile(r"[.!?]+")

# Trailing tokens that end in '.' without ending a sentence.
_ABBREVIATIONS = frozenset(
    {
        "e.g.", "i.e.", "etc.", "vs.", "cf.", "ca.", "approx.",
        "dr.", "mr.", "mrs.", "ms.", "prof.", "st.", "dept.",
        "fig.", "no.", "vol.", "inc.", "jr.", "sr.",
    }
)

_VOWELS = frozenset("aeiouy")


def tokenize_words(text: str) -> list[str]:
    """Word tokens: numerals count, hyphenated compounds split, punctuation
    dropped."""
    return _WORD_RE.findall(text)


def split_sentences(text: str) -> list[str]:
    """Sentences split on . ! ? followed by whitespace and a capital (or end
    of text); known abbreviations do not terminate. Text with words but no
    terminator is one sentence."""
    boundaries: list[int] = []
    for match in _TERMINATOR_RE.finditer(text):
        end = match.end()
        preceding = re.search(r"\S+$", text[:end])
        if preceding and preceding.group(0).lower() in _ABBREVIATIONS:
            continue
        rest = text[end:]
        if rest.strip() == "":
            boundaries.append(end)
        else:
            follow = re.match(r"\s+(\S)", rest)
            if follow and follow.group(1).isupper():
                boundaries.append(end)
    sentences: list[str] = []
    start = 0
    for end in boundaries:
        piece = text[start:end].strip()
        if _WORD_RE.search(piece):
            sentences.append(piece)
        start = end
    tail = text[start:].strip()
    if _WORD_RE.search(tail):
        sentences.append(tail)
    return sentences


def count_syllables(word: str) -> int:
    """Heuristic syllable count, always at least 1: maximal vowel groups
    (a e i o u y), minus a terminal silent "e" unless the word ends in "le"
    after a consonant. Pure numeral tokens count as one."""
    lowered = word.lower()
    if lowered.isdigit():
        return 1
    groups = 0
    previous_vowel = False
    for ch in lowered:
        is_vowel = ch in _VOWELS
        if is_vowel and not previous_vowel:
            groups += 1
        previous_vowel = is_vowel
    if lowered.endswith("e"):
        ends_consonant_le = (
            len(lowered) >= 3
            and lowered.endswith("le")
            and lowered[-3] not in _VOWELS
        )
        if not ends_consonant_le:
            groups -= 1
    return max(groups, 1)


def lexical_density(text: str) -> float:
    """Percentage of tokens outside the pinned stopword list."""
    tokens = tokenize_words(text)
    if not tokens:
        raise PlumeError("empty-text", "no words to measure")
    stopwords = defaults.stopword_set()
    content = sum(1 for t in tokens if t.lower() not in stopwords)
    return 100.0 * content / len(tokens)


def fk_grade(text: str) -> float:
    """Flesch-Kincaid grade level:
    0.39 * (words/sentences) + 11.8 * (syllables/words) - 15.59.
    Unclamped; short simple text can score below zero."""
    tokens = tokenize_words(text)
    sentences = split_sentences(text)
    if not tokens or not sentences:
        raise PlumeError("empty-text", "no words to measure")
    syllables = sum(count_syllables(t) for t in tokens)
    return 0.39 * (len(tokens) / len(sentences)) + 11.8 * (syllables / len(tokens)) - 15.59


@dataclass(frozen=True)
class MetricsReport:
    word_count: int
    sentence_count: int
    syllable_count: int
    lexical_density: float
    fk_grade: float
    # Short hashes of the data files the numbers depend on.
    provenance: dict[str, str]


@dataclass(frozen=True)
class Conformance:
    """Per-metric judgment against a role guideline."""

    word_count: str  # below | within | above
    fk_grade: str
    lexical_density: str


def analyze(doc: DashboardDocument, snippet: str) -> MetricsReport:
    """Metrics for a snippet's current content. Placeholders carry template
    text, not authored prose, so they are not analyzable."""
    snip = doc.snippets.get(snippet)
    if snip is None:
        raise PlumeError("unknown-snippet", f"no such snippet: {snippet}")
    if snip.state is SnippetState.PLACEHOLDER:
        raise PlumeError("placeholder-not-analyzable", "placeholder text has no metrics")
    return analyze_text(snip.content)


def analyze_text(text: str) -> MetricsReport:
    """Assemble a report from the metric primitives (no hidden state)."""
    tokens = tokenize_words(text)
    if not tokens:
        raise PlumeError("empty-text", "no words to measure")
    sentences = split_sentences(text)
    return MetricsReport(
        word_count=len(tokens),
        sentence_count=len(sentences),
        syllable_count=sum(count_syllables(t) for t in tokens),
        lexical_density=lexical_density(text),
        fk_grade=fk_grade(text),
        provenance={
            "stopwords": defaults.data_file_hash("stopwords"),
            "guidelines": defaults.data_file_hash("guidelines"),
        },
    )


def _judge(value: float, low: float, high: float) -> str:
    if value < low:
        return "below"
    if value > high:
        return "above"
    return "within"


def conformance(report: MetricsReport, guideline: RoleGuideline) -> Conformance:
    """Compare each metric to its guideline range."""
    return Conformance(
        word_count=_judge(report.word_count, *guideline.word_range),
        fk_grade=_judge(report.fk_grade, *guideline.fk_range),
        lexical_density=_judge(report.lexical_density, *guideline.density_range),
    )
