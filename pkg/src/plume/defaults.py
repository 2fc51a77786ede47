"""Loading of the tunable data files: placement rules, metric guidelines,
the pinned stopword list, few-shot banks, and the role/context tables.

All of these ship inside the package under ``plume/data`` but can be swapped
at deployment time via :func:`configure` so placement and guideline tuning
never requires a code change.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import PlumeError

ROLES = ("label", "insight", "context", "encoding", "interaction", "metadata", "annotation")
ADVISORY_KINDS = ("readability", "reading_order", "formatting")

FORMAT_CLASSES = frozenset(
    {"heading_large", "heading_section", "body", "note", "footnote", "overlay_annotation"}
)
PROMINENCES = frozenset({"high", "medium", "low"})

# Within-frame ordering rank per role; lower ranks sit higher in the frame.
# Ranks are distinct so placement never depends on insertion order across
# roles; same-role snippets keep insertion order.
ROLE_RANK = {
    "label": 0,
    "context": 1,
    "annotation": 2,
    "insight": 3,
    "encoding": 4,
    "interaction": 5,
    "metadata": 6,
}

_DATA_KEYS = ("rules", "guidelines", "stopwords", "few_shot", "role_context")

# Active data file paths; None means "use the packaged copy".
_paths: dict[str, Path | None] = {key: None for key in _DATA_KEYS}
_cache: dict[str, object] = {}

_PACKAGED = {
    "rules": "placement_rules.json",
    "guidelines": "guidelines.json",
    "stopwords": "stopwords.txt",
    "few_shot": "few_shot.json",
    "role_context": "role_context.json",
}


def configure(
    rules: str | Path | None = None,
    guidelines: str | Path | None = None,
    stopwords: str | Path | None = None,
    few_shot: str | Path | None = None,
    role_context: str | Path | None = None,
) -> None:
    """Point one or more data files at deployment-specific copies."""
    overrides = {
        "rules": rules,
        "guidelines": guidelines,
        "stopwords": stopwords,
        "few_shot": few_shot,
        "role_context": role_context,
    }
    for key, value in overrides.items():
        if value is not None:
            _paths[key] = Path(value)
            _cache.pop(key, None)
            _cache.pop(key + ":hash", None)


def reset() -> None:
    """Restore the packaged data files (used between tests)."""
    for key in _DATA_KEYS:
        _paths[key] = None
    _cache.clear()


def _read_bytes(key: str) -> bytes:
    path = _paths[key]
    if path is not None:
        return path.read_bytes()
    return resources.files("plume.data").joinpath(_PACKAGED[key]).read_bytes()


def data_file_hash(key: str) -> str:
    """Short sha256 of a data file, for metrics provenance."""
    cache_key = key + ":hash"
    if cache_key not in _cache:
        _cache[cache_key] = hashlib.sha256(_read_bytes(key)).hexdigest()[:12]
    return _cache[cache_key]  # type: ignore[return-value]


def _load_json(key: str) -> dict:
    if key not in _cache:
        _cache[key] = json.loads(_read_bytes(key).decode("utf-8"))
    return _cache[key]  # type: ignore[return-value]


def stopword_set() -> frozenset[str]:
    """The pinned, lowercase English stopword list."""
    if "stopwords" not in _cache:
        words = []
        for line in _read_bytes("stopwords").decode("utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                words.append(line.lower())
        _cache["stopwords"] = frozenset(words)
    return _cache["stopwords"]  # type: ignore[return-value]


@dataclass(frozen=True)
class PlacementRule:
    """Where a role's placeholders go and how they are styled."""

    role: str
    target: str  # root_once | every_section_frame | every_leaf_chart_frame
    position: str  # top_of_frame | under_each_chart | bottom_of_frame | under_dashboard_title
    format_class: str
    format_class_at_root: str
    prominence: str
    placeholder: str
    title: str
    description: str


def placement_rule(role: str) -> PlacementRule:
    if role not in ROLES:
        raise PlumeError("invalid-role", f"not a text role: {role!r}")
    raw = _load_json("rules")["roles"][role]
    return PlacementRule(
        role=role,
        target=raw["target"],
        position=raw["position"],
        format_class=raw["format_class"],
        format_class_at_root=raw.get("format_class_at_root", raw["format_class"]),
        prominence=raw["prominence"],
        placeholder=raw["placeholder"],
        title=raw["title"],
        description=raw["description"],
    )


def advisory_text(kind: str) -> tuple[str, str]:
    """(title, description) for an advisory suggestion."""
    raw = _load_json("rules")["advisories"][kind]
    return raw["title"], raw["description"]


def suggestion_order() -> list[str]:
    """Sidebar order of suggestion kinds (roles first, advisories last)."""
    return list(_load_json("rules")["suggestion_order"])


def placeholder_text(role: str) -> str:
    """The fixed template inserted when a role suggestion is accepted."""
    return placement_rule(role).placeholder


@dataclass(frozen=True)
class RoleGuideline:
    """Per-role target ranges that metrics are judged against."""

    role: str
    word_range: tuple[int, int]
    fk_range: tuple[float, float]
    density_range: tuple[float, float]
    advisory: str


def guideline_for(role: str) -> RoleGuideline:
    if role not in ROLES:
        raise PlumeError("invalid-role", f"not a text role: {role!r}")
    raw = _load_json("guidelines")["roles"][role]
    lo_w, hi_w = raw["word_range"]
    lo_f, hi_f = raw["fk_range"]
    lo_d, hi_d = raw["density_range"]
    return RoleGuideline(
        role=role,
        word_range=(int(lo_w), int(hi_w)),
        fk_range=(float(lo_f), float(hi_f)),
        density_range=(float(lo_d), float(hi_d)),
        advisory=raw["advisory"],
    )


def few_shot_examples(role: str) -> list[str]:
    """2-3 short reference texts for a role, used in generation prompts."""
    return list(_load_json("few_shot")["examples"].get(role, []))


def required_context(role: str) -> tuple[str, ...]:
    """Context block kinds a role needs when generating from charts."""
    return tuple(_load_json("role_context")["required_context"].get(role, []))


def compatible_downstream(role: str) -> tuple[str, ...]:
    """Descendant roles whose text feeds this role's generation."""
    return tuple(_load_json("role_context")["compatible_downstream"].get(role, []))
