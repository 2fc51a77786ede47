"""The dashboard document: frame tree, charts, text snippets, suggestions,
and canonical serialization.

A document is a plain mutable object graph; every mutating operation in this
module validates its preconditions, applies the change, and leaves the
document satisfying the tree invariants (checkable via
:func:`validate_document`). Serialization is canonical: key-sorted JSON,
UTF-8, LF line endings, geometry always written as floats, so saving the
same document twice yields identical bytes.
"""

from __future__ import annotations

import json
import math
import uuid
import xml.etree.ElementTree as ET
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from . import defaults
from .errors import PlumeError

SCHEMA_VERSION = "plume-doc/1"
KNOWN_SCHEMA_VERSIONS = frozenset({SCHEMA_VERSION})

# Canvas units are abstract floats; the UI maps them to pixels.
CANVAS_MAX = 10000.0
DEFAULT_ROOT_GEOMETRY = (0.0, 0.0, 1000.0, 1000.0)

# Containment/overlap tolerance so float arithmetic at shared edges
# never produces spurious violations.
GEOM_EPS = 1e-9

CREATED_BY = frozenset({"user", "suggestion", "generation"})


class TextRole(str, Enum):
    LABEL = "label"
    INSIGHT = "insight"
    CONTEXT = "context"
    ENCODING = "encoding"
    INTERACTION = "interaction"
    METADATA = "metadata"
    ANNOTATION = "annotation"


class SnippetState(str, Enum):
    PLACEHOLDER = "placeholder"
    GENERATED = "generated"
    LOCKED = "locked"


# The only legal state transitions; everything else is a bug.
ALLOWED_TRANSITIONS = frozenset(
    {
        (SnippetState.PLACEHOLDER, SnippetState.GENERATED),
        (SnippetState.PLACEHOLDER, SnippetState.LOCKED),
        (SnippetState.GENERATED, SnippetState.LOCKED),
        (SnippetState.LOCKED, SnippetState.GENERATED),
    }
)


@dataclass
class Rect:
    """Axis-aligned rectangle in canvas units, relative to the parent frame."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self):
        self.x = float(self.x)
        self.y = float(self.y)
        self.width = float(self.width)
        self.height = float(self.height)

    def contains(self, other: "Rect") -> bool:
        """Whether ``other`` (in coordinates relative to self) fits inside."""
        return (
            other.x >= -GEOM_EPS
            and other.y >= -GEOM_EPS
            and other.x + other.width <= self.width + GEOM_EPS
            and other.y + other.height <= self.height + GEOM_EPS
        )

    def overlaps(self, other: "Rect") -> bool:
        """Strict interior overlap; shared edges do not count."""
        return (
            self.x < other.x + other.width - GEOM_EPS
            and other.x < self.x + self.width - GEOM_EPS
            and self.y < other.y + other.height - GEOM_EPS
            and other.y < self.y + self.height - GEOM_EPS
        )


@dataclass
class Styling:
    format_class: str
    prominence: str


@dataclass
class Chart:
    id: str
    spec: Any  # parsed declarative chart specification
    rendered_svg: str | None = None
    title_hint: str | None = None


@dataclass
class TextSnippet:
    id: str
    frame: str
    role: TextRole
    state: SnippetState
    content: str
    styling: Styling
    created_by: str = "user"


@dataclass
class Frame:
    id: str
    parent: str | None
    geometry: Rect
    children: list[str] = field(default_factory=list)
    chart_ids: list[str] = field(default_factory=list)
    snippet_ids: list[str] = field(default_factory=list)


@dataclass
class Suggestion:
    id: str
    kind: str  # a text role or an advisory kind
    title: str
    description: str
    status: str = "pending"  # pending | accepted | dismissed

    @property
    def is_advisory(self) -> bool:
        return self.kind in defaults.ADVISORY_KINDS


@dataclass
class DashboardDocument:
    id: str
    root: str
    frames: dict[str, Frame]
    charts: dict[str, Chart] = field(default_factory=dict)
    snippets: dict[str, TextSnippet] = field(default_factory=dict)
    # Insertion order is the sidebar order.
    suggestions: dict[str, Suggestion] = field(default_factory=dict)
    # User-entered generation facts (e.g. author/source/caveats for metadata).
    user_facts: dict[str, str] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION


def _reading_key(frame: Frame) -> tuple[float, float]:
    # Reading order: top-to-bottom, left-to-right tie-break.
    return (frame.geometry.y, frame.geometry.x)


def _next_id(existing: dict, prefix: str) -> str:
    top = 0
    for key in existing:
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            top = max(top, int(key[len(prefix):]))
    return f"{prefix}{top + 1}"


def _require_frame(doc: DashboardDocument, frame_id: str) -> Frame:
    frame = doc.frames.get(frame_id)
    if frame is None:
        raise PlumeError("unknown-frame", f"no such frame: {frame_id}")
    return frame


def _require_snippet(doc: DashboardDocument, snippet_id: str) -> TextSnippet:
    snippet = doc.snippets.get(snippet_id)
    if snippet is None:
        raise PlumeError("unknown-snippet", f"no such snippet: {snippet_id}")
    return snippet


def _coerce_role(role: TextRole | str) -> TextRole:
    try:
        return TextRole(role)
    except ValueError:
        raise PlumeError("invalid-role", f"not a text role: {role!r}") from None


def _coerce_state(state: SnippetState | str) -> SnippetState:
    try:
        return SnippetState(state)
    except ValueError:
        raise PlumeError("invalid-state", f"not a snippet state: {state!r}") from None


def default_suggestions() -> dict[str, Suggestion]:
    """The fixed set of ten pending suggestions a fresh document carries."""
    out: dict[str, Suggestion] = {}
    for kind in defaults.suggestion_order():
        sid = f"sg-{kind}"
        if kind in defaults.ADVISORY_KINDS:
            title, description = defaults.advisory_text(kind)
        else:
            rule = defaults.placement_rule(kind)
            title, description = rule.title, rule.description
        out[sid] = Suggestion(id=sid, kind=kind, title=title, description=description)
    return out


def create_document(doc_id: str | None = None) -> DashboardDocument:
    """A new document: one empty root frame, no charts or snippets, all
    suggestions pending."""
    root = Frame(id="f1", parent=None, geometry=Rect(*DEFAULT_ROOT_GEOMETRY))
    return DashboardDocument(
        id=doc_id if doc_id is not None else uuid.uuid4().hex,
        root=root.id,
        frames={root.id: root},
        suggestions=default_suggestions(),
    )


def _check_geometry_value(rect: Rect) -> None:
    for value in (rect.x, rect.y, rect.width, rect.height):
        if not math.isfinite(value):
            raise PlumeError("invalid-geometry", "geometry values must be finite")
    if rect.width <= 0 or rect.height <= 0:
        raise PlumeError("invalid-geometry", "width and height must be positive")


def _check_fits(parent: Frame, rect: Rect) -> None:
    if not parent.geometry.contains(rect):
        raise PlumeError(
            "geometry-out-of-bounds",
            f"geometry does not fit inside frame {parent.id}",
        )


def _check_siblings(
    doc: DashboardDocument, parent: Frame, rect: Rect, ignore: str | None = None
) -> None:
    for child_id in parent.children:
        if child_id == ignore:
            continue
        if doc.frames[child_id].geometry.overlaps(rect):
            raise PlumeError(
                "sibling-overlap",
                f"geometry overlaps sibling frame {child_id}",
            )


def _insert_child(doc: DashboardDocument, parent: Frame, frame_id: str) -> None:
    keys = [_reading_key(doc.frames[c]) for c in parent.children]
    index = bisect_right(keys, _reading_key(doc.frames[frame_id]))
    parent.children.insert(index, frame_id)


def add_frame(
    doc: DashboardDocument, parent: str, geometry: Rect | tuple
) -> str:
    """Add an empty frame under ``parent``, slotted at its reading-order
    position among the existing siblings."""
    parent_frame = doc.frames.get(parent)
    if parent_frame is None:
        raise PlumeError("unknown-parent", f"no such parent frame: {parent}")
    rect = geometry if isinstance(geometry, Rect) else Rect(*geometry)
    _check_geometry_value(rect)
    _check_fits(parent_frame, rect)
    _check_siblings(doc, parent_frame, rect)
    frame_id = _next_id(doc.frames, "f")
    doc.frames[frame_id] = Frame(id=frame_id, parent=parent, geometry=rect)
    _insert_child(doc, parent_frame, frame_id)
    return frame_id


def add_chart(
    doc: DashboardDocument,
    frame: str,
    spec: Any,
    rendered_svg: str | None = None,
    title_hint: str | None = None,
) -> str:
    """Attach a chart to a frame. ``spec`` may be structured data or a JSON
    string; frames hold at most one chart (nest frames to group charts)."""
    target = _require_frame(doc, frame)
    if target.chart_ids:
        raise PlumeError(
            "frame-already-has-chart",
            f"frame {frame} already holds a chart; nest frames to group charts",
        )
    if isinstance(spec, (bytes, str)):
        try:
            parsed = json.loads(spec)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise PlumeError("malformed-spec", f"chart spec does not parse: {exc}") from None
    elif isinstance(spec, (dict, list)):
        parsed = spec
    else:
        raise PlumeError("malformed-spec", "chart spec must be structured data or JSON text")
    if rendered_svg is not None:
        try:
            ET.fromstring(rendered_svg)
        except ET.ParseError as exc:
            raise PlumeError("malformed-spec", f"rendered_svg is not well-formed: {exc}") from None
    chart_id = _next_id(doc.charts, "c")
    doc.charts[chart_id] = Chart(
        id=chart_id, spec=parsed, rendered_svg=rendered_svg, title_hint=title_hint
    )
    target.chart_ids.append(chart_id)
    return chart_id


def _insert_snippet_at_rank(doc: DashboardDocument, frame: Frame, snippet_id: str) -> None:
    rank = defaults.ROLE_RANK[doc.snippets[snippet_id].role.value]
    ranks = [defaults.ROLE_RANK[doc.snippets[s].role.value] for s in frame.snippet_ids]
    frame.snippet_ids.insert(bisect_right(ranks, rank), snippet_id)


def add_snippet(
    doc: DashboardDocument,
    frame: str,
    role: TextRole | str,
    content: str,
    state: SnippetState | str,
    styling: Styling | None = None,
    created_by: str = "user",
) -> str:
    """Add a snippet at its role's default position within the frame
    (heading roles first, footnote roles last; stable within a rank)."""
    target = _require_frame(doc, frame)
    role = _coerce_role(role)
    state = _coerce_state(state)
    if created_by not in CREATED_BY:
        raise PlumeError("invalid-state", f"not a creator: {created_by!r}")
    if state is SnippetState.PLACEHOLDER and content != defaults.placeholder_text(role.value):
        raise PlumeError(
            "inconsistent-state",
            "placeholder snippets must carry the role's placeholder template",
        )
    if state is SnippetState.LOCKED and not content:
        raise PlumeError("inconsistent-state", "locked snippets must have content")
    if styling is None:
        rule = defaults.placement_rule(role.value)
        at_root = frame == doc.root
        styling = Styling(
            format_class=rule.format_class_at_root if at_root else rule.format_class,
            prominence=rule.prominence,
        )
    snippet_id = _next_id(doc.snippets, "s")
    doc.snippets[snippet_id] = TextSnippet(
        id=snippet_id,
        frame=frame,
        role=role,
        state=state,
        content=content,
        styling=styling,
        created_by=created_by,
    )
    _insert_snippet_at_rank(doc, target, snippet_id)
    return snippet_id


def edit_snippet(doc: DashboardDocument, snippet: str, new_content: str) -> None:
    """Replace a snippet's content. A manual edit implies authorial intent,
    so the snippet locks."""
    target = _require_snippet(doc, snippet)
    if not new_content:
        raise PlumeError("empty-content", "snippet content cannot be empty")
    target.content = new_content
    target.state = SnippetState.LOCKED


def set_locked(doc: DashboardDocument, snippet: str, locked: bool) -> None:
    """Toggle a snippet between generated and locked. Placeholders cannot be
    locked (there is nothing to pin)."""
    target = _require_snippet(doc, snippet)
    if locked:
        if target.state is SnippetState.PLACEHOLDER:
            raise PlumeError("cannot-lock-placeholder", "placeholders cannot be locked")
        target.state = SnippetState.LOCKED
    elif target.state is SnippetState.LOCKED:
        target.state = SnippetState.GENERATED


def set_styling(
    doc: DashboardDocument,
    snippet: str,
    format_class: str | None = None,
    prominence: str | None = None,
) -> None:
    """Override a snippet's formatting (role defaults are just defaults)."""
    target = _require_snippet(doc, snippet)
    if format_class is not None:
        if format_class not in defaults.FORMAT_CLASSES:
            raise PlumeError("invalid-state", f"not a format class: {format_class!r}")
        target.styling.format_class = format_class
    if prominence is not None:
        if prominence not in defaults.PROMINENCES:
            raise PlumeError("invalid-state", f"not a prominence: {prominence!r}")
        target.styling.prominence = prominence


def set_snippet_role(doc: DashboardDocument, snippet: str, role: TextRole | str) -> None:
    """Re-role a snippet and re-slot it at the new role's rank position.
    Placeholders swap to the new role's template."""
    target = _require_snippet(doc, snippet)
    role = _coerce_role(role)
    if role is target.role:
        return
    target.role = role
    if target.state is SnippetState.PLACEHOLDER:
        target.content = defaults.placeholder_text(role.value)
    frame = doc.frames[target.frame]
    frame.snippet_ids.remove(snippet)
    _insert_snippet_at_rank(doc, frame, snippet)


def set_user_facts(doc: DashboardDocument, snippet: str, facts: str) -> None:
    """Record user-supplied facts (author, source, caveats) that generation
    may require; an empty string clears them."""
    _require_snippet(doc, snippet)
    if facts:
        doc.user_facts[snippet] = facts
    else:
        doc.user_facts.pop(snippet, None)


def remove_snippet(doc: DashboardDocument, snippet: str) -> None:
    """Delete a snippet from its frame and the document."""
    target = _require_snippet(doc, snippet)
    doc.frames[target.frame].snippet_ids.remove(snippet)
    doc.user_facts.pop(snippet, None)
    del doc.snippets[snippet]


def subtree_frame_ids(doc: DashboardDocument, frame_id: str) -> list[str]:
    """Preorder frame ids of the subtree rooted at ``frame_id``."""
    out: list[str] = []
    stack = [frame_id]
    while stack:
        current = stack.pop()
        out.append(current)
        stack.extend(reversed(doc.frames[current].children))
    return out


def set_frame_geometry(doc: DashboardDocument, frame: str, geometry: Rect | tuple) -> None:
    """Resize/reposition a frame in place (same parent) and re-slot it in
    reading order. Children keep their relative coordinates."""
    target = _require_frame(doc, frame)
    rect = geometry if isinstance(geometry, Rect) else Rect(*geometry)
    _check_geometry_value(rect)
    if target.parent is None:
        if not Rect(0.0, 0.0, CANVAS_MAX, CANVAS_MAX).contains(rect):
            raise PlumeError("geometry-out-of-bounds", "root frame exceeds the canvas")
    else:
        parent = doc.frames[target.parent]
        _check_fits(parent, rect)
        _check_siblings(doc, parent, rect, ignore=frame)
    for child_id in target.children:
        if not rect.contains(doc.frames[child_id].geometry):
            raise PlumeError(
                "geometry-out-of-bounds",
                f"child frame {child_id} would no longer fit",
            )
    target.geometry = rect
    if target.parent is not None:
        parent = doc.frames[target.parent]
        parent.children.remove(frame)
        _insert_child(doc, parent, frame)


def move_frame(
    doc: DashboardDocument, frame: str, new_parent: str, geometry: Rect | tuple
) -> None:
    """Re-parent a subtree. Scopes derived from tree position follow the
    move automatically because they are computed, not stored."""
    target = _require_frame(doc, frame)
    if target.parent is None:
        raise PlumeError("cannot-move-root", "the root frame cannot be moved")
    if new_parent in subtree_frame_ids(doc, frame):
        raise PlumeError("cycle-would-form", "cannot move a frame into its own subtree")
    parent_frame = doc.frames.get(new_parent)
    if parent_frame is None:
        raise PlumeError("unknown-parent", f"no such parent frame: {new_parent}")
    rect = geometry if isinstance(geometry, Rect) else Rect(*geometry)
    _check_geometry_value(rect)
    _check_fits(parent_frame, rect)
    _check_siblings(doc, parent_frame, rect, ignore=frame)
    for child_id in target.children:
        if not rect.contains(doc.frames[child_id].geometry):
            raise PlumeError(
                "geometry-out-of-bounds",
                f"child frame {child_id} would no longer fit",
            )
    doc.frames[target.parent].children.remove(frame)
    target.parent = new_parent
    target.geometry = rect
    _insert_child(doc, parent_frame, frame)


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------


def _rect_to_dict(rect: Rect) -> dict:
    return {
        "x": float(rect.x),
        "y": float(rect.y),
        "width": float(rect.width),
        "height": float(rect.height),
    }


def to_dict(doc: DashboardDocument) -> dict:
    """Plain-data form of the document (the "plume-doc/1" shape)."""
    return {
        "schema_version": doc.schema_version,
        "id": doc.id,
        "root": doc.root,
        "frames": {
            fid: {
                "id": f.id,
                "parent": f.parent,
                "geometry": _rect_to_dict(f.geometry),
                "children": list(f.children),
                "chart_ids": list(f.chart_ids),
                "snippet_ids": list(f.snippet_ids),
            }
            for fid, f in doc.frames.items()
        },
        "charts": {
            cid: {
                "id": c.id,
                "spec": c.spec,
                "rendered_svg": c.rendered_svg,
                "title_hint": c.title_hint,
            }
            for cid, c in doc.charts.items()
        },
        "snippets": {
            sid: {
                "id": s.id,
                "frame": s.frame,
                "role": s.role.value,
                "state": s.state.value,
                "content": s.content,
                "styling": {
                    "format_class": s.styling.format_class,
                    "prominence": s.styling.prominence,
                },
                "created_by": s.created_by,
            }
            for sid, s in doc.snippets.items()
        },
        "suggestions": [
            {
                "id": g.id,
                "kind": g.kind,
                "title": g.title,
                "description": g.description,
                "status": g.status,
            }
            for g in doc.suggestions.values()
        ],
        "user_facts": dict(doc.user_facts),
    }


def save(doc: DashboardDocument) -> bytes:
    """Canonical bytes: key-sorted JSON, two-space indent, UTF-8, LF,
    trailing newline. Saving twice yields identical bytes."""
    text = json.dumps(to_dict(doc), sort_keys=True, ensure_ascii=False, indent=2)
    return (text + "\n").encode("utf-8")


def _expect(mapping: Any, key: str, kind: type, where: str, optional: bool = False) -> Any:
    if not isinstance(mapping, dict):
        raise PlumeError("malformed-document", f"{where} must be an object")
    if key not in mapping:
        if optional:
            return None
        raise PlumeError("malformed-document", f"{where} is missing {key!r}")
    value = mapping[key]
    if value is None and optional:
        return None
    if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise PlumeError("malformed-document", f"{where}.{key} has the wrong type")
    return value


def from_dict(raw: Any) -> DashboardDocument:
    """Build a document from plain data, checking shape then invariants."""
    if not isinstance(raw, dict):
        raise PlumeError("malformed-document", "document must be a JSON object")
    version = raw.get("schema_version")
    if version not in KNOWN_SCHEMA_VERSIONS:
        raise PlumeError("unknown-schema-version", f"unknown schema_version: {version!r}")

    frames: dict[str, Frame] = {}
    for fid, f in _expect(raw, "frames", dict, "document").items():
        geometry = _expect(f, "geometry", dict, f"frame {fid}")
        rect = Rect(
            _expect(geometry, "x", float, f"frame {fid} geometry"),
            _expect(geometry, "y", float, f"frame {fid} geometry"),
            _expect(geometry, "width", float, f"frame {fid} geometry"),
            _expect(geometry, "height", float, f"frame {fid} geometry"),
        )
        frames[fid] = Frame(
            id=_expect(f, "id", str, f"frame {fid}"),
            parent=_expect(f, "parent", str, f"frame {fid}", optional=True),
            geometry=rect,
            children=list(_expect(f, "children", list, f"frame {fid}")),
            chart_ids=list(_expect(f, "chart_ids", list, f"frame {fid}")),
            snippet_ids=list(_expect(f, "snippet_ids", list, f"frame {fid}")),
        )

    charts: dict[str, Chart] = {}
    for cid, c in _expect(raw, "charts", dict, "document").items():
        spec = c.get("spec") if isinstance(c, dict) else None
        if not isinstance(spec, (dict, list)):
            raise PlumeError("malformed-document", f"chart {cid} spec must be structured data")
        charts[cid] = Chart(
            id=_expect(c, "id", str, f"chart {cid}"),
            spec=spec,
            rendered_svg=_expect(c, "rendered_svg", str, f"chart {cid}", optional=True),
            title_hint=_expect(c, "title_hint", str, f"chart {cid}", optional=True),
        )

    snippets: dict[str, TextSnippet] = {}
    for sid, s in _expect(raw, "snippets", dict, "document").items():
        styling = _expect(s, "styling", dict, f"snippet {sid}")
        try:
            role = TextRole(_expect(s, "role", str, f"snippet {sid}"))
            state = SnippetState(_expect(s, "state", str, f"snippet {sid}"))
        except ValueError as exc:
            raise PlumeError("malformed-document", f"snippet {sid}: {exc}") from None
        snippets[sid] = TextSnippet(
            id=_expect(s, "id", str, f"snippet {sid}"),
            frame=_expect(s, "frame", str, f"snippet {sid}"),
            role=role,
            state=state,
            content=_expect(s, "content", str, f"snippet {sid}"),
            styling=Styling(
                format_class=_expect(styling, "format_class", str, f"snippet {sid} styling"),
                prominence=_expect(styling, "prominence", str, f"snippet {sid} styling"),
            ),
            created_by=_expect(s, "created_by", str, f"snippet {sid}"),
        )

    suggestions: dict[str, Suggestion] = {}
    for g in _expect(raw, "suggestions", list, "document"):
        suggestion = Suggestion(
            id=_expect(g, "id", str, "suggestion"),
            kind=_expect(g, "kind", str, "suggestion"),
            title=_expect(g, "title", str, "suggestion"),
            description=_expect(g, "description", str, "suggestion"),
            status=_expect(g, "status", str, "suggestion"),
        )
        if suggestion.id in suggestions:
            raise PlumeError("malformed-document", f"duplicate suggestion id {suggestion.id}")
        suggestions[suggestion.id] = suggestion

    facts_raw = raw.get("user_facts", {})
    if not isinstance(facts_raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in facts_raw.items()
    ):
        raise PlumeError("malformed-document", "user_facts must map snippet ids to strings")

    doc = DashboardDocument(
        id=_expect(raw, "id", str, "document"),
        root=_expect(raw, "root", str, "document"),
        frames=frames,
        charts=charts,
        snippets=snippets,
        suggestions=suggestions,
        user_facts=dict(facts_raw),
        schema_version=version,
    )
    validate_document(doc)
    return doc


def load(data: bytes | str) -> DashboardDocument:
    """Parse canonical bytes back into a document, rejecting anything that
    breaks the schema or the tree invariants."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise PlumeError("malformed-document", f"not UTF-8: {exc}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise PlumeError("malformed-document", f"not valid JSON: {exc}") from None
    return from_dict(raw)


# ---------------------------------------------------------------------------
# Invariant validation
# ---------------------------------------------------------------------------


def validate_document(doc: DashboardDocument) -> None:
    """Check every structural invariant; raises invariant-violation on the
    first breach. Cheap enough to run after every mutation in tests."""

    def bad(message: str) -> PlumeError:
        return PlumeError("invariant-violation", message)

    if doc.root not in doc.frames:
        raise bad(f"root frame {doc.root} does not exist")

    roots = [fid for fid, f in doc.frames.items() if f.parent is None]
    if roots != [doc.root]:
        raise bad(f"expected exactly one parentless frame ({doc.root}), found {roots}")

    for fid, frame in doc.frames.items():
        if frame.id != fid:
            raise bad(f"frame key {fid} does not match its id {frame.id}")
        if frame.parent is not None:
            parent = doc.frames.get(frame.parent)
            if parent is None:
                raise bad(f"frame {fid} has unknown parent {frame.parent}")
            if fid not in parent.children:
                raise bad(f"frame {fid} missing from parent {frame.parent} children")
        if len(set(frame.children)) != len(frame.children):
            raise bad(f"frame {fid} has duplicate children")
        for child_id in frame.children:
            child = doc.frames.get(child_id)
            if child is None:
                raise bad(f"frame {fid} lists unknown child {child_id}")
            if child.parent != fid:
                raise bad(f"frame {child_id} parent link does not match {fid}")

    # Cycle/reachability: walking up from every frame must reach the root.
    for fid in doc.frames:
        seen = set()
        current: str | None = fid
        while current is not None:
            if current in seen:
                raise bad(f"parent links form a cycle at {current}")
            seen.add(current)
            current = doc.frames[current].parent
        if doc.root not in seen:
            raise bad(f"frame {fid} is not attached to the root")

    for fid, frame in doc.frames.items():
        rect = frame.geometry
        _check_geometry_value(rect)
        if frame.parent is None:
            if not Rect(0.0, 0.0, CANVAS_MAX, CANVAS_MAX).contains(rect):
                raise bad("root frame exceeds the canvas")
        else:
            if not doc.frames[frame.parent].geometry.contains(rect):
                raise bad(f"frame {fid} sticks out of its parent")
        for i, a in enumerate(frame.children):
            for b in frame.children[i + 1:]:
                if doc.frames[a].geometry.overlaps(doc.frames[b].geometry):
                    raise bad(f"sibling frames {a} and {b} overlap")
        keys = [_reading_key(doc.frames[c]) for c in frame.children]
        if keys != sorted(keys):
            raise bad(f"children of {fid} are not in reading order")
        if len(frame.chart_ids) > 1:
            raise bad(f"frame {fid} holds more than one chart")

    chart_owner: dict[str, str] = {}
    snippet_owner: dict[str, str] = {}
    for fid, frame in doc.frames.items():
        for cid in frame.chart_ids:
            if cid not in doc.charts:
                raise bad(f"frame {fid} references unknown chart {cid}")
            if cid in chart_owner:
                raise bad(f"chart {cid} referenced by two frames")
            chart_owner[cid] = fid
        for sid in frame.snippet_ids:
            if sid not in doc.snippets:
                raise bad(f"frame {fid} references unknown snippet {sid}")
            if sid in snippet_owner:
                raise bad(f"snippet {sid} referenced by two frames")
            snippet_owner[sid] = fid
    for cid in doc.charts:
        if cid not in chart_owner:
            raise bad(f"chart {cid} is not referenced by any frame")
    for sid, snippet in doc.snippets.items():
        if sid not in snippet_owner:
            raise bad(f"snippet {sid} is not referenced by any frame")
        if snippet.frame != snippet_owner[sid]:
            raise bad(f"snippet {sid} frame backlink does not match its frame")
        if snippet.id != sid:
            raise bad(f"snippet key {sid} does not match its id")
        if snippet.created_by not in CREATED_BY:
            raise bad(f"snippet {sid} has unknown creator {snippet.created_by!r}")
        if snippet.styling.format_class not in defaults.FORMAT_CLASSES:
            raise bad(f"snippet {sid} has unknown format class")
        if snippet.styling.prominence not in defaults.PROMINENCES:
            raise bad(f"snippet {sid} has unknown prominence")
        if snippet.state is SnippetState.PLACEHOLDER:
            if snippet.content != defaults.placeholder_text(snippet.role.value):
                raise bad(f"placeholder snippet {sid} does not carry its template")
        if snippet.state is SnippetState.LOCKED and not snippet.content:
            raise bad(f"locked snippet {sid} has no content")

    for cid, chart in doc.charts.items():
        if chart.id != cid:
            raise bad(f"chart key {cid} does not match its id")
        if not isinstance(chart.spec, (dict, list)):
            raise bad(f"chart {cid} spec is not structured data")
        if chart.rendered_svg is not None:
            try:
                ET.fromstring(chart.rendered_svg)
            except ET.ParseError:
                raise bad(f"chart {cid} rendered_svg is not well-formed") from None

    seen_kinds: set[str] = set()
    valid_kinds = set(defaults.ROLES) | set(defaults.ADVISORY_KINDS)
    for sug in doc.suggestions.values():
        if sug.kind not in valid_kinds:
            raise bad(f"suggestion {sug.id} has unknown kind {sug.kind!r}")
        if sug.kind in seen_kinds:
            raise bad(f"more than one suggestion for kind {sug.kind!r}")
        seen_kinds.add(sug.kind)
        if sug.status not in ("pending", "accepted", "dismissed"):
            raise bad(f"suggestion {sug.id} has unknown status {sug.status!r}")
        if sug.is_advisory and sug.status == "accepted":
            raise bad(f"advisory suggestion {sug.id} cannot be accepted")

    for sid in doc.user_facts:
        if sid not in doc.snippets:
            raise bad(f"user_facts references unknown snippet {sid}")
