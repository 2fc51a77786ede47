"""Dashboard-level guidance: the suggestion sidebar, placeholder placement
on acceptance, and per-role defaults (templates, styling, placement).

Placement is driven by the rule table in the placement data file, evaluated
against the frame tree: role suggestions insert placeholders into every
matching frame that does not already carry a snippet of that role.
"""

from __future__ import annotations

from . import defaults
from .errors import PlumeError
from .model import (
    DashboardDocument,
    SnippetState,
    Styling,
    Suggestion,
    TextRole,
    add_snippet,
    subtree_frame_ids,
)

placeholder_text = defaults.placeholder_text


def default_styling(role: TextRole | str, at_root: bool = False) -> Styling:
    """The role's default formatting; labels render larger at the root."""
    role_value = role.value if isinstance(role, TextRole) else str(role)
    rule = defaults.placement_rule(role_value)
    return Styling(
        format_class=rule.format_class_at_root if at_root else rule.format_class,
        prominence=rule.prominence,
    )


def pending_suggestions(doc: DashboardDocument) -> list[Suggestion]:
    """Suggestions still awaiting a decision, in sidebar order."""
    return [s for s in doc.suggestions.values() if s.status == "pending"]


def _target_frames(doc: DashboardDocument, target: str) -> list[str]:
    frames = subtree_frame_ids(doc, doc.root)
    if target == "root_once":
        return [doc.root]
    if target == "every_section_frame":
        return frames
    if target == "every_leaf_chart_frame":
        return [fid for fid in frames if doc.frames[fid].chart_ids]
    raise PlumeError("invariant-violation", f"unknown placement target {target!r}")


def _frame_has_role(doc: DashboardDocument, frame_id: str, role: str) -> bool:
    return any(
        doc.snippets[sid].role.value == role
        for sid in doc.frames[frame_id].snippet_ids
    )


def accept_suggestion(doc: DashboardDocument, suggestion: str) -> list[str]:
    """Accept a role suggestion: insert its placeholder into every matching
    frame that lacks the role, and mark the suggestion accepted. Returns the
    created snippet ids (possibly empty)."""
    sug = doc.suggestions.get(suggestion)
    if sug is None:
        raise PlumeError("unknown-suggestion", f"no such suggestion: {suggestion}")
    if sug.status != "pending":
        raise PlumeError("already-resolved", f"suggestion {suggestion} is {sug.status}")
    if sug.is_advisory:
        raise PlumeError(
            "advisory-not-acceptable",
            "advisory suggestions can only be dismissed",
        )
    rule = defaults.placement_rule(sug.kind)
    created: list[str] = []
    for fid in _target_frames(doc, rule.target):
        if _frame_has_role(doc, fid, sug.kind):
            continue
        created.append(
            add_snippet(
                doc,
                frame=fid,
                role=sug.kind,
                content=rule.placeholder,
                state=SnippetState.PLACEHOLDER,
                styling=default_styling(sug.kind, at_root=fid == doc.root),
                created_by="suggestion",
            )
        )
    sug.status = "accepted"
    return created


def dismiss_suggestion(doc: DashboardDocument, suggestion: str) -> None:
    """Dismiss any pending suggestion (role or advisory)."""
    sug = doc.suggestions.get(suggestion)
    if sug is None:
        raise PlumeError("unknown-suggestion", f"no such suggestion: {suggestion}")
    if sug.status != "pending":
        raise PlumeError("already-resolved", f"suggestion {suggestion} is {sug.status}")
    sug.status = "dismissed"


def accept_all(doc: DashboardDocument) -> list[str]:
    """Accept every pending role suggestion in sidebar order. Advisories are
    left pending. Calling again creates nothing."""
    created: list[str] = []
    for sug in list(doc.suggestions.values()):
        if sug.status == "pending" and not sug.is_advisory:
            created.extend(accept_suggestion(doc, sug.id))
    return created
