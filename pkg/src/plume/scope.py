"""Everything derived from a snippet's position in the frame tree: its
semantic scope, the frames that feed its generation, the downstream text it
may summarize, and the bottom-up order in which pending text is generated.

All functions here are pure reads over a document snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import defaults
from .errors import PlumeError
from .model import DashboardDocument, SnippetState, TextRole, subtree_frame_ids


@dataclass(frozen=True)
class Scope:
    """What a snippet talks about: one chart, a group, or the dashboard."""

    kind: str  # single_chart | chart_group | whole_dashboard
    covered_chart_ids: frozenset[str]


@dataclass
class GenerationPlan:
    """Snippets pending generation, deepest tree level first."""

    order: list[str] = field(default_factory=list)
    levels: list[list[str]] = field(default_factory=list)


def frame_depth(doc: DashboardDocument, frame_id: str) -> int:
    """Distance from the root (root is 0)."""
    depth = 0
    current = doc.frames[frame_id].parent
    while current is not None:
        depth += 1
        current = doc.frames[current].parent
    return depth


def frame_path(doc: DashboardDocument, frame_id: str) -> str:
    """Slash-joined frame ids from the root, e.g. ``/f1/f3``."""
    parts: list[str] = []
    current: str | None = frame_id
    while current is not None:
        parts.append(current)
        current = doc.frames[current].parent
    return "/" + "/".join(reversed(parts))


def reading_order(doc: DashboardDocument) -> list[str]:
    """Snippet ids in document reading order: each frame's own snippets
    (top to bottom), then its child frames in layout order, depth first."""
    out: list[str] = []
    for fid in subtree_frame_ids(doc, doc.root):
        out.extend(doc.frames[fid].snippet_ids)
    return out


def scope_of(doc: DashboardDocument, snippet: str) -> Scope:
    """The set of charts in the snippet's frame subtree. A snippet in the
    root frame always scopes the whole dashboard."""
    snip = doc.snippets.get(snippet)
    if snip is None:
        raise PlumeError("unknown-snippet", f"no such snippet: {snippet}")
    covered = [
        cid
        for fid in subtree_frame_ids(doc, snip.frame)
        for cid in doc.frames[fid].chart_ids
    ]
    if snip.frame == doc.root:
        kind = "whole_dashboard"
    elif len(covered) == 1:
        kind = "single_chart"
    else:
        kind = "chart_group"
    return Scope(kind=kind, covered_chart_ids=frozenset(covered))


def highlight_set(doc: DashboardDocument, snippet: str) -> set[str]:
    """Frames whose content feeds this snippet's generation: its own frame
    plus all descendants. Sibling subtrees are never included."""
    snip = doc.snippets.get(snippet)
    if snip is None:
        raise PlumeError("unknown-snippet", f"no such snippet: {snippet}")
    return set(subtree_frame_ids(doc, snip.frame))


def downstream_text(
    doc: DashboardDocument, frame: str, role: TextRole | str
) -> list[tuple[str, str]]:
    """(snippet-id, content) pairs for non-placeholder text of compatible
    roles in proper descendant frames, in reading order."""
    if frame not in doc.frames:
        raise PlumeError("unknown-frame", f"no such frame: {frame}")
    role_value = role.value if isinstance(role, TextRole) else str(role)
    compatible = set(defaults.compatible_downstream(role_value))
    out: list[tuple[str, str]] = []
    for fid in subtree_frame_ids(doc, frame):
        if fid == frame:
            continue
        for sid in doc.frames[fid].snippet_ids:
            snip = doc.snippets[sid]
            if snip.state is SnippetState.PLACEHOLDER:
                continue
            if snip.role.value in compatible:
                out.append((sid, snip.content))
    return out


def generation_plan(doc: DashboardDocument, targets: set[str] | list[str]) -> GenerationPlan:
    """Partition the targets into tree-depth levels, deepest first, so every
    snippet is generated before any snippet in an ancestor frame. Locked
    snippets are silently excluded."""
    position = {sid: i for i, sid in enumerate(reading_order(doc))}
    pending: list[str] = []
    for sid in targets:
        snip = doc.snippets.get(sid)
        if snip is None:
            raise PlumeError("unknown-snippet", f"no such snippet: {sid}")
        if snip.state is not SnippetState.LOCKED:
            pending.append(sid)
    by_depth: dict[int, list[str]] = {}
    for sid in pending:
        by_depth.setdefault(frame_depth(doc, doc.snippets[sid].frame), []).append(sid)
    plan = GenerationPlan()
    for depth in sorted(by_depth, reverse=True):
        level = sorted(by_depth[depth], key=position.__getitem__)
        plan.levels.append(level)
        plan.order.extend(level)
    return plan
