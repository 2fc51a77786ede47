"""Shared builders for tests: fixed document shapes and a seeded random
document generator whose geometry is valid by construction (recursive
subdivision with gaps, so siblings never overlap)."""

from __future__ import annotations

import random

from plume import defaults, model

LINE_SPEC = {
    "mark": "line",
    "encoding": {
        "x": {"field": "date", "type": "temporal"},
        "y": {"field": "value", "type": "quantitative"},
    },
}

BAND_SPEC = {
    "layer": [
        {"mark": "errorband", "encoding": {"y": {"field": "ci0"}, "y2": {"field": "ci1"}}},
        {"mark": "line", "encoding": {"y": {"field": "value"}}},
    ],
    "encoding": {"x": {"field": "date", "type": "temporal"}},
}

INTERACTIVE_SPEC = {
    "mark": "bar",
    "params": [{"name": "hover", "select": {"type": "point", "on": "mouseover"}}],
    "encoding": {
        "x": {"field": "region", "type": "nominal"},
        "y": {"field": "sales", "type": "quantitative"},
    },
}

SVG = '<svg xmlns="http://www.w3.org/2000/svg"><g><path d="M0 0L10 10"/></g></svg>'


def placeholder(role: str) -> str:
    return defaults.placeholder_text(role)


def two_leaf_doc(doc_id: str = "twoleaf", with_svg: bool = True) -> tuple[model.DashboardDocument, str, str]:
    """Root with two chart leaves (the placement-criterion shape)."""
    doc = model.create_document(doc_id)
    left = model.add_frame(doc, doc.root, (0, 0, 490, 1000))
    right = model.add_frame(doc, doc.root, (510, 0, 490, 1000))
    model.add_chart(doc, left, LINE_SPEC, SVG if with_svg else None)
    model.add_chart(doc, right, INTERACTIVE_SPEC, SVG if with_svg else None)
    return doc, left, right


def fig_tree_doc(doc_id: str = "figtree"):
    """Root -> two sections -> two chart leaves each, with a label snippet in
    every frame (placeholder state). Returns (doc, sections, leaves, labels)."""
    doc = model.create_document(doc_id)
    section_a = model.add_frame(doc, doc.root, (0, 0, 490, 1000))
    section_b = model.add_frame(doc, doc.root, (510, 0, 490, 1000))
    leaves = []
    for section, base in ((section_a, 0), (section_b, 0)):
        for i in range(2):
            leaf = model.add_frame(doc, section, (10, 60 + i * 470, 470, 440))
            model.add_chart(doc, leaf, LINE_SPEC, SVG)
            leaves.append(leaf)
    labels = {}
    for fid in [doc.root, section_a, section_b, *leaves]:
        labels[fid] = model.add_snippet(
            doc, fid, "label", placeholder("label"), "placeholder", created_by="suggestion"
        )
    return doc, (section_a, section_b), leaves, labels


def _subdivide(doc, rng, frame_id, depth, max_depth, budget):
    """Split a frame into up to three non-overlapping children, recursively."""
    if depth >= max_depth or budget[0] <= 0:
        return
    k = rng.randint(0, 3)
    k = min(k, budget[0])
    if k == 0:
        return
    rect = doc.frames[frame_id].geometry
    horizontal = rng.random() < 0.5
    total = rect.width if horizontal else rect.height
    cross = rect.height if horizontal else rect.width
    gap = total * 0.02
    usable = total - gap * (k + 1)
    if usable < k * 1.0 or cross < 2.0:
        return
    weights = [rng.uniform(0.5, 1.5) for _ in range(k)]
    scale = usable / sum(weights)
    position = gap
    children = []
    for weight in weights:
        size = weight * scale
        if horizontal:
            child_rect = (position, cross * 0.02, size, cross * 0.96)
        else:
            child_rect = (cross * 0.02, position, cross * 0.96, size)
        children.append(model.add_frame(doc, frame_id, child_rect))
        budget[0] -= 1
        position += size + gap
    for child in children:
        _subdivide(doc, rng, child, depth + 1, max_depth, budget)


def build_random_document(
    seed: int,
    max_depth: int = 6,
    max_frames: int = 60,
    chart_prob: float = 0.6,
    snippet_prob: float = 0.8,
    lock_prob: float = 0.2,
) -> model.DashboardDocument:
    rng = random.Random(seed)
    doc = model.create_document(f"rand{seed}")
    budget = [max_frames - 1]
    _subdivide(doc, rng, doc.root, 0, max_depth, budget)

    specs = [LINE_SPEC, BAND_SPEC, INTERACTIVE_SPEC]
    for fid in list(doc.frames):
        if not doc.frames[fid].children and rng.random() < chart_prob:
            model.add_chart(
                doc, fid, rng.choice(specs), SVG if rng.random() < 0.8 else None
            )

    counter = 0
    roles = list(defaults.ROLES)
    for fid in list(doc.frames):
        for _ in range(rng.randint(0, 3)):
            if rng.random() > snippet_prob:
                continue
            counter += 1
            role = rng.choice(roles)
            pick = rng.random()
            if pick < 0.4:
                model.add_snippet(doc, fid, role, placeholder(role), "placeholder")
            elif pick < 0.4 + lock_prob:
                model.add_snippet(doc, fid, role, f"Locked text number {counter}.", "locked")
            else:
                model.add_snippet(doc, fid, role, f"Generated text number {counter}.", "generated")
    return doc
