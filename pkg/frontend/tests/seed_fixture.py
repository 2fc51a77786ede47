"""Seed the UI test store with a template document: a section holding two
chart leaves, a sibling section with one chart leaf, generated titles
everywhere, and a generated context paragraph at the root. Tests copy the
template under fresh ids via PUT."""

import sys

from plume import model
from plume.store import DocumentStore

SPEC = {
    "mark": "line",
    "params": [{"name": "hover", "select": "point"}],
    "encoding": {
        "x": {"field": "month", "type": "temporal"},
        "y": {"field": "value", "type": "quantitative"},
    },
}

SVG = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="200" height="120">'
    '<path d="M0 100 L50 60 L100 80 L150 30 L200 50" fill="none"/></svg>'
)


def build(doc_id: str) -> model.DashboardDocument:
    doc = model.create_document(doc_id)
    section = model.add_frame(doc, doc.root, (0, 80, 620, 880))
    sibling = model.add_frame(doc, doc.root, (660, 80, 340, 880))
    leaf_a = model.add_frame(doc, section, (10, 70, 600, 380))
    leaf_b = model.add_frame(doc, section, (10, 470, 600, 380))
    sib_leaf = model.add_frame(doc, sibling, (10, 70, 320, 380))
    for leaf in (leaf_a, leaf_b, sib_leaf):
        model.add_chart(doc, leaf, SPEC, SVG)
    titles = {
        doc.root: "Weather Patterns in Two Cities",
        section: "Wind and Precipitation in Seattle",
        sibling: "Temperature in New York",
        leaf_a: "Wind Speed by Month",
        leaf_b: "Precipitation by Month",
        sib_leaf: "Temperature Range by Month",
    }
    for frame, title in titles.items():
        model.add_snippet(doc, frame, "label", title, "generated")
    model.add_snippet(
        doc,
        doc.root,
        "context",
        "This dashboard compares weather patterns across both client cities "
        "so travelers can decide what belongs in their luggage.",
        "generated",
    )
    model.validate_document(doc)
    return doc


if __name__ == "__main__":
    store = DocumentStore(sys.argv[1])
    store.create(build("uitemplate"))
    print("seeded uitemplate")
