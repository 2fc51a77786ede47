"""The full generation loop under the deterministic mock port: fill
placeholders bottom-up, lock a title, watch locked text steer every later
prompt, and refine a paragraph in place.

Run:  python3 demos/04_generation_workflow.py
"""

from plume import (
    accept_all,
    add_chart,
    add_frame,
    create_document,
    edit_snippet,
    generate_all,
    refine,
    set_user_facts,
)
from plume.generation import MockGenerator

SPEC = {
    "mark": "line",
    "params": [{"name": "hover", "select": "point"}],
    "encoding": {"x": {"field": "month"}, "y": {"field": "value"}},
}
SVG = '<svg xmlns="http://www.w3.org/2000/svg"><path d="M0 0L10 10"/></svg>'

doc = create_document("generation-demo")
for i in range(2):
    leaf = add_frame(doc, doc.root, (i * 510, 60, 490, 900))
    add_chart(doc, leaf, SPEC, SVG)

accept_all(doc)
for sid, snip in doc.snippets.items():
    if snip.role.value == "metadata":
        set_user_facts(doc, sid, "Author: demo. Source: sample ledger.")

port = MockGenerator()
report = generate_all(doc, list(doc.snippets), port)
print(f"generated {len(report.generated)} snippets, {len(report.failed)} failures")
for sid in report.generated:
    print(f"  {sid}: {doc.snippets[sid].content!r}")

root_label = next(s for s, v in doc.snippets.items() if v.role.value == "label" and v.frame == doc.root)
edit_snippet(doc, root_label, "How to Read This Dashboard")
print(f"\nmanually edited {root_label} -> state is now {doc.snippets[root_label].state.value}")

context = next(s for s, v in doc.snippets.items() if v.role.value == "context")
report = generate_all(doc, [context], port)
bundle = report.bundles[context]
print("\nregenerated the context paragraph; its prompt now carries:")
for block in bundle.context_blocks:
    print(f"  [{block.kind}] from {block.source}: {block.payload[:60]!r}")

print(f"\nsimplified context: {refine(doc, context, 'simplify', port)!r}")
print(f"locked title untouched: {doc.snippets[root_label].content!r}")
