"""Walk the suggestion sidebar: list the ten suggestions, accept a few role
suggestions, and watch placeholders land in the right frames with the right
styling.

Run:  python3 demos/02_suggestions_and_placeholders.py
"""

from plume import (
    accept_all,
    accept_suggestion,
    add_chart,
    add_frame,
    create_document,
    pending_suggestions,
)

doc = create_document("suggestions-demo")
left = add_frame(doc, doc.root, (0, 0, 490, 1000))
right = add_frame(doc, doc.root, (510, 0, 490, 1000))
interactive = {
    "mark": "bar",
    "params": [{"name": "pick", "select": "point"}],
    "encoding": {"x": {"field": "region"}, "y": {"field": "sales"}},
}
add_chart(doc, left, interactive)
add_chart(doc, right, interactive)

print("sidebar on a fresh dashboard:")
for sug in pending_suggestions(doc):
    tag = "advisory" if sug.is_advisory else "role    "
    print(f"  [{tag}] {sug.title}")

print("\naccept 'label' -> one placeholder at the top of every frame:")
for sid in accept_suggestion(doc, "sg-label"):
    snip = doc.snippets[sid]
    print(f"  {sid} in {snip.frame}: {snip.content!r} ({snip.styling.format_class})")

print("\naccept 'metadata' -> exactly one placeholder at the root bottom:")
for sid in accept_suggestion(doc, "sg-metadata"):
    snip = doc.snippets[sid]
    position = doc.frames[snip.frame].snippet_ids.index(sid)
    print(f"  {sid} in {snip.frame} at position {position} ({snip.styling.format_class})")

print("\naccept everything else at once:")
created = accept_all(doc)
print(f"  {len(created)} more placeholders; running accept_all again creates {len(accept_all(doc))}")

print("\nfinal reading order per frame:")
for fid, frame in doc.frames.items():
    roles = [doc.snippets[s].role.value for s in frame.snippet_ids]
    print(f"  {fid}: {roles}")
