"""Build a small two-city weather dashboard and inspect what the frame tree
gives you for free: semantic scopes, hover-highlight sets, and the bottom-up
generation order.

Run:  python3 demos/01_frames_and_scopes.py
"""

from plume import (
    add_chart,
    add_frame,
    add_snippet,
    create_document,
    generation_plan,
    highlight_set,
    scope_of,
)

LINE = {"mark": "line", "encoding": {"x": {"field": "month"}, "y": {"field": "value"}}}

doc = create_document("weather-demo")

# Left section: two stacked charts about Seattle. Right section: one chart.
seattle = add_frame(doc, doc.root, (0, 60, 620, 900))
newyork = add_frame(doc, doc.root, (640, 60, 360, 900))
wind = add_frame(doc, seattle, (10, 70, 600, 400))
rain = add_frame(doc, seattle, (10, 490, 600, 400))
temps = add_frame(doc, newyork, (10, 70, 340, 400))

for frame in (wind, rain, temps):
    add_chart(doc, frame, LINE, '<svg xmlns="http://www.w3.org/2000/svg"/>')

titles = {
    frame: add_snippet(doc, frame, "label", f"Title for {frame}", "generated")
    for frame in (doc.root, seattle, newyork, wind, rain, temps)
}

print("frame tree:")
def show(frame_id, indent=0):
    frame = doc.frames[frame_id]
    print("  " * indent + f"{frame_id}  charts={frame.chart_ids}  snippets={frame.snippet_ids}")
    for child in frame.children:
        show(child, indent + 1)
show(doc.root)

print("\nscopes (what each title talks about):")
for frame, snippet in titles.items():
    scope = scope_of(doc, snippet)
    print(f"  {snippet} in {frame:4} -> {scope.kind:16} charts={sorted(scope.covered_chart_ids)}")

print("\nhover highlight for the Seattle section title:")
print(" ", sorted(highlight_set(doc, titles[seattle])), "(the sibling section stays dark)")

print("\ngeneration order (deepest level first):")
plan = generation_plan(doc, list(titles.values()))
for depth, level in enumerate(plan.levels):
    print(f"  level {depth}: {level}")
