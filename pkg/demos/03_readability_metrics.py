"""Measure snippets the way the dropdown does: word count, lexical density,
Flesch-Kincaid grade, judged against the role's guideline band.

Run:  python3 demos/03_readability_metrics.py
"""

from plume import conformance, guideline_for
from plume.metrics import analyze_text, count_syllables, split_sentences, tokenize_words

SAMPLES = [
    ("label", "Monthly Revenue by Product Line"),
    ("annotation", "Counts fell sharply here after October when the new policy arrived in this school district."),
    ("context", "This dashboard compares weather patterns in two cities. Use it to plan what to pack before a client visit."),
    ("metadata", "Source: city weather portals. 2024 data is incomplete and partially imputed."),
]

print("primitives on one sentence:")
text = "The shaded band shows a confidence interval."
print(f"  tokens:    {tokenize_words(text)}")
print(f"  sentences: {split_sentences(text)}")
print(f"  syllables: {[(t, count_syllables(t)) for t in tokenize_words(text)]}")

print("\nsnippets against their role guidelines:")
for role, sample in SAMPLES:
    report = analyze_text(sample)
    guideline = guideline_for(role)
    judged = conformance(report, guideline)
    print(f"\n  [{role}] {sample!r}")
    print(
        f"    words={report.word_count} (band {guideline.word_range}, {judged.word_count})  "
        f"fk={report.fk_grade:.2f} (band {guideline.fk_range}, {judged.fk_grade})  "
        f"density={report.lexical_density:.1f}% (band {guideline.density_range}, {judged.lexical_density})"
    )
    print(f"    guidance: {guideline.advisory}")
