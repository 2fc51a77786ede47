"""Suggestion sidebar behavior and placeholder placement rules."""

import random

import pytest

from plume import defaults, model, suggestions
from plume.errors import PlumeError

from helpers import LINE_SPEC, placeholder, two_leaf_doc


def frame_signature(doc):
    """Placement-relevant view of a document, independent of snippet ids."""
    return {
        fid: [
            (
                doc.snippets[sid].role.value,
                doc.snippets[sid].state.value,
                doc.snippets[sid].content,
                doc.snippets[sid].styling.format_class,
                doc.snippets[sid].styling.prominence,
            )
            for sid in frame.snippet_ids
        ]
        for fid, frame in doc.frames.items()
    }


class TestPendingSuggestions:
    def test_fresh_document_has_ten(self):
        doc = model.create_document()
        pending = suggestions.pending_suggestions(doc)
        # seven text roles plus three advisories
        assert len(pending) == 10
        assert sum(1 for s in pending if s.is_advisory) == 3
        assert sum(1 for s in pending if not s.is_advisory) == 7

    def test_order_label_first_advisories_last(self):
        doc = model.create_document()
        kinds = [s.kind for s in suggestions.pending_suggestions(doc)]
        assert kinds[0] == "label"
        assert kinds[-3:] == ["readability", "reading_order", "formatting"]

    def test_after_accept_label_nine_remain(self):
        doc = model.create_document()
        suggestions.accept_suggestion(doc, "sg-label")
        pending = suggestions.pending_suggestions(doc)
        assert len(pending) == 9
        assert doc.suggestions["sg-label"].status == "accepted"
        assert all(s.kind != "label" for s in pending)

    def test_dismiss_all_empties_the_list(self):
        doc = model.create_document()
        for sug in list(doc.suggestions.values()):
            suggestions.dismiss_suggestion(doc, sug.id)
        assert suggestions.pending_suggestions(doc) == []


class TestAcceptSuggestion:
    def test_label_on_two_leaf_doc_three_placeholders_on_top(self):
        doc, left, right = two_leaf_doc()
        created = suggestions.accept_suggestion(doc, "sg-label")
        assert len(created) == 3
        for fid in (doc.root, left, right):
            top = doc.frames[fid].snippet_ids[0]
            snip = doc.snippets[top]
            assert snip.role.value == "label"
            assert snip.state.value == "placeholder"
            assert snip.content == placeholder("label")
            assert snip.created_by == "suggestion"

    def test_metadata_single_placeholder_at_root_bottom(self):
        doc, *_ = two_leaf_doc()
        model.add_snippet(doc, doc.root, "label", "Title", "locked")
        created = suggestions.accept_suggestion(doc, "sg-metadata")
        assert len(created) == 1
        snip = doc.snippets[created[0]]
        assert snip.frame == doc.root
        assert doc.frames[doc.root].snippet_ids[-1] == created[0]

    def test_encoding_placed_under_each_chart(self):
        doc, left, right = two_leaf_doc()
        created = suggestions.accept_suggestion(doc, "sg-encoding")
        assert len(created) == 2
        assert {doc.snippets[sid].frame for sid in created} == {left, right}

    def test_interaction_only_in_chart_frames(self):
        doc, left, right = two_leaf_doc()
        empty = model.add_frame(doc, left, (10, 700, 100, 100))
        created = suggestions.accept_suggestion(doc, "sg-interaction")
        assert {doc.snippets[sid].frame for sid in created} == {left, right}
        assert all(doc.snippets[sid].frame != empty for sid in created)

    def test_advisory_not_acceptable(self):
        doc = model.create_document()
        with pytest.raises(PlumeError) as excinfo:
            suggestions.accept_suggestion(doc, "sg-readability")
        assert excinfo.value.code == "advisory-not-acceptable"

    def test_already_resolved(self):
        doc = model.create_document()
        suggestions.accept_suggestion(doc, "sg-label")
        with pytest.raises(PlumeError) as excinfo:
            suggestions.accept_suggestion(doc, "sg-label")
        assert excinfo.value.code == "already-resolved"

    def test_unknown_suggestion(self):
        doc = model.create_document()
        with pytest.raises(PlumeError) as excinfo:
            suggestions.accept_suggestion(doc, "sg-nope")
        assert excinfo.value.code == "unknown-suggestion"

    def test_never_duplicates_role_in_frame(self):
        doc, left, _ = two_leaf_doc()
        model.add_snippet(doc, left, "label", "Existing title", "locked")
        created = suggestions.accept_suggestion(doc, "sg-label")
        labels_in_left = [
            sid
            for sid in doc.frames[left].snippet_ids
            if doc.snippets[sid].role.value == "label"
        ]
        assert len(labels_in_left) == 1
        assert len(created) == 2  # root and the other leaf only


class TestAcceptAll:
    def test_union_of_placements_no_duplicates(self):
        doc, left, right = two_leaf_doc()
        created = suggestions.accept_all(doc)
        per_frame_roles = {}
        for sid in created:
            snip = doc.snippets[sid]
            key = (snip.frame, snip.role.value)
            assert key not in per_frame_roles, "duplicate role in frame"
            per_frame_roles[key] = sid
        # second call creates nothing
        assert suggestions.accept_all(doc) == []

    def test_existing_locked_label_skips_that_frame(self):
        doc, *_ = two_leaf_doc()
        model.add_snippet(doc, doc.root, "label", "My dashboard", "locked")
        created = suggestions.accept_all(doc)
        root_labels = [
            sid
            for sid in doc.frames[doc.root].snippet_ids
            if doc.snippets[sid].role.value == "label"
        ]
        assert len(root_labels) == 1
        assert doc.snippets[root_labels[0]].content == "My dashboard"

    def test_metadata_only_root_interaction_only_chart_frames(self):
        doc, left, right = two_leaf_doc()
        nested = model.add_frame(doc, left, (10, 700, 200, 200))
        suggestions.accept_all(doc)
        for sid, snip in doc.snippets.items():
            if snip.role.value == "metadata":
                assert snip.frame == doc.root
            if snip.role.value == "interaction":
                assert doc.frames[snip.frame].chart_ids

    def test_fold_equivalence_any_order(self):
        # Property: accepting roles one-by-one in any order produces the
        # same final placements as accept_all.
        rng = random.Random(5)
        reference, *_ = two_leaf_doc("orderref")
        suggestions.accept_all(reference)
        expected = frame_signature(reference)
        role_ids = [f"sg-{r}" for r in defaults.ROLES]
        for _ in range(12):
            doc, *_ = two_leaf_doc("ordertrial")
            shuffled = role_ids[:]
            rng.shuffle(shuffled)
            for sug_id in shuffled:
                suggestions.accept_suggestion(doc, sug_id)
            assert frame_signature(doc) == expected

    def test_placements_deterministic(self):
        a, *_ = two_leaf_doc("detA")
        b, *_ = two_leaf_doc("detB")
        suggestions.accept_all(a)
        suggestions.accept_all(b)
        assert frame_signature(a) == frame_signature(b)


class TestRoleDefaults:
    def test_label_placeholder_verbatim(self):
        assert (
            suggestions.placeholder_text("label")
            == "This would be a good place to label your data"
        )

    def test_metadata_placeholder_mentions_the_facts(self):
        text = suggestions.placeholder_text("metadata").lower()
        for needle in ("author", "source", "caveat"):
            assert needle in text

    def test_placeholder_text_pure(self):
        for role in defaults.ROLES:
            assert suggestions.placeholder_text(role) == suggestions.placeholder_text(role)

    def test_label_styling_large_at_root(self):
        styling = suggestions.default_styling("label", at_root=True)
        assert styling.format_class == "heading_large"
        assert styling.prominence == "high"
        assert suggestions.default_styling("label").format_class == "heading_section"

    def test_metadata_styling_faint_footnote(self):
        styling = suggestions.default_styling("metadata")
        assert styling.format_class == "footnote"
        assert styling.prominence == "low"

    def test_context_styling_body(self):
        styling = suggestions.default_styling("context")
        assert styling.format_class == "body"
        assert styling.prominence == "medium"
