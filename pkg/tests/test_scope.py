"""Scope derivation, highlight sets, downstream text, and generation order,
checked against independent parent-walk/closure oracles."""

import pytest

from plume import model, scope
from plume.errors import PlumeError

from helpers import LINE_SPEC, SVG, build_random_document, fig_tree_doc, placeholder


def ancestor_path(doc, frame_id):
    """Oracle: frame ids from this frame up to the root (inclusive)."""
    path = []
    current = frame_id
    while current is not None:
        path.append(current)
        current = doc.frames[current].parent
    return path


def is_proper_ancestor(doc, maybe_ancestor, frame_id):
    return maybe_ancestor != frame_id and maybe_ancestor in ancestor_path(doc, frame_id)


def closure_oracle(doc, frame_id):
    """Oracle: descendant closure by fixpoint expansion."""
    out = {frame_id}
    changed = True
    while changed:
        changed = False
        for fid in list(out):
            for child in doc.frames[fid].children:
                if child not in out:
                    out.add(child)
                    changed = True
    return out


def covered_charts_oracle(doc, frame_id):
    """Oracle: a chart is covered iff the snippet's frame lies on the chart
    frame's ancestor path."""
    return {
        cid
        for fid, frame in doc.frames.items()
        for cid in frame.chart_ids
        if frame_id in ancestor_path(doc, fid)
    }


class TestScopeOf:
    def test_leaf_single_chart(self):
        doc = model.create_document()
        leaf = model.add_frame(doc, doc.root, (0, 0, 400, 400))
        chart = model.add_chart(doc, leaf, LINE_SPEC)
        sid = model.add_snippet(doc, leaf, "label", "Chart title", "generated")
        result = scope.scope_of(doc, sid)
        assert result.kind == "single_chart"
        assert result.covered_chart_ids == {chart}

    def test_section_over_two_chart_leaves_is_group(self):
        doc = model.create_document()
        section = model.add_frame(doc, doc.root, (0, 0, 900, 900))
        for i in range(2):
            leaf = model.add_frame(doc, section, (10 + i * 450, 10, 430, 430))
            model.add_chart(doc, leaf, LINE_SPEC)
        sid = model.add_snippet(doc, section, "label", "Section", "generated")
        result = scope.scope_of(doc, sid)
        assert result.kind == "chart_group"
        assert len(result.covered_chart_ids) == 2

    def test_root_snippet_scopes_whole_dashboard(self):
        doc = model.create_document()
        for i in range(3):
            leaf = model.add_frame(doc, doc.root, (i * 340, 0, 320, 400))
            model.add_chart(doc, leaf, LINE_SPEC)
        sid = model.add_snippet(doc, doc.root, "label", "Dashboard", "generated")
        result = scope.scope_of(doc, sid)
        assert result.kind == "whole_dashboard"
        assert result.covered_chart_ids == covered_charts_oracle(doc, doc.root)
        assert len(result.covered_chart_ids) == 3

    def test_root_wins_even_with_single_chart(self):
        doc = model.create_document()
        leaf = model.add_frame(doc, doc.root, (0, 0, 400, 400))
        model.add_chart(doc, leaf, LINE_SPEC)
        sid = model.add_snippet(doc, doc.root, "label", "Dashboard", "generated")
        assert scope.scope_of(doc, sid).kind == "whole_dashboard"

    def test_unknown_snippet(self):
        doc = model.create_document()
        with pytest.raises(PlumeError) as excinfo:
            scope.scope_of(doc, "sX")
        assert excinfo.value.code == "unknown-snippet"

    def test_matches_enumeration_oracle_on_random_trees(self):
        for seed in range(25):
            doc = build_random_document(seed, max_depth=5, max_frames=25)
            for sid, snip in doc.snippets.items():
                assert (
                    scope.scope_of(doc, sid).covered_chart_ids
                    == covered_charts_oracle(doc, snip.frame)
                )


class TestHighlightSet:
    def test_leaf_snippet_highlights_own_frame(self):
        doc = model.create_document()
        leaf = model.add_frame(doc, doc.root, (0, 0, 400, 400))
        sid = model.add_snippet(doc, leaf, "label", "T", "generated")
        assert scope.highlight_set(doc, sid) == {leaf}

    def test_section_snippet_highlights_descendants_not_sibling(self):
        doc, (section_a, section_b), leaves, labels = fig_tree_doc()
        highlighted = scope.highlight_set(doc, labels[section_a])
        assert highlighted == {section_a, leaves[0], leaves[1]}
        assert section_b not in highlighted
        assert highlighted == closure_oracle(doc, section_a)

    def test_root_snippet_highlights_all_frames(self):
        doc, _, _, labels = fig_tree_doc()
        assert scope.highlight_set(doc, labels[doc.root]) == set(doc.frames)

    def test_never_includes_sibling_subtrees_random(self):
        for seed in range(25):
            doc = build_random_document(seed, max_depth=5, max_frames=25)
            for sid, snip in doc.snippets.items():
                highlighted = scope.highlight_set(doc, sid)
                assert highlighted == closure_oracle(doc, snip.frame)
                # frames outside: must not share the snippet frame as ancestor
                for fid in set(doc.frames) - highlighted:
                    assert not is_proper_ancestor(doc, snip.frame, fid)


class TestDownstreamText:
    def test_section_collects_generated_child_labels_in_order(self):
        doc, (section_a, _), leaves, labels = fig_tree_doc()
        model.edit_snippet(doc, labels[leaves[0]], "Wind Patterns")
        model.set_locked(doc, labels[leaves[0]], False)  # generated
        model.edit_snippet(doc, labels[leaves[1]], "Precipitation")
        model.set_locked(doc, labels[leaves[1]], False)
        collected = scope.downstream_text(doc, section_a, "label")
        assert collected == [
            (labels[leaves[0]], "Wind Patterns"),
            (labels[leaves[1]], "Precipitation"),
        ]

    def test_placeholder_children_collect_nothing(self):
        doc, (section_a, _), _, _ = fig_tree_doc()
        assert scope.downstream_text(doc, section_a, "label") == []

    def test_sibling_content_is_absent(self):
        # Oracle: everything collected from the whole tree minus the subtree
        # must be missing from the frame's downstream collection.
        doc, (section_a, section_b), leaves, labels = fig_tree_doc()
        for leaf in leaves:
            model.edit_snippet(doc, labels[leaf], f"Title of {leaf}")
        collected_a = {sid for sid, _ in scope.downstream_text(doc, section_a, "label")}
        b_subtree_snips = {
            sid for fid in closure_oracle(doc, section_b) for sid in doc.frames[fid].snippet_ids
        }
        assert collected_a.isdisjoint(b_subtree_snips)
        assert collected_a == {labels[leaves[0]], labels[leaves[1]]}

    def test_incompatible_roles_not_collected(self):
        doc, (section_a, _), leaves, _ = fig_tree_doc()
        model.add_snippet(doc, leaves[0], "encoding", "The band is a CI.", "generated")
        assert scope.downstream_text(doc, section_a, "label") == []
        assert len(scope.downstream_text(doc, section_a, "context")) == 0


class TestGenerationPlan:
    def test_fig_shape_levels(self):
        doc = model.create_document()
        leaf_titles = []
        for i in range(2):
            leaf = model.add_frame(doc, doc.root, (i * 500, 0, 480, 500))
            model.add_chart(doc, leaf, LINE_SPEC, SVG)
            leaf_titles.append(
                model.add_snippet(doc, leaf, "label", placeholder("label"), "placeholder")
            )
        root_title = model.add_snippet(
            doc, doc.root, "label", placeholder("label"), "placeholder"
        )
        plan = scope.generation_plan(doc, [root_title, *leaf_titles])
        assert plan.levels == [leaf_titles, [root_title]]
        assert plan.order == [*leaf_titles, root_title]

    def test_all_locked_empty_plan(self):
        doc = model.create_document()
        a = model.add_snippet(doc, doc.root, "label", "A", "locked")
        b = model.add_snippet(doc, doc.root, "metadata", "B", "locked")
        plan = scope.generation_plan(doc, [a, b])
        assert plan.order == [] and plan.levels == []

    def test_chain_of_nested_frames_deepest_first(self):
        doc = model.create_document()
        parent = doc.root
        snippets = []
        for depth in range(4):
            snippets.append(
                model.add_snippet(doc, parent, "insight", f"text {depth}", "generated")
            )
            parent = model.add_frame(doc, parent, (5, 5, 900 - depth * 100, 900 - depth * 100))
        plan = scope.generation_plan(doc, snippets)
        assert plan.order == list(reversed(snippets))

    def test_unknown_target(self):
        doc = model.create_document()
        with pytest.raises(PlumeError) as excinfo:
            scope.generation_plan(doc, ["sX"])
        assert excinfo.value.code == "unknown-snippet"

    def test_ancestor_after_descendant_random_trees(self):
        # Oracle: pairwise precedence via parent walking, plus a depth sort.
        for seed in range(40):
            doc = build_random_document(seed, max_depth=6, max_frames=30)
            targets = list(doc.snippets)
            plan = scope.generation_plan(doc, targets)
            position = {sid: i for i, sid in enumerate(plan.order)}
            for s in plan.order:
                for t in plan.order:
                    sf = doc.snippets[s].frame
                    tf = doc.snippets[t].frame
                    if is_proper_ancestor(doc, tf, sf):
                        assert position[s] < position[t]
            oracle_sorted = sorted(
                plan.order, key=lambda sid: -len(ancestor_path(doc, doc.snippets[sid].frame))
            )
            depths = [len(ancestor_path(doc, doc.snippets[sid].frame)) for sid in plan.order]
            assert depths == sorted(depths, reverse=True)
            assert sorted(plan.order) == sorted(oracle_sorted)

    def test_locked_never_in_plan_random(self):
        for seed in range(20):
            doc = build_random_document(seed, max_depth=4, max_frames=20)
            plan = scope.generation_plan(doc, list(doc.snippets))
            for sid in plan.order:
                assert doc.snippets[sid].state is not model.SnippetState.LOCKED


class TestScopePurity:
    def test_scopes_survive_save_load(self):
        for seed in range(10):
            doc = build_random_document(seed, max_depth=5, max_frames=25)
            again = model.load(model.save(doc))
            for sid in doc.snippets:
                assert scope.scope_of(doc, sid) == scope.scope_of(again, sid)
                assert scope.highlight_set(doc, sid) == scope.highlight_set(again, sid)

    def test_move_frame_scope_consistency(self):
        doc = model.create_document()
        section_a = model.add_frame(doc, doc.root, (0, 0, 490, 1000))
        section_b = model.add_frame(doc, doc.root, (510, 0, 490, 1000))
        leaf = model.add_frame(doc, section_a, (10, 10, 200, 200))
        model.add_chart(doc, leaf, LINE_SPEC)
        label_a = model.add_snippet(doc, section_a, "label", "A", "generated")
        label_b = model.add_snippet(doc, section_b, "label", "B", "generated")
        model.move_frame(doc, leaf, section_b, (10, 300, 200, 200))
        fresh = model.load(model.save(doc))
        for sid in doc.snippets:
            assert scope.scope_of(doc, sid) == scope.scope_of(fresh, sid)
            assert scope.highlight_set(doc, sid) == scope.highlight_set(fresh, sid)
        assert leaf in scope.highlight_set(doc, label_b)
        assert leaf not in scope.highlight_set(doc, label_a)
