"""Prompt assembly and orchestrated text generation.

A prompt bundle pairs a role-specific instruction and few-shot examples with
the context the role needs: chart specifications, chart visuals (SVG),
downstream text from descendant frames, and locked text from anywhere in the
dashboard. Bundles never carry content from sibling subtrees except through
the locked-text channel.

Generation runs bottom-up over the frame tree: deepest level first, so each
completed snippet is available as downstream context to its ancestors.
Locked snippets are never touched.
"""

from __future__ import annotations

import hashlib
import json
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from . import defaults
from .errors import PlumeError
from .model import (
    Chart,
    DashboardDocument,
    SnippetState,
    subtree_frame_ids,
)
from .scope import GenerationPlan, downstream_text, frame_path, generation_plan, reading_order

BLOCK_KINDS = ("chart_spec", "chart_svg", "downstream_text", "locked_text")

SVG_TRUNCATION_MARKER = "<!-- truncated to fit the prompt budget -->"

_GENERATE_INSTRUCTIONS = {
    "label": "Write a concise title that labels the data shown by the charts described below.",
    "context": (
        "Write a short paragraph giving readers the background they need to use "
        "this dashboard: what it covers and what to do with it."
    ),
    "insight": (
        "Write one clear takeaway describing the most salient pattern visible in "
        "the chart visuals below."
    ),
    "encoding": (
        "Explain how to read the chart: what the marks, axes, and any shaded "
        "regions or color scales encode, based on the specification below."
    ),
    "interaction": (
        "Explain how to interact with the chart, based on the interaction "
        "bindings in the specification below."
    ),
    "annotation": (
        "Write a short note calling out one salient point visible in the chart "
        "visuals below."
    ),
}

_SUMMARIZE_INSTRUCTIONS = {
    "label": "Write a concise title as a summary or comparison of the downstream titles below.",
    "context": (
        "Write a short background paragraph as a summary or comparison of the "
        "downstream text below."
    ),
    "insight": (
        "Write one clear takeaway as a summary or comparison of the downstream "
        "text below."
    ),
}

_METADATA_INSTRUCTION = (
    "Write one plain English sentence of dashboard metadata using only these "
    "author-provided facts, without inventing anything: {facts}"
)

_REFINE_INSTRUCTIONS = {
    "shorten": (
        "Rewrite the following {role} text to be meaningfully shorter while "
        "keeping its meaning:\n{current}"
    ),
    "simplify": (
        "Rewrite the following {role} text so it reads at a lower grade level, "
        "using shorter sentences and simpler words:\n{current}"
    ),
}

REFINE_KINDS = ("regenerate", "shorten", "simplify")


@dataclass(frozen=True)
class ContextBlock:
    kind: str  # one of BLOCK_KINDS
    source: str  # chart id or snippet id the payload came from
    payload: str


@dataclass(frozen=True)
class PromptBundle:
    instruction: str
    few_shot_examples: tuple[tuple[str, str], ...]
    context_blocks: tuple[ContextBlock, ...]
    target: str  # snippet id
    role: str
    frame_path: str
    mode: str  # generate | summarize | shorten | simplify


@dataclass
class GenerationConfig:
    model_name: str = "gpt-4o"
    temperature: float = 0.2
    max_concurrency: int = 1
    svg_byte_budget: int = 20000


@dataclass
class GenerationReport:
    plan: GenerationPlan
    generated: list[str] = field(default_factory=list)
    failed: dict[str, str] = field(default_factory=dict)
    # Every bundle assembled during the run, for audit and tests.
    bundles: dict[str, PromptBundle] = field(default_factory=dict)


def bundle_to_dict(bundle: PromptBundle) -> dict:
    return {
        "instruction": bundle.instruction,
        "few_shot_examples": [list(pair) for pair in bundle.few_shot_examples],
        "context_blocks": [
            {"kind": b.kind, "source": b.source, "payload": b.payload}
            for b in bundle.context_blocks
        ],
        "target": bundle.target,
        "role": bundle.role,
        "frame_path": bundle.frame_path,
        "mode": bundle.mode,
    }


def canonical_bundle_json(bundle: PromptBundle) -> str:
    """Key-sorted compact JSON; the mock port's addressing key."""
    return json.dumps(
        bundle_to_dict(bundle), sort_keys=True, ensure_ascii=False, separators=(",", ":")
    )


def bundle_hash(bundle: PromptBundle) -> str:
    return hashlib.sha256(canonical_bundle_json(bundle).encode("utf-8")).hexdigest()


def truncate_svg(svg: str, budget: int) -> str:
    """Cut oversized SVG at a tag boundary and mark the cut."""
    if len(svg) <= budget:
        return svg
    cut = budget - len(SVG_TRUNCATION_MARKER)
    if cut <= 0:
        return SVG_TRUNCATION_MARKER[:budget]
    boundary = svg.rfind(">", 0, cut)
    base = svg[: boundary + 1] if boundary != -1 else svg[:cut]
    return base + SVG_TRUNCATION_MARKER


def _has_interaction_bindings(spec) -> bool:
    if isinstance(spec, dict):
        for key, value in spec.items():
            if key in ("params", "selection") and value:
                return True
            if _has_interaction_bindings(value):
                return True
    elif isinstance(spec, list):
        return any(_has_interaction_bindings(item) for item in spec)
    return False


def collect_locked_text(doc: DashboardDocument) -> list[tuple[str, str, str]]:
    """(snippet-id, role, content) of every locked snippet, in document
    reading order."""
    out = []
    for sid in reading_order(doc):
        snip = doc.snippets[sid]
        if snip.state is SnippetState.LOCKED:
            out.append((sid, snip.role.value, snip.content))
    return out


def _scope_charts(doc: DashboardDocument, frame_id: str) -> list[Chart]:
    return [
        doc.charts[cid]
        for fid in subtree_frame_ids(doc, frame_id)
        for cid in doc.frames[fid].chart_ids
    ]


def _few_shot(role: str) -> tuple[tuple[str, str], ...]:
    return tuple((role, text) for text in defaults.few_shot_examples(role))


def assemble_prompt(
    doc: DashboardDocument, snippet: str, config: GenerationConfig | None = None
) -> PromptBundle:
    """Build the generation bundle for a snippet.

    If compatible downstream text exists, the instruction asks for a summary
    or comparison of that text and no chart context is attached; otherwise
    the frame acts as an effective leaf and the role's required chart
    context is pulled from the charts in its subtree. Locked text from the
    rest of the dashboard is always appended (deduplicated against the
    downstream blocks by snippet id).
    """
    config = config or GenerationConfig()
    snip = doc.snippets.get(snippet)
    if snip is None:
        raise PlumeError("unknown-snippet", f"no such snippet: {snippet}")
    if snip.state is SnippetState.LOCKED:
        raise PlumeError("snippet-locked", f"snippet {snippet} is locked")
    role = snip.role.value
    path = frame_path(doc, snip.frame)

    downstream = (
        downstream_text(doc, snip.frame, role)
        if defaults.compatible_downstream(role)
        else []
    )
    blocks: list[ContextBlock] = []
    if downstream:
        mode = "summarize"
        instruction = _SUMMARIZE_INSTRUCTIONS[role]
        blocks.extend(
            ContextBlock("downstream_text", sid, content) for sid, content in downstream
        )
    elif role == "metadata":
        mode = "generate"
        facts = doc.user_facts.get(snippet, "")
        if not facts.strip():
            raise PlumeError(
                "missing-required-context",
                "metadata is never generated from charts; specify the author, "
                "data source, and any caveats first",
            )
        instruction = _METADATA_INSTRUCTION.format(facts=facts)
    else:
        mode = "generate"
        instruction = _GENERATE_INSTRUCTIONS[role]
        charts = _scope_charts(doc, snip.frame)
        if not charts:
            raise PlumeError(
                "missing-required-context",
                f"no charts in scope to generate {role} text from",
            )
        kinds = defaults.required_context(role)
        if "chart_spec" in kinds:
            if role == "interaction" and not any(
                _has_interaction_bindings(c.spec) for c in charts
            ):
                raise PlumeError(
                    "missing-required-context",
                    "the chart specification declares no interaction bindings; "
                    "ask the user to specify the missing details",
                )
            blocks.extend(
                ContextBlock(
                    "chart_spec",
                    c.id,
                    json.dumps(c.spec, sort_keys=True, ensure_ascii=False),
                )
                for c in charts
            )
        if "chart_svg" in kinds:
            with_svg = [c for c in charts if c.rendered_svg]
            if not with_svg:
                raise PlumeError(
                    "missing-required-context",
                    f"{role} text needs rendered chart visuals, none available",
                )
            blocks.extend(
                ContextBlock(
                    "chart_svg", c.id, truncate_svg(c.rendered_svg, config.svg_byte_budget)
                )
                for c in with_svg
            )

    downstream_ids = {sid for sid, _ in downstream}
    blocks.extend(
        ContextBlock("locked_text", sid, content)
        for sid, _, content in collect_locked_text(doc)
        if sid != snippet and sid not in downstream_ids
    )
    return PromptBundle(
        instruction=instruction,
        few_shot_examples=_few_shot(role),
        context_blocks=tuple(blocks),
        target=snippet,
        role=role,
        frame_path=path,
        mode=mode,
    )


def _refine_bundle(doc: DashboardDocument, snippet: str, kind: str) -> PromptBundle:
    snip = doc.snippets[snippet]
    role = snip.role.value
    instruction = _REFINE_INSTRUCTIONS[kind].format(role=role, current=snip.content)
    blocks = tuple(
        ContextBlock("locked_text", sid, content)
        for sid, _, content in collect_locked_text(doc)
        if sid != snippet
    )
    return PromptBundle(
        instruction=instruction,
        few_shot_examples=_few_shot(role),
        context_blocks=blocks,
        target=snippet,
        role=role,
        frame_path=frame_path(doc, snip.frame),
        mode=kind,
    )


class TextGeneratorPort(ABC):
    """Anything that can turn a prompt bundle into text."""

    @abstractmethod
    def complete(self, bundle: PromptBundle, config: GenerationConfig | None = None) -> str:
        ...


class MockGenerator(TextGeneratorPort):
    """Deterministic port: canned responses addressed by bundle hash, with a
    synthesized fallback. A pure function of the bundle's canonical form;
    generation config is ignored."""

    def __init__(self, responses_dir: str | Path | None = None):
        self.responses_dir = Path(responses_dir) if responses_dir else None

    def complete(self, bundle: PromptBundle, config: GenerationConfig | None = None) -> str:
        if self.responses_dir is not None:
            canned = self.responses_dir / f"{bundle_hash(bundle)}.txt"
            if canned.exists():
                return canned.read_text("utf-8")
        if bundle.mode == "shorten":
            return f"Shorter {bundle.role} for {bundle.frame_path}"
        if bundle.mode == "simplify":
            return f"Simpler {bundle.role} for {bundle.frame_path}"
        return f"{bundle.role} for {bundle.frame_path}"


def render_messages(bundle: PromptBundle) -> list[dict]:
    """Chat messages for the live endpoint: instruction and examples in the
    system turn, context blocks in the user turn."""
    system = bundle.instruction
    if bundle.few_shot_examples:
        lines = "\n".join(f"- {text}" for _, text in bundle.few_shot_examples)
        system += f"\n\nExamples of {bundle.role} text:\n{lines}"
    titles = {
        "chart_spec": "Chart specification",
        "chart_svg": "Chart visuals",
        "downstream_text": "Downstream text",
        "locked_text": "Locked text",
    }
    sections = [
        f"## {titles[b.kind]} ({b.source})\n{b.payload}" for b in bundle.context_blocks
    ]
    user = "\n\n".join(sections) if sections else "(no additional context)"
    return [
        {"role": "system", "content": system},
        {"role": "user", "content": user},
    ]


class LiveGenerator(TextGeneratorPort):
    """Client for an HTTPS chat-completion endpoint. Requests and responses
    are appended to a transcript file with credentials redacted."""

    def __init__(
        self,
        api_key: str,
        endpoint: str = "https://api.openai.com/v1/chat/completions",
        transcript_path: str | Path | None = None,
        client: httpx.Client | None = None,
    ):
        if not api_key:
            raise PlumeError("missing-api-key", "live generation requires an API key")
        self._api_key = api_key
        self._endpoint = endpoint
        self._transcript_path = Path(transcript_path) if transcript_path else None
        self._client = client or httpx.Client(timeout=60.0)

    def _log(self, record: dict) -> None:
        if self._transcript_path is None:
            return
        with self._transcript_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    def complete(self, bundle: PromptBundle, config: GenerationConfig | None = None) -> str:
        config = config or GenerationConfig()
        payload = {
            "model": config.model_name,
            "temperature": config.temperature,
            "messages": render_messages(bundle),
        }
        try:
            response = self._client.post(
                self._endpoint,
                json=payload,
                headers={"Authorization": f"Bearer {self._api_key}"},
            )
        except httpx.HTTPError as exc:
            self._log({"target": bundle.target, "request": payload, "error": str(exc)})
            raise PlumeError("port-unreachable", f"generator unreachable: {exc}") from None
        self._log(
            {
                "target": bundle.target,
                "request": payload,
                "status": response.status_code,
                "response": response.text,
            }
        )
        if response.status_code != 200:
            raise PlumeError(
                "generation-failed", f"generator returned HTTP {response.status_code}"
            )
        try:
            content = response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise PlumeError(
                "generation-failed", f"malformed completion response: {exc}"
            ) from None
        if not isinstance(content, str):
            raise PlumeError("generation-failed", "completion content is not text")
        return content


def generate_all(
    doc: DashboardDocument,
    targets: set[str] | list[str],
    port: TextGeneratorPort,
    config: GenerationConfig | None = None,
) -> GenerationReport:
    """Generate the targets level by level, deepest first.

    Bundles for a level are assembled against the document as left by the
    previous level, so freshly generated text feeds ancestor prompts. Within
    a level, port calls may run concurrently; results are applied in plan
    order at the level boundary, so the outcome does not depend on
    scheduling. Failures are collected per snippet and never clobber
    existing content; locked snippets are untouched by construction.
    """
    config = config or GenerationConfig()
    plan = generation_plan(doc, targets)
    report = GenerationReport(plan=plan)
    for level in plan.levels:
        bundles: dict[str, PromptBundle] = {}
        for sid in level:
            try:
                bundles[sid] = assemble_prompt(doc, sid, config=config)
                report.bundles[sid] = bundles[sid]
            except PlumeError as exc:
                report.failed[sid] = f"{exc.code}: {exc.message}"
        results: dict[str, str] = {}
        items = [(sid, bundles[sid]) for sid in level if sid in bundles]
        if config.max_concurrency > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=config.max_concurrency) as pool:
                outcomes = [(sid, pool.submit(port.complete, b, config)) for sid, b in items]
        else:
            outcomes = [(sid, _Immediate(port, b, config)) for sid, b in items]
        for sid, outcome in outcomes:
            try:
                text = outcome.result()
            except PlumeError as exc:
                if exc.code == "port-unreachable":
                    raise
                report.failed[sid] = f"{exc.code}: {exc.message}"
                continue
            except Exception as exc:  # fault isolation: one bad call, not the run
                report.failed[sid] = f"generation-failed: {exc}"
                continue
            if not text or not text.strip():
                report.failed[sid] = "generation-failed: empty completion"
                continue
            results[sid] = text
        for sid in level:
            if sid in results:
                snip = doc.snippets[sid]
                snip.content = results[sid]
                snip.state = SnippetState.GENERATED
                snip.created_by = "generation"
                report.generated.append(sid)
    return report


class _Immediate:
    """Sequential stand-in for a Future, so error handling has one path."""

    def __init__(self, port: TextGeneratorPort, bundle: PromptBundle, config: GenerationConfig):
        self._port = port
        self._bundle = bundle
        self._config = config

    def result(self) -> str:
        return self._port.complete(self._bundle, self._config)


def refine(
    doc: DashboardDocument,
    snippet: str,
    kind: str,
    port: TextGeneratorPort,
    config: GenerationConfig | None = None,
) -> str:
    """Regenerate, shorten, or simplify one snippet in place. Role, frame,
    and styling are untouched; the new text is returned and applied."""
    config = config or GenerationConfig()
    snip = doc.snippets.get(snippet)
    if snip is None:
        raise PlumeError("unknown-snippet", f"no such snippet: {snippet}")
    if snip.state is SnippetState.LOCKED:
        raise PlumeError("snippet-locked", f"snippet {snippet} is locked")
    if snip.state is SnippetState.PLACEHOLDER:
        raise PlumeError(
            "placeholder-not-refinable",
            "placeholders have no text to refine; generate first",
        )
    if kind not in REFINE_KINDS:
        raise PlumeError("invalid-refine-kind", f"not a refinement: {kind!r}")
    if kind == "regenerate":
        bundle = assemble_prompt(doc, snippet, config=config)
    else:
        bundle = _refine_bundle(doc, snippet, kind)
    try:
        text = port.complete(bundle, config)
    except PlumeError as exc:
        if exc.code in ("port-unreachable", "generation-failed"):
            raise
        raise PlumeError("generation-failed", f"{exc.code}: {exc.message}") from None
    except Exception as exc:
        raise PlumeError("generation-failed", str(exc)) from None
    if not text or not text.strip():
        raise PlumeError("generation-failed", "empty completion")
    snip.content = text
    snip.state = SnippetState.GENERATED
    snip.created_by = "generation"
    return text
