"""HTTP API over the engine for the companion UI and scripts.

The transport stays thin: every handler validates the request, calls the
corresponding engine operation inside the store's single-writer mutate, and
returns the result. Errors surface as structured problem responses carrying
the engine's machine-readable code. Optimistic concurrency uses the
``X-Document-Revision`` header: reads return it, PUT/PATCH must send it
back, and a mismatch is a 409.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Header, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import metrics as metrics_mod
from . import model, scope, suggestions
from .config import ServiceConfig, apply_data_paths, generation_config, make_generator
from .errors import CONFLICT_CODES, NOT_FOUND_CODES, PlumeError
from .generation import generate_all, refine
from .store import DocumentStore


def _status_for(code: str) -> int:
    if code in NOT_FOUND_CODES:
        return 404
    if code in CONFLICT_CODES:
        return 409
    if code in ("malformed-request", "missing-revision"):
        return 400
    return 422


class GeometryBody(BaseModel):
    x: float
    y: float
    width: float
    height: float

    def rect(self) -> model.Rect:
        return model.Rect(self.x, self.y, self.width, self.height)


class FrameBody(BaseModel):
    parent: str
    geometry: GeometryBody


class FramePatchBody(BaseModel):
    geometry: GeometryBody
    new_parent: str | None = None


class ChartBody(BaseModel):
    frame: str
    spec: Any
    rendered_svg: str | None = None
    title_hint: str | None = None


class SnippetBody(BaseModel):
    frame: str
    role: str
    content: str
    state: str


class SnippetPatchBody(BaseModel):
    role: str | None = None
    content: str | None = None
    locked: bool | None = None
    format_class: str | None = None
    prominence: str | None = None
    facts: str | None = None


class GenerateBody(BaseModel):
    targets: list[str] | None = None
    dry_run: bool = False


class RefineBody(BaseModel):
    kind: str


class DocumentIdBody(BaseModel):
    document_id: str


def _snippet_view(doc: model.DashboardDocument, sid: str) -> dict:
    snip = doc.snippets[sid]
    return {
        "id": snip.id,
        "frame": snip.frame,
        "role": snip.role.value,
        "state": snip.state.value,
        "content": snip.content,
        "styling": {
            "format_class": snip.styling.format_class,
            "prominence": snip.styling.prominence,
        },
        "created_by": snip.created_by,
        "facts": doc.user_facts.get(sid),
    }


def _suggestion_view(sug: model.Suggestion) -> dict:
    return {
        "id": sug.id,
        "kind": sug.kind,
        "title": sug.title,
        "description": sug.description,
        "status": sug.status,
        "is_advisory": sug.is_advisory,
    }


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    apply_data_paths(config)
    store = DocumentStore(config.store_path)
    generator = make_generator(config)
    gen_config = generation_config(config)

    app = FastAPI(title="plume", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.config = config
    app.state.generator = generator

    @app.exception_handler(PlumeError)
    async def plume_error_handler(_request: Request, exc: PlumeError):
        return JSONResponse(
            status_code=_status_for(exc.code),
            content={"code": exc.code, "message": exc.message},
        )

    def _find_owner(kind: str, item_id: str, document_id: str | None) -> str:
        """Resolve which document owns a snippet/suggestion id."""
        if document_id is not None:
            doc, _ = store.get(document_id)
            if item_id not in getattr(doc, kind):
                raise PlumeError(f"unknown-{_SINGULAR[kind]}", f"no such {_SINGULAR[kind]}: {item_id}")
            return document_id
        owners = []
        for doc_id in store.list_ids():
            doc, _ = store.get(doc_id)
            if item_id in getattr(doc, kind):
                owners.append(doc_id)
        if not owners:
            raise PlumeError(f"unknown-{_SINGULAR[kind]}", f"no such {_SINGULAR[kind]}: {item_id}")
        if len(owners) > 1:
            raise PlumeError(
                "ambiguous-id",
                f"{item_id} exists in documents {owners}; pass ?document_id=",
            )
        return owners[0]

    _SINGULAR = {"snippets": "snippet", "suggestions": "suggestion"}

    def _doc_response(payload: dict, revision: int, status_code: int = 200) -> JSONResponse:
        return JSONResponse(
            status_code=status_code,
            content=payload,
            headers={"X-Document-Revision": str(revision)},
        )

    def _required_revision(value: str | None, present: bool) -> int | None:
        if value is None:
            if present:
                raise PlumeError(
                    "missing-revision",
                    "PUT/PATCH must carry the X-Document-Revision header",
                )
            return None
        try:
            return int(value)
        except ValueError:
            raise PlumeError("missing-revision", "X-Document-Revision must be an integer") from None

    @app.get("/documents")
    def list_documents():
        return {"document_ids": store.list_ids()}

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str):
        data, revision = store.get_bytes(doc_id)
        return Response(
            content=data,
            media_type="application/json",
            headers={"X-Document-Revision": str(revision)},
        )

    @app.put("/documents/{doc_id}")
    async def put_document(
        doc_id: str,
        request: Request,
        x_document_revision: str | None = Header(default=None),
    ):
        body = await request.body()
        doc = model.load(body)
        expected = _required_revision(x_document_revision, present=store.exists(doc_id))
        revision = store.put(doc_id, doc, expected_revision=expected)
        data, revision = store.get_bytes(doc_id)
        return Response(
            content=data,
            media_type="application/json",
            headers={"X-Document-Revision": str(revision)},
        )

    @app.post("/documents/{doc_id}/frames")
    def post_frame(doc_id: str, body: FrameBody):
        frame_id, _, revision = store.mutate(
            doc_id, lambda doc: model.add_frame(doc, body.parent, body.geometry.rect())
        )
        return _doc_response({"frame_id": frame_id}, revision, status_code=201)

    @app.patch("/frames/{frame_id}")
    def patch_frame(
        frame_id: str,
        body: FramePatchBody,
        document_id: str | None = None,
        x_document_revision: str | None = Header(default=None),
    ):
        if document_id is None:
            owners = [
                d for d in store.list_ids() if frame_id in store.get(d)[0].frames
            ]
            if not owners:
                raise PlumeError("unknown-frame", f"no such frame: {frame_id}")
            if len(owners) > 1:
                raise PlumeError(
                    "ambiguous-id",
                    f"{frame_id} exists in documents {owners}; pass ?document_id=",
                )
            document_id = owners[0]
        expected = _required_revision(x_document_revision, present=True)

        def apply(doc: model.DashboardDocument):
            if body.new_parent is not None:
                model.move_frame(doc, frame_id, body.new_parent, body.geometry.rect())
            else:
                model.set_frame_geometry(doc, frame_id, body.geometry.rect())

        _, doc, revision = store.mutate(document_id, apply, expected_revision=expected)
        frame = doc.frames[frame_id]
        return _doc_response(
            {
                "id": frame.id,
                "parent": frame.parent,
                "geometry": {
                    "x": frame.geometry.x,
                    "y": frame.geometry.y,
                    "width": frame.geometry.width,
                    "height": frame.geometry.height,
                },
            },
            revision,
        )

    @app.post("/documents/{doc_id}/charts")
    def post_chart(doc_id: str, body: ChartBody):
        chart_id, _, revision = store.mutate(
            doc_id,
            lambda doc: model.add_chart(
                doc, body.frame, body.spec, body.rendered_svg, body.title_hint
            ),
        )
        return _doc_response({"chart_id": chart_id}, revision, status_code=201)

    @app.post("/documents/{doc_id}/snippets")
    def post_snippet(doc_id: str, body: SnippetBody):
        snippet_id, doc, revision = store.mutate(
            doc_id,
            lambda doc: model.add_snippet(doc, body.frame, body.role, body.content, body.state),
        )
        return _doc_response(_snippet_view(doc, snippet_id), revision, status_code=201)

    @app.patch("/snippets/{snippet_id}")
    def patch_snippet(
        snippet_id: str,
        body: SnippetPatchBody,
        document_id: str | None = None,
        x_document_revision: str | None = Header(default=None),
    ):
        owner = _find_owner("snippets", snippet_id, document_id)
        expected = _required_revision(x_document_revision, present=True)
        fields = body.model_dump(exclude_unset=True)

        def apply(doc: model.DashboardDocument):
            if "role" in fields:
                model.set_snippet_role(doc, snippet_id, fields["role"])
            if "content" in fields:
                model.edit_snippet(doc, snippet_id, fields["content"])
            if "locked" in fields:
                model.set_locked(doc, snippet_id, fields["locked"])
            if "format_class" in fields or "prominence" in fields:
                model.set_styling(
                    doc,
                    snippet_id,
                    format_class=fields.get("format_class"),
                    prominence=fields.get("prominence"),
                )
            if "facts" in fields:
                model.set_user_facts(doc, snippet_id, fields["facts"] or "")

        _, doc, revision = store.mutate(owner, apply, expected_revision=expected)
        return _doc_response(_snippet_view(doc, snippet_id), revision)

    @app.delete("/snippets/{snippet_id}")
    def delete_snippet(
        snippet_id: str,
        document_id: str | None = None,
        x_document_revision: str | None = Header(default=None),
    ):
        owner = _find_owner("snippets", snippet_id, document_id)
        expected = _required_revision(x_document_revision, present=True)
        _, _, revision = store.mutate(
            owner, lambda doc: model.remove_snippet(doc, snippet_id), expected_revision=expected
        )
        return _doc_response({"deleted": snippet_id}, revision)

    @app.get("/documents/{doc_id}/suggestions")
    def get_suggestions(doc_id: str):
        doc, revision = store.get(doc_id)
        return _doc_response(
            {"suggestions": [_suggestion_view(s) for s in suggestions.pending_suggestions(doc)]},
            revision,
        )

    @app.post("/suggestions/{suggestion_id}/accept")
    def accept_suggestion(suggestion_id: str, document_id: str | None = None):
        owner = _find_owner("suggestions", suggestion_id, document_id)
        created, _, revision = store.mutate(
            owner, lambda doc: suggestions.accept_suggestion(doc, suggestion_id)
        )
        return _doc_response({"created_snippet_ids": created}, revision)

    @app.post("/suggestions/{suggestion_id}/dismiss")
    def dismiss_suggestion(suggestion_id: str, document_id: str | None = None):
        owner = _find_owner("suggestions", suggestion_id, document_id)
        _, _, revision = store.mutate(
            owner, lambda doc: suggestions.dismiss_suggestion(doc, suggestion_id)
        )
        return _doc_response({"status": "dismissed"}, revision)

    @app.post("/suggestions/accept-all")
    def accept_all(body: DocumentIdBody):
        created, _, revision = store.mutate(
            body.document_id, lambda doc: suggestions.accept_all(doc)
        )
        return _doc_response({"created_snippet_ids": created}, revision)

    @app.get("/snippets/{snippet_id}/metrics")
    def snippet_metrics(snippet_id: str, document_id: str | None = None):
        owner = _find_owner("snippets", snippet_id, document_id)
        doc, revision = store.get(owner)
        report = metrics_mod.analyze(doc, snippet_id)
        guideline = metrics_mod.guideline_for(doc.snippets[snippet_id].role.value)
        judged = metrics_mod.conformance(report, guideline)
        return _doc_response(
            {
                "report": {
                    "word_count": report.word_count,
                    "sentence_count": report.sentence_count,
                    "syllable_count": report.syllable_count,
                    "lexical_density": report.lexical_density,
                    "fk_grade": report.fk_grade,
                    "provenance": report.provenance,
                },
                "guideline": {
                    "role": guideline.role,
                    "word_range": list(guideline.word_range),
                    "fk_range": list(guideline.fk_range),
                    "density_range": list(guideline.density_range),
                    "advisory": guideline.advisory,
                },
                "conformance": {
                    "word_count": judged.word_count,
                    "fk_grade": judged.fk_grade,
                    "lexical_density": judged.lexical_density,
                },
            },
            revision,
        )

    @app.get("/snippets/{snippet_id}/highlight")
    def snippet_highlight(snippet_id: str, document_id: str | None = None):
        owner = _find_owner("snippets", snippet_id, document_id)
        doc, revision = store.get(owner)
        return _doc_response(
            {"frame_ids": sorted(scope.highlight_set(doc, snippet_id))}, revision
        )

    @app.get("/snippets/{snippet_id}/scope")
    def snippet_scope(snippet_id: str, document_id: str | None = None):
        owner = _find_owner("snippets", snippet_id, document_id)
        doc, revision = store.get(owner)
        result = scope.scope_of(doc, snippet_id)
        return _doc_response(
            {"kind": result.kind, "covered_chart_ids": sorted(result.covered_chart_ids)},
            revision,
        )

    @app.post("/documents/{doc_id}/generate")
    def generate(doc_id: str, body: GenerateBody):
        if body.dry_run:
            doc, revision = store.get(doc_id)
            targets = body.targets if body.targets is not None else list(doc.snippets)
            plan = scope.generation_plan(doc, targets)
            return _doc_response(
                {"plan": {"order": plan.order, "levels": plan.levels}}, revision
            )

        def apply(doc: model.DashboardDocument):
            targets = body.targets if body.targets is not None else list(doc.snippets)
            report = generate_all(doc, targets, generator, gen_config)
            return {
                "generated": report.generated,
                "failed": report.failed,
                "plan": {"order": report.plan.order, "levels": report.plan.levels},
            }

        result, _, revision = store.mutate(doc_id, apply)
        return _doc_response(result, revision)

    @app.post("/snippets/{snippet_id}/refine")
    def refine_snippet(snippet_id: str, body: RefineBody, document_id: str | None = None):
        owner = _find_owner("snippets", snippet_id, document_id)
        content, doc, revision = store.mutate(
            owner, lambda doc: refine(doc, snippet_id, body.kind, generator, gen_config)
        )
        return _doc_response({"content": content, "snippet": _snippet_view(doc, snippet_id)}, revision)

    return app
