"""Filesystem document store: one canonical file per document plus a sidecar
revision counter, with single-writer semantics per document.

Mutations go through :meth:`DocumentStore.mutate`, which holds the document's
lock for the whole load-modify-validate-save cycle and bumps the revision.
Readers get the stored canonical bytes, which are always a consistent
snapshot. Optimistic concurrency: callers may pass the revision they read,
and a mismatch aborts with ``stale-revision``.
"""

from __future__ import annotations

import re
import threading
from pathlib import Path
from typing import Any, Callable

from .errors import PlumeError
from .model import DashboardDocument, load, save, validate_document

_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_-]*$")


class DocumentStore:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, doc_id: str) -> threading.Lock:
        with self._locks_guard:
            if doc_id not in self._locks:
                self._locks[doc_id] = threading.Lock()
            return self._locks[doc_id]

    def _doc_path(self, doc_id: str) -> Path:
        if not _ID_RE.match(doc_id):
            raise PlumeError("unknown-document", f"invalid document id: {doc_id!r}")
        return self.path / f"{doc_id}.json"

    def _rev_path(self, doc_id: str) -> Path:
        return self.path / f"{doc_id}.rev"

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.path.glob("*.json"))

    def exists(self, doc_id: str) -> bool:
        return self._doc_path(doc_id).exists()

    def revision(self, doc_id: str) -> int:
        rev_path = self._rev_path(doc_id)
        if rev_path.exists():
            return int(rev_path.read_text("utf-8").strip() or "0")
        return 0

    def get_bytes(self, doc_id: str) -> tuple[bytes, int]:
        path = self._doc_path(doc_id)
        if not path.exists():
            raise PlumeError("unknown-document", f"no such document: {doc_id}")
        return path.read_bytes(), self.revision(doc_id)

    def get(self, doc_id: str) -> tuple[DashboardDocument, int]:
        data, revision = self.get_bytes(doc_id)
        return load(data), revision

    def _write(self, doc_id: str, doc: DashboardDocument, revision: int) -> None:
        self._doc_path(doc_id).write_bytes(save(doc))
        self._rev_path(doc_id).write_text(str(revision), encoding="utf-8")

    def create(self, doc: DashboardDocument) -> int:
        with self._lock_for(doc.id):
            if self.exists(doc.id):
                raise PlumeError("already-resolved", f"document {doc.id} already exists")
            validate_document(doc)
            self._write(doc.id, doc, 0)
            return 0

    def put(
        self, doc_id: str, doc: DashboardDocument, expected_revision: int | None = None
    ) -> int:
        """Replace (or create) a document wholesale."""
        if doc.id != doc_id:
            raise PlumeError(
                "invariant-violation",
                f"document id {doc.id!r} does not match path id {doc_id!r}",
            )
        validate_document(doc)
        with self._lock_for(doc_id):
            current = self.revision(doc_id) if self.exists(doc_id) else None
            if current is not None and expected_revision is not None:
                if expected_revision != current:
                    raise PlumeError(
                        "stale-revision",
                        f"document is at revision {current}, request carried {expected_revision}",
                    )
            new_revision = 0 if current is None else current + 1
            self._write(doc_id, doc, new_revision)
            return new_revision

    def mutate(
        self,
        doc_id: str,
        fn: Callable[[DashboardDocument], Any],
        expected_revision: int | None = None,
    ) -> tuple[Any, DashboardDocument, int]:
        """Single-writer load-modify-save. Returns (fn result, doc, revision)."""
        with self._lock_for(doc_id):
            doc, current = self.get(doc_id)
            if expected_revision is not None and expected_revision != current:
                raise PlumeError(
                    "stale-revision",
                    f"document is at revision {current}, request carried {expected_revision}",
                )
            result = fn(doc)
            validate_document(doc)
            new_revision = current + 1
            self._write(doc_id, doc, new_revision)
            return result, doc, new_revision
