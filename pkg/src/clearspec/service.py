"""Session-scoped HTTP API for the web workbench.

Every linguistic result served here is produced by the same session core
the CLI uses, so the two front ends are byte-identical on equal input.
Requests within a session are serialized; distinct sessions are independent.
"""

import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import lexicon as lx
from .errors import Diagnostic, UnknownWords
from .executor import EventTrace, parse_assertion
from .session import Session


class SentenceIn(BaseModel):
    text: str


class DecisionIn(BaseModel):
    accept: bool


class LexEntryIn(BaseModel):
    cls: str
    lemma: str
    gender: str = "neut"
    kind: str = "count"
    synonyms: list[str] = []
    abbreviations: list[str] = []


class QueryIn(BaseModel):
    text: str
    offset: int = 0
    limit: int = 10


class ExecutionIn(BaseModel):
    defs: str | None = None


class ReplyIn(BaseModel):
    text: str


class _SessionBox:
    def __init__(self):
        self.session = Session()
        self.lock = threading.Lock()


class _ExecutionBox:
    def __init__(self, execution):
        self.execution = execution
        self.gen = execution.run()
        self.lock = threading.Lock()
        self.pending = None
        self.new_events = []
        self.done = False
        self._advance(first=True)

    def _advance(self, reply=None, first=False):
        try:
            msg = next(self.gen) if first else self.gen.send(reply)
            while True:
                if isinstance(msg, EventTrace):
                    self.new_events.append(msg.line)
                    msg = self.gen.send(None)
                else:
                    self.pending = msg
                    return
        except StopIteration:
            self.pending = None
            self.done = True

    def next_payload(self):
        events, self.new_events = self.new_events, []
        pending = None
        if self.pending is not None:
            pending = {"kind": self.pending.kind, "text": self.pending.text}
        return {"events": events, "pending": pending, "done": self.done}

    def reply(self, text):
        if self.pending is None:
            return False
        self.pending = None
        self._advance(reply=text)
        return True


def create_app(static_dir=None):
    app = FastAPI(title="clearspec")
    sessions = {}
    executions = {}

    def get_session(sid) -> _SessionBox:
        box = sessions.get(sid)
        if box is None:
            raise HTTPException(404, "unknown session")
        return box

    def diagnostics_payload(exc):
        return {"diagnostics": [exc.as_dict()]}

    @app.post("/api/sessions")
    def create_session():
        sid = uuid.uuid4().hex[:12]
        sessions[sid] = _SessionBox()
        return {"id": sid}

    @app.post("/api/sessions/{sid}/sentences")
    def post_sentence(sid: str, body: SentenceIn):
        box = get_session(sid)
        with box.lock:
            try:
                analysis = box.session.analyze(body.text)
            except UnknownWords as exc:
                return {
                    "paraphrase": None,
                    "markers": [],
                    "drsText": box.session.drs_text(),
                    "diagnostics": [exc.as_dict()],
                    "unknownWords": exc.words,
                }
            except Diagnostic as exc:
                raise HTTPException(422, detail=diagnostics_payload(exc))
            from .drs import render

            return {
                "paraphrase": analysis.paraphrase.text,
                "markers": [m.as_dict() for m in analysis.paraphrase.markers],
                "drsText": render(analysis.drs),
                "diagnostics": [],
                "unknownWords": [],
            }

    @app.post("/api/sessions/{sid}/decision")
    def post_decision(sid: str, body: DecisionIn):
        box = get_session(sid)
        with box.lock:
            if box.session.pending is None:
                raise HTTPException(409, "no pending sentence")
            if body.accept:
                clauses = box.session.accept()
                return {"accepted": True, "clausesText": clauses}
            box.session.reject()
            return {"accepted": False}

    @app.post("/api/sessions/{sid}/lexicon")
    def post_lexicon(sid: str, body: LexEntryIn):
        box = get_session(sid)
        with box.lock:
            entry = lx.LexEntry(
                lemma=body.lemma,
                cls=body.cls,
                gender=body.gender,
                noun_kind=body.kind if body.cls == lx.COMMON_NOUN else "n/a",
                synonyms=tuple(body.synonyms),
                abbreviations=tuple(body.abbreviations),
            )
            try:
                version = box.session.add_word(entry)
            except Diagnostic as exc:
                raise HTTPException(422, detail=diagnostics_payload(exc))
            return {"lexiconVersion": version}

    @app.post("/api/sessions/{sid}/query")
    def post_query(sid: str, body: QueryIn):
        box = get_session(sid)
        with box.lock:
            try:
                result = box.session.ask(body.text)
            except Diagnostic as exc:
                raise HTTPException(422, detail=diagnostics_payload(exc))
            window = result.answers[body.offset : body.offset + body.limit]
            return {
                "kind": result.kind,
                "answers": window,
                "exhausted": body.offset + body.limit >= len(result.answers),
                "total": len(result.answers),
                "note": result.note,
            }

    @app.post("/api/sessions/{sid}/executions")
    def post_execution(sid: str, body: ExecutionIn):
        box = get_session(sid)
        with box.lock:
            definitions = None
            if body.defs:
                definitions = [
                    parse_assertion(line, i + 1)
                    for i, line in enumerate(body.defs.splitlines())
                    if line.strip() and not line.strip().startswith("#")
                ]
            try:
                exbox = _ExecutionBox(box.session.execution(definitions))
            except Diagnostic as exc:
                raise HTTPException(422, detail=diagnostics_payload(exc))
            eid = uuid.uuid4().hex[:12]
            executions[eid] = exbox
            return {"execId": eid}

    @app.get("/api/executions/{eid}/next")
    def execution_next(eid: str):
        exbox = executions.get(eid)
        if exbox is None:
            raise HTTPException(404, "unknown execution")
        with exbox.lock:
            return exbox.next_payload()

    @app.post("/api/executions/{eid}/reply")
    def execution_reply(eid: str, body: ReplyIn):
        exbox = executions.get(eid)
        if exbox is None:
            raise HTTPException(404, "unknown execution")
        with exbox.lock:
            try:
                ok = exbox.reply(body.text)
            except Diagnostic as exc:
                raise HTTPException(422, detail=diagnostics_payload(exc))
            if not ok:
                raise HTTPException(409, "no pending request")
            return {"ok": True}

    if static_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        if candidate.is_dir():
            static_dir = candidate
    if static_dir:
        static_dir = Path(static_dir)
        index = static_dir / "index.html"

        @app.get("/")
        def root():
            return FileResponse(index)

        app.mount("/ui", StaticFiles(directory=static_dir), name="ui")

    return app


def serve(host="127.0.0.1", port=8722):
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
