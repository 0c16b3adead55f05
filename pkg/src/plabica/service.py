"""Session state and the local HTTP service behind the explorer UI.

One session document at a time: a family graph, an optional dihedral twist,
and the mutation history.  Replaying the history from the family seed must
reproduce the current graph byte for byte; the service serialises mutating
requests through a single lock while reads run against immutable snapshots.
"""

from __future__ import annotations

import json
import math
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .plabic import BOUNDARY, PlabicError, PlabicGraph, build_family
from .polytopes import superpotential_polytope
from .quiver import quiver_from_graph
from .seeds import superpotential_terms
from .subsets import DihedralElement, KSubset

DEFAULT_SESSION_PATH = os.environ.get("PLABICA_SESSION", "plabica-session.json")


def parse_label(data, n):
    if not isinstance(data, (list, tuple)) or not all(isinstance(x, int) for x in data):
        raise PlabicError("malformed-label", f"label must be a list of integers, got {data!r}")
    if len(set(data)) != len(data) or any(not 1 <= x <= n for x in data):
        raise PlabicError("malformed-label", f"label {data} is not a subset of [{n}]")
    return KSubset(n, data)


def layout_positions(graph_json):
    """Deterministic barycentric layout: boundary on a circle, inner averaged."""
    n = graph_json["n"]
    pos = {}
    inner = []
    for item in graph_json["vertices"]:
        v = item["id"]
        if item["colour"] == BOUNDARY:
            theta = math.pi / 2 - 2 * math.pi * (v - 1) / n
            pos[v] = [math.cos(theta), math.sin(theta)]
        else:
            inner.append(v)
            pos[v] = [0.0, 0.0]
    neighbours = {v: [] for v in inner}
    for u, v in graph_json["edges"]:
        if u in neighbours:
            neighbours[u].append(v)
        if v in neighbours:
            neighbours[v].append(u)
    for _ in range(400):
        for v in inner:
            xs = [pos[w][0] for w in neighbours[v]]
            ys = [pos[w][1] for w in neighbours[v]]
            pos[v] = [sum(xs) / len(xs), sum(ys) / len(ys)]
    return {str(v): [round(x, 6) for x in p] for v, p in pos.items()}


def graph_payload(G):
    """The /graph response: spec graph JSON plus faces, mutability, layout."""
    data = G.to_json()
    H = PlabicGraph.from_json(data)
    labels = H.face_labels()
    frozen = set(H.frozen_labels())
    mutable = set(H.mutable_labels())
    outer = H.outer_face_index()
    faces = []
    for f, cycle in enumerate(H.faces()):
        if f == outer:
            continue
        lab = labels[f]
        faces.append(
            {
                "label": lab.to_json(),
                "right_label": lab.complement().to_json(),
                "frozen": lab in frozen,
                "mutable": lab in mutable,
                "vertices": [H.origin(d) for d in cycle],
            }
        )
    faces.sort(key=lambda item: item["label"])
    return {"graph": data, "faces": faces, "layout": layout_positions(data)}


class Session:
    """The single mutable document: family seed, dihedral twist, history."""

    def __init__(self, path=None):
        self.path = Path(path or DEFAULT_SESSION_PATH)
        self.lock = threading.Lock()
        self.state = None
        if self.path.exists():
            try:
                self.state = json.loads(self.path.read_text())
                self._graph = self._replay(self.state)
            except (ValueError, PlabicError, KeyError):
                self.state = None
        if self.state is None:
            self.reset("ch", 3, 6, 0, False)

    @staticmethod
    def _replay(state):
        G = build_family(state["family"], state["k"], state["n"]).contract()
        dh = state.get("dihedral") or {}
        if dh.get("shift") or dh.get("reflected"):
            G = G.dihedral_act(
                DihedralElement(state["n"], dh.get("shift", 0), dh.get("reflected", False))
            ).contract()
        for lab in state.get("history", []):
            G = G.mutate(KSubset(state["n"], lab))
        return G

    def _persist(self):
        self.path.write_text(json.dumps(self.state, sort_keys=True))

    def reset(self, family, k, n, shift=0, reflected=False):
        with self.lock:
            state = {
                "family": family,
                "k": k,
                "n": n,
                "dihedral": {"shift": shift, "reflected": bool(reflected)},
                "history": [],
            }
            self._graph = self._replay(state)
            self.state = state
            self._persist()
            return self._graph

    def graph(self):
        return self._graph

    def mutate(self, label):
        with self.lock:
            before = self._graph.label_collection()
            G = self._graph.mutate(label)
            added = sorted(set(G.label_collection().labels) - set(before.labels))
            self.state["history"].append(label.to_json())
            self._graph = G
            self._persist()
            return G, added[0] if added else None

    def history(self):
        return dict(self.state)


def response_graph(session):
    payload = graph_payload(session.graph())
    payload["history"] = session.history()["history"]
    return payload


def response_mutate(session, label):
    G, new_label = session.mutate(label)
    payload = graph_payload(G)
    payload["changed"] = {
        "removed": label.to_json(),
        "added": new_label.to_json() if new_label else None,
    }
    payload["history"] = session.history()["history"]
    return payload


def response_reset(session, family, k, n, shift=0, reflected=False):
    G = session.reset(family, k, n, shift, reflected)
    payload = graph_payload(G)
    payload["history"] = []
    return payload


def _json_bytes(payload):
    return json.dumps(payload, sort_keys=True).encode()


ERROR_STATUS = {
    "malformed-label": 400,
    "absent": 409,
    "frozen": 409,
    "not-mutable": 409,
    "invalid-family": 422,
    "budget": 503,
}


def make_handler(session, static_root=None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):
            pass

        def _send(self, status, payload, content_type="application/json"):
            body = _json_bytes(payload) if content_type == "application/json" else payload
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _error(self, exc):
            status = ERROR_STATUS.get(getattr(exc, "code", ""), 422)
            self._send(status, {"error": str(exc), "code": getattr(exc, "code", "error")})

        def _body(self):
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                return json.loads(raw or b"{}")
            except ValueError:
                raise PlabicError("malformed-label", "request body is not valid JSON")

        def do_OPTIONS(self):
            self._send(204, {})

        def do_GET(self):
            try:
                path, _, query = self.path.partition("?")
                params = dict(
                    part.split("=", 1) for part in query.split("&") if "=" in part
                )
                if path == "/graph":
                    self._send(200, response_graph(session))
                elif path == "/orbit":
                    orbit = session.graph().orbit()
                    self._send(200, {"orbit": [C.to_json() for C in orbit]})
                elif path == "/superpotential":
                    terms = superpotential_terms(session.graph())
                    self._send(
                        200,
                        {"terms": {str(i): t.to_json() for i, t in terms.items()}},
                    )
                elif path == "/polytope":
                    from fractions import Fraction

                    r = Fraction(params.get("r", "1"))
                    P = superpotential_polytope(session.graph(), r)
                    self._send(200, P.to_json())
                elif path == "/history":
                    self._send(200, session.history())
                elif static_root and path in ("/", "/index.html"):
                    index = Path(static_root) / "index.html"
                    if index.exists():
                        self._send(200, index.read_bytes(), "text/html")
                    else:
                        self._send(404, {"error": "no UI build present"})
                elif static_root and path.startswith("/assets/"):
                    target = (Path(static_root) / path.lstrip("/")).resolve()
                    if target.is_file() and str(target).startswith(str(Path(static_root).resolve())):
                        ctype = "text/javascript" if target.suffix == ".js" else "text/css"
                        self._send(200, target.read_bytes(), ctype)
                    else:
                        self._send(404, {"error": "not found"})
                else:
                    self._send(404, {"error": f"unknown path {path}"})
            except PlabicError as exc:
                self._error(exc)

        def do_POST(self):
            try:
                body = self._body()
                if self.path == "/mutate":
                    label = parse_label(body.get("label"), session.graph().n)
                    self._send(200, response_mutate(session, label))
                elif self.path == "/reset":
                    family = body.get("family", "ch")
                    k, n = body.get("k"), body.get("n")
                    if not isinstance(k, int) or not isinstance(n, int):
                        raise PlabicError("invalid-family", "k and n must be integers")
                    dh = body.get("dihedral") or {}
                    self._send(
                        200,
                        response_reset(
                            session,
                            family,
                            k,
                            n,
                            dh.get("shift", 0) or 0,
                            bool(dh.get("reflected")),
                        ),
                    )
                else:
                    self._send(404, {"error": f"unknown path {self.path}"})
            except PlabicError as exc:
                self._error(exc)

    return Handler


def serve(port=8642, session_path=None, static_root=None):
    session = Session(session_path)
    if static_root is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static_root = candidate if candidate.exists() else None
    server = ThreadingHTTPServer(("127.0.0.1", port), make_handler(session, static_root))
    return server


def serve_forever(port=8642, session_path=None):
    server = serve(port, session_path)
    print(f"plabica service on http://127.0.0.1:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
