"""HTTP session server for the switching game.

JSON protocol (also consumed by the browser client):

    POST /api/games {graph, variant, first, engine_side, s?, t?}
        -> {id, analysis: {winner, certificate}}
    GET  /api/games/{id}            -> full state + legal moves
    POST /api/games/{id}/moves {edge_id}   (omit edge_id to step the engine)
        -> updated state (+ engine_reply when the engine answered)
    GET  /api/games/{id}/certificate -> strategy core as edge/partition sets

Errors: 404 unknown id, 409 not your turn / edge already tagged / game
over, 422 malformed request.  One lock per session; sessions independent.
"""
from __future__ import annotations

import json
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import game
from .core import Graph
from .errors import InputError, SylvaError


class GameSession:
    def __init__(self, graph: Graph, variant: str, first: str,
                 engine_side: str, s, t):
        self.lock = threading.Lock()
        self.graph = graph
        self.variant = variant
        self.first = first
        self.engine_side = engine_side  # "short", "cut", "both" or "none"
        self.s = s
        self.t = t
        self.analysis = game.analyze(graph, variant, first, s, t)
        self.state = game.GameState.opening(graph, variant, first, s, t)
        self.cores = {}
        for side in (game.SHORT, game.CUT):
            if engine_side in (side, "both"):
                self.cores[side] = game.build_core(
                    graph, self.analysis, side, variant, first, s, t
                )

    def engine_turn(self) -> bool:
        return (
            self.state.winner() is None
            and bool(self.state.untagged())
            and self.state.to_move in self.cores
        )

    def engine_step(self):
        side = self.state.to_move
        eid, self.cores[side] = game.engine_move(self.state, self.cores[side])
        self.state = self.state.apply(eid)
        return eid

    def human_move(self, eid: int):
        if self.state.winner() is not None or not self.state.untagged():
            raise Conflict("game is over")
        if self.state.to_move in self.cores and self.engine_side != "both":
            raise Conflict("not your turn")
        tagged = self.state.short_tags | self.state.cut_tags
        if eid in tagged:
            raise Conflict(f"edge {eid} already tagged")
        if eid not in self.graph.by_id:
            raise Unprocessable(f"unknown edge {eid}")
        self.state = self.state.apply(eid)

    def state_json(self) -> dict:
        st = self.state
        return {
            "variant": st.variant,
            "first": st.first,
            "s": st.s,
            "t": st.t,
            "engine_side": self.engine_side,
            "graph": {
                "n": self.graph.n,
                "edges": [[eid, u, v] for eid, u, v in sorted(self.graph.edges)],
            },
            "tags": {
                "short": sorted(st.short_tags),
                "cut": sorted(st.cut_tags),
            },
            "to_move": st.to_move,
            "winner": st.winner(),
            "legal_moves": st.untagged() if st.winner() is None else [],
            "history": [[mover, eid] for mover, eid in st.history],
        }

    def certificate_json(self) -> dict:
        out: dict = {"analysis": analysis_json(self.analysis)}
        cores = {}
        for side, core in self.cores.items():
            cores[side] = core_json(core)
        out["cores"] = cores
        return out


def analysis_json(analysis: game.GameAnalysis) -> dict:
    cert = analysis.certificate
    payload: dict = {"winner": analysis.winner, "note": analysis.note}
    if isinstance(cert, game.ShortCertificate):
        payload["certificate"] = {
            "kind": "short",
            "nodes": sorted(cert.nodes),
            "trees": [sorted(t) for t in cert.trees],
            "first_edge": cert.first_edge,
        }
    elif isinstance(cert, game.CutCertificate):
        payload["certificate"] = {
            "kind": "cut",
            "partition": cert.partition.as_lists(),
            "deficit": cert.deficit,
            "forest_split": (
                [sorted(f) for f in cert.forest_split]
                if cert.forest_split is not None else None
            ),
        }
    else:
        payload["certificate"] = None
    return payload


def core_json(core) -> dict:
    if isinstance(core, game.ShortCore):
        return {
            "kind": "short-trees",
            "trees": [sorted(t) for t in core.trees],
            "blocks": _blocks_of(core.node_map),
        }
    if isinstance(core, game.CutCore):
        return {
            "kind": "cut-partition",
            "partition": core.partition.as_lists(),
            "cross_edges": sorted(core.cross_edges),
        }
    if isinstance(core, game.CutStCore):
        real = [t for t in core.trees]
        return {
            "kind": "cut-pairing",
            "reservoirs": [
                sorted(set(core.graph.edge_ids) - set(t) - {core.virtual})
                for t in real
            ],
            "pending": list(core.pending),
        }
    if isinstance(core, game.DeferredCutCore):
        return {"kind": "cut-deferred"}
    return {"kind": "heuristic"}


def _blocks_of(node_map) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for orig, derived in enumerate(node_map):
        if derived >= 0:
            groups.setdefault(derived, []).append(orig)
    return [sorted(g) for g in sorted(groups.values())]


class Conflict(Exception):
    pass


class Unprocessable(Exception):
    pass


class GameServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, static_dir: str | None):
        super().__init__(address, Handler)
        self.sessions: dict[str, GameSession] = {}
        self.registry_lock = threading.Lock()
        self.static_dir = Path(static_dir).resolve() if static_dir else None


class Handler(BaseHTTPRequestHandler):
    server: GameServer

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _json(self, code: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        try:
            return json.loads(self.rfile.read(length).decode())
        except json.JSONDecodeError:
            raise Unprocessable("request body is not valid JSON")

    def _session(self, sid: str) -> GameSession:
        with self.server.registry_lock:
            session = self.server.sessions.get(sid)
        if session is None:
            raise KeyError(sid)
        return session

    def do_GET(self):
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if len(parts) >= 2 and parts[0] == "api" and parts[1] == "games":
                session = self._session(parts[2])
                if len(parts) == 3:
                    with session.lock:
                        return self._json(200, session.state_json())
                if len(parts) == 4 and parts[3] == "certificate":
                    with session.lock:
                        return self._json(200, session.certificate_json())
                return self._json(404, {"error": "unknown endpoint"})
            return self._static(parts)
        except KeyError:
            return self._json(404, {"error": "unknown game id"})

    def do_POST(self):
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if parts[:2] == ["api", "games"] and len(parts) == 2:
                return self._create()
            if parts[:2] == ["api", "games"] and len(parts) == 4 and parts[3] == "moves":
                return self._move(parts[2])
            return self._json(404, {"error": "unknown endpoint"})
        except KeyError:
            return self._json(404, {"error": "unknown game id"})
        except Conflict as exc:
            return self._json(409, {"error": str(exc)})
        except (Unprocessable, InputError) as exc:
            return self._json(422, {"error": str(exc)})
        except SylvaError as exc:
            return self._json(500, {"error": str(exc)})

    def _create(self):
        body = self._body()
        try:
            spec = body["graph"]
            graph = Graph.build(int(spec["n"]), [tuple(e) for e in spec["edges"]])
            variant = body.get("variant", "global")
            first = body.get("first", "cut")
            engine_side = body.get("engine_side", "none")
            s = body.get("s")
            t = body.get("t")
        except (KeyError, TypeError, ValueError) as exc:
            raise Unprocessable(f"malformed graph payload: {exc}")
        if engine_side not in ("short", "cut", "both", "none"):
            raise Unprocessable(f"bad engine_side {engine_side!r}")
        session = GameSession(graph, variant, first, engine_side, s, t)
        sid = uuid.uuid4().hex[:12]
        with self.server.registry_lock:
            self.server.sessions[sid] = session
        with session.lock:
            # the engine opens when it owns the first move (spectate steps
            # manually instead)
            if session.engine_side != "both" and session.engine_turn():
                session.engine_step()
            payload = {
                "id": sid,
                "analysis": analysis_json(session.analysis),
                "state": session.state_json(),
            }
        return self._json(201, payload)

    def _move(self, sid: str):
        session = self._session(sid)
        body = self._body()
        with session.lock:
            reply = None
            if "edge_id" in body and body["edge_id"] is not None:
                try:
                    eid = int(body["edge_id"])
                except (TypeError, ValueError):
                    raise Unprocessable("edge_id must be an integer")
                session.human_move(eid)
                if session.engine_side != "both" and session.engine_turn():
                    reply = session.engine_step()
            else:
                if not session.engine_turn():
                    raise Conflict("engine has no move to make")
                reply = session.engine_step()
            payload = session.state_json()
            payload["engine_reply"] = reply
        return self._json(200, payload)

    def _static(self, parts):
        root = self.server.static_dir
        if root is None:
            return self._json(404, {"error": "no static directory configured"})
        rel = "/".join(parts) or "index.html"
        target = (root / rel).resolve()
        if not str(target).startswith(str(root)) or not target.is_file():
            return self._json(404, {"error": "not found"})
        content_types = {
            ".html": "text/html", ".js": "text/javascript",
            ".css": "text/css", ".svg": "image/svg+xml",
            ".json": "application/json", ".map": "application/json",
        }
        ctype = content_types.get(target.suffix, "application/octet-stream")
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def serve(port: int, static_dir: str | None = None) -> None:
    server = GameServer(("0.0.0.0", port), static_dir)
    print(f"serving switching-game API on port {port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def make_server(port: int, static_dir: str | None = None) -> GameServer:
    """Bound but not yet serving; callers drive serve_forever in a thread."""
    return GameServer(("127.0.0.1", port), static_dir)
