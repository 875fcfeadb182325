"""Embedded HTTP/JSON play service for the web client.

Sessions live in memory with LRU + TTL eviction; every rule decision is
server-side (the client never computes legality).  Move requests that do not
match a currently legal move get 409 so stale clients resync; hints whose
search exceeds the budget get 425.
"""
from __future__ import annotations

import itertools
import json
import random
import re
import threading
import time
import uuid
from collections import OrderedDict
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .config import LabeledConfig, Rules
from .classify import classify
from .moves import apply_move, legal_moves
from .solve import solve
from . import parity

MAX_SESSIONS = 10_000
SESSION_TTL = 24 * 3600


class Session:
    def __init__(self, sid: str, rules: Rules, current: LabeledConfig,
                 target: LabeledConfig, solvable, stuck):
        self.id = sid
        self.rules = rules
        self.current = current
        self.target = target
        self.history: list = []
        self.created_at = time.time()
        self.solvable = solvable          # True / False / None (unknown)
        self.stuck = stuck                # sorted list of stuck labels
        self.lock = threading.Lock()

    def state_json(self) -> dict:
        moves = legal_moves(self.current, self.rules.k)
        return {
            "id": self.id,
            "d": self.rules.d, "k": self.rules.k, "l": self.rules.l,
            "current": self.current.to_json(),
            "target": self.target.to_json(),
            "legal_moves": [m.to_json() for m in moves],
            "solved": self.current == self.target,
            "stuck": self.stuck,
            "solvable": self.solvable,
            "history_length": len(self.history),
        }


class SessionStore:
    def __init__(self, max_sessions: int = MAX_SESSIONS, ttl: float = SESSION_TTL):
        self.max_sessions = max_sessions
        self.ttl = ttl
        self._lock = threading.Lock()
        self._sessions: OrderedDict = OrderedDict()

    def put(self, session: Session) -> None:
        with self._lock:
            now = time.time()
            dead = [sid for sid, s in self._sessions.items()
                    if now - s.created_at > self.ttl]
            for sid in dead:
                del self._sessions[sid]
            while len(self._sessions) >= self.max_sessions:
                self._sessions.popitem(last=False)
            self._sessions[session.id] = session

    def get(self, sid: str):
        with self._lock:
            s = self._sessions.get(sid)
            if s is not None:
                self._sessions.move_to_end(sid)
            return s


def default_target(rules: Rules) -> LabeledConfig:
    """Deterministic target: ascending labels on the first mobile mask (first
    non-isolated, then first mask, when no better stratum exists)."""
    n = 1 << rules.d
    first = None
    first_moving = None
    for occ in itertools.combinations(range(n), rules.tokens):
        mask = 0
        for v in occ:
            mask |= 1 << v
        if first is None:
            first = mask
        comp = parity.unlabeled_component(mask, rules.k, rules.d)
        kind, _ = parity.mask_mobility(comp)
        if kind == "mobile":
            return _identity_config(rules.d, mask)
        if kind == "semi-isolated" and first_moving is None:
            first_moving = mask
    return _identity_config(rules.d, first_moving if first_moving is not None else first)


def _identity_config(d: int, mask: int) -> LabeledConfig:
    slots = [0] * (1 << d)
    lab = 0
    for v in range(1 << d):
        if (mask >> v) & 1:
            lab += 1
            slots[v] = lab
    return LabeledConfig(d, tuple(slots))


def scramble_from(target: LabeledConfig, k: int, steps: int, seed: int) -> LabeledConfig:
    """Walk `steps` random legal moves from the target (stays solvable)."""
    rng = random.Random(seed)
    cur = target
    last = None
    for _ in range(steps):
        moves = legal_moves(cur, k)
        if last is not None and len(moves) > 1:
            moves = [m for m in moves if not (m.label == last.label and m.to == last.frm)]
        if not moves:
            break
        mv = rng.choice(moves)
        cur = apply_move(cur, mv)
        last = mv
    if steps > 0 and cur == target:
        moves = legal_moves(cur, k)
        if moves:
            cur = apply_move(cur, moves[0])
    return cur


class PuzzleService:
    """Route handlers, separated from the HTTP plumbing for direct testing."""

    def __init__(self, budget: int = 10 ** 7):
        self.store = SessionStore()
        self.budget = budget

    # each handler returns (status_code, payload_dict)

    def create_session(self, body: dict):
        try:
            rules = Rules(int(body["d"]), int(body["k"]), int(body["l"]))
        except (KeyError, ValueError, TypeError) as e:
            return 400, {"error": f"invalid rules: {e}"}
        try:
            if isinstance(body.get("target"), dict):
                target = LabeledConfig.from_json(body["target"])
                if target.d != rules.d or target.l != rules.l:
                    return 400, {"error": "target does not match the rules"}
            else:
                target = default_target(rules)
        except (KeyError, ValueError) as e:
            return 400, {"error": f"bad target: {e}"}
        scramble = body.get("scramble", {"random_steps": 20})
        try:
            if "config" in scramble:
                current = LabeledConfig.from_json(scramble["config"])
                if current.d != rules.d or current.labels != target.labels:
                    return 400, {"error": "scramble does not match the rules"}
            else:
                steps = int(scramble.get("random_steps",
                                         scramble.get("random-steps", 20)))
                current = scramble_from(target, rules.k, steps, int(body.get("seed", 0)))
        except (KeyError, ValueError, TypeError) as e:
            return 400, {"error": f"bad scramble: {e}"}

        cls = classify(current, rules.k, budget=min(self.budget, 10 ** 6))
        stuck = sorted(cls.stuck_set) if cls.kind in ("semi-isolated", "isolated") else []
        if "config" in scramble:
            res = solve(current, target, rules.k, budget=self.budget)
            solvable = {"solved": True,
                        "unsolvable-different-component": False,
                        "unknown-budget": None}[res.status]
        else:
            solvable = True
        sid = uuid.uuid4().hex
        session = Session(sid, rules, current, target, solvable, stuck)
        self.store.put(session)
        return 201, session.state_json()

    def get_session(self, sid: str):
        s = self.store.get(sid)
        if s is None:
            return 404, {"error": "unknown session"}
        with s.lock:
            return 200, s.state_json()

    def post_move(self, sid: str, body: dict):
        s = self.store.get(sid)
        if s is None:
            return 404, {"error": "unknown session"}
        with s.lock:
            try:
                label = int(body["label"])
                to = str(body["to"])
            except (KeyError, ValueError, TypeError) as e:
                return 400, {"error": f"bad move request: {e}"}
            match = None
            for m in legal_moves(s.current, s.rules.k):
                if m.label == label and m.to.to_string() == to:
                    match = m
                    break
            if match is None:
                return 409, {"error": "illegal move (stale client state?)",
                             "state": s.state_json()}
            s.current = apply_move(s.current, match)
            s.history.append(match)
            return 200, s.state_json()

    def get_hint(self, sid: str):
        s = self.store.get(sid)
        if s is None:
            return 404, {"error": "unknown session"}
        with s.lock:
            res = solve(s.current, s.target, s.rules.k, budget=self.budget)
            if res.status == "unknown-budget":
                return 425, {"error": "hint search exceeded the budget"}
            if res.status != "solved":
                return 409, {"error": "puzzle is unsolvable from here",
                             "solvable": False}
            if res.length == 0:
                return 200, {"move": None, "remaining": 0}
            return 200, {"move": res.moves[0].to_json(), "remaining": res.length}

    def get_solvable(self, sid: str):
        s = self.store.get(sid)
        if s is None:
            return 404, {"error": "unknown session"}
        with s.lock:
            res = solve(s.current, s.target, s.rules.k, budget=self.budget)
            if res.status == "unknown-budget":
                return 425, {"error": "verdict exceeded the budget", "solvable": None}
            verdict = res.status == "solved"
            s.solvable = verdict
            return 200, {"solvable": verdict,
                         "distance": res.length if verdict else None}


_ROUTES = [
    ("POST", re.compile(r"^/api/session$"), "create"),
    ("GET", re.compile(r"^/api/session/([0-9a-f]+)$"), "get"),
    ("POST", re.compile(r"^/api/session/([0-9a-f]+)/move$"), "move"),
    ("GET", re.compile(r"^/api/session/([0-9a-f]+)/hint$"), "hint"),
    ("GET", re.compile(r"^/api/session/([0-9a-f]+)/solvable$"), "solvable"),
]


def make_handler(service: PuzzleService, static_dir: str | None):
    static_root = Path(static_dir).resolve() if static_dir else None

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _send(self, code: int, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length", 0))
            if not length:
                return {}
            try:
                return json.loads(self.rfile.read(length))
            except json.JSONDecodeError:
                return {}

        def do_OPTIONS(self):
            self._send(204, {})

        def _dispatch(self, method: str):
            for m, pat, name in _ROUTES:
                if m != method:
                    continue
                match = pat.match(self.path)
                if not match:
                    continue
                if name == "create":
                    code, payload = service.create_session(self._body())
                elif name == "get":
                    code, payload = service.get_session(match.group(1))
                elif name == "move":
                    code, payload = service.post_move(match.group(1), self._body())
                elif name == "hint":
                    code, payload = service.get_hint(match.group(1))
                else:
                    code, payload = service.get_solvable(match.group(1))
                self._send(code, payload)
                return True
            return False

        def do_POST(self):
            if not self._dispatch("POST"):
                self._send(404, {"error": "no such endpoint"})

        def do_GET(self):
            if self._dispatch("GET"):
                return
            if static_root is not None:
                self._serve_static()
            else:
                self._send(404, {"error": "no such endpoint"})

        def _serve_static(self):
            rel = self.path.lstrip("/") or "index.html"
            target = (static_root / rel).resolve()
            if not str(target).startswith(str(static_root)) or not target.is_file():
                self._send(404, {"error": "not found"})
                return
            ctype = {
                ".html": "text/html", ".js": "text/javascript",
                ".css": "text/css", ".json": "application/json",
                ".svg": "image/svg+xml", ".map": "application/json",
            }.get(target.suffix, "application/octet-stream")
            data = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(data)

    return Handler


def make_server(host: str = "127.0.0.1", port: int = 8080,
                static_dir: str | None = None, budget: int = 10 ** 7):
    service = PuzzleService(budget=budget)
    server = ThreadingHTTPServer((host, port), make_handler(service, static_dir))
    server.service = service
    return server


def run_server(host: str = "127.0.0.1", port: int = 8080,
               static_dir: str | None = None, budget: int = 10 ** 7) -> None:
    server = make_server(host, port, static_dir, budget)
    print(f"serving on http://{host}:{port}/ "
          f"(static: {static_dir or 'none'})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
