"""Remote-control transport: newline-delimited JSON over local TCP.

One client at a time.  Each request line is a JSON object with a "cmd"
field (regs, readmem, writemem, step, run, stop, reset, bp_set, bp_clear,
bp_enable, bp_disable, bp_global, bps, load, disasm, dump_dac); every
reply carries "ok" and echoes the request's "seq" when present, so
clients may pipeline (reads are served while a run is in progress, which
means replies can arrive out of request order).

The transport only ferries requests into the session's mailbox; the
session's executor thread performs every state transition, exactly as it
does for console commands.
"""

from __future__ import annotations

import json
import socket
import socketserver
import threading

from .session import Session


def parse_endpoint(text: str) -> tuple[str, str, int]:
    """Parse tcp://host:port or ws://host:port (scheme defaults to tcp)."""
    scheme = "tcp"
    rest = text
    if "://" in text:
        scheme, rest = text.split("://", 1)
    if scheme not in ("tcp", "ws"):
        raise ValueError(f"unsupported endpoint scheme {scheme!r}")
    host, _, port = rest.rpartition(":")
    if not host:
        host = "127.0.0.1"
    return scheme, host, int(port)


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        session: Session = self.server.session          # type: ignore
        wlock = threading.Lock()

        def reply_fn(resp: dict):
            data = (json.dumps(resp) + "\n").encode()
            try:
                with wlock:
                    self.wfile.write(data)
                    self.wfile.flush()
            except OSError:
                pass            # client went away; the session lives on

        while True:
            try:
                line = self.rfile.readline()
            except OSError:
                break
            if not line:
                break
            line = line.strip()
            if not line:
                continue
            try:
                req = json.loads(line)
            except json.JSONDecodeError:
                reply_fn({"ok": False, "err": "syntax"})
                continue
            session.mailbox.put((req, reply_fn))


class RemoteServer:
    """Single-client TCP server feeding the session mailbox."""

    def __init__(self, session: Session, host: str = "127.0.0.1",
                 port: int = 0):
        class _Srv(socketserver.TCPServer):
            allow_reuse_address = True

        self._srv = _Srv((host, port), _Handler)
        self._srv.session = session                     # type: ignore
        self._thread = threading.Thread(target=self._srv.serve_forever,
                                        daemon=True)

    @property
    def address(self) -> tuple[str, int]:
        return self._srv.server_address[:2]

    def start(self):
        self._thread.start()
        return self

    def shutdown(self):
        self._srv.shutdown()
        self._srv.server_close()


class RemoteClient:
    """Minimal blocking NDJSON client (tests and tooling)."""

    def __init__(self, host: str, port: int, timeout: float = 10.0):
        self._sock = socket.create_connection((host, port), timeout=timeout)
        self._buf = b""
        self._seq = 0

    def request(self, **req) -> dict:
        self._seq += 1
        req.setdefault("seq", self._seq)
        self._sock.sendall((json.dumps(req) + "\n").encode())
        want = req["seq"]
        while True:
            resp = self._read_obj()
            if resp.get("seq") == want or "seq" not in resp:
                return resp

    def _read_obj(self) -> dict:
        while b"\n" not in self._buf:
            chunk = self._sock.recv(65536)
            if not chunk:
                raise ConnectionError("server closed")
            self._buf += chunk
        line, self._buf = self._buf.split(b"\n", 1)
        return json.loads(line)

    def close(self):
        self._sock.close()
