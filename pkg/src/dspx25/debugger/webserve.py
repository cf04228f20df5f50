"""WebSocket endpoint for the browser front panel.

Speaks the same newline-less JSON protocol as the TCP transport (one JSON
object per WebSocket text message) and serves the panel's static files
when a directory is supplied.  Requests flow through the session mailbox
like every other command source.

Annotations here must stay runtime-evaluated (no postponed annotations):
FastAPI resolves the WebSocket parameter type when the route is solved.
"""

import asyncio
import os
import threading


def build_app(session, panel_dir=None):
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect
    from fastapi.staticfiles import StaticFiles

    app = FastAPI(title="dspx25 front panel endpoint")

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        loop = asyncio.get_running_loop()
        outbox: asyncio.Queue = asyncio.Queue()

        def reply_fn(resp: dict):
            loop.call_soon_threadsafe(outbox.put_nowait, resp)

        async def pump():
            while True:
                await ws.send_json(await outbox.get())

        sender = asyncio.ensure_future(pump())
        try:
            while True:
                req = await ws.receive_json()
                session.mailbox.put((req, reply_fn))
        except (WebSocketDisconnect, Exception):
            pass
        finally:
            sender.cancel()

    if panel_dir and os.path.isdir(panel_dir):
        app.mount("/", StaticFiles(directory=panel_dir, html=True),
                  name="panel")
    return app


def serve_ws(session, host, port, panel_dir=None):
    """Run the WebSocket/static endpoint in a daemon thread."""
    import uvicorn

    app = build_app(session, panel_dir)
    config = uvicorn.Config(app, host=host, port=port, log_level="warning")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    return server
