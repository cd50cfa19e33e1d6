"""Walkthrough: the HTTP surface.

Starts the service on an ephemeral port, exercises every endpoint with a
real client, and prints the responses.  The same bytes are available via
``mextree parse`` / ``mextree compare`` on the command line.
"""

import threading
import time

import httpx
import uvicorn

from mextree.service import ServiceConfig, create_app

MATHML_A = "<math><apply><plus/><ci>x</ci><ci>y</ci></apply></math>"
MATHML_B = "<math><apply><minus/><ci>u</ci><ci>v</ci></apply></math>"

config = ServiceConfig(port=8765)
server = uvicorn.Server(uvicorn.Config(
    create_app(config), host="127.0.0.1", port=config.port, log_level="error"
))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)

base = f"http://127.0.0.1:{config.port}"
with httpx.Client(base_url=base) as client:
    print("GET  /v1/health   ->", client.get("/v1/health").json())

    tree = client.post("/v1/tree", content=MATHML_A)
    print("POST /v1/tree     ->", tree.json()["infix"])

    svg = client.post("/v1/tree/svg", content=MATHML_A)
    print("POST /v1/tree/svg ->", svg.headers["content-type"], f"{len(svg.content)} bytes")

    compared = client.post("/v1/compare", json={
        "mathmlA": MATHML_A,
        "mathmlB": MATHML_B,
        "measure": "taxonomic",
    }).json()
    print("POST /v1/compare  -> spec:", compared["spec"])

server.should_exit = True
thread.join(timeout=5)
