"""Client for an external LaTeX→MathML converter service.

No conversion happens here: the LaTeX source is posted to the configured
service and the MathML body comes back unmodified.  Upstream failures
surface as structured converter errors.
"""

from __future__ import annotations

import httpx

from .errors import (
    ConverterBadResponse,
    ConverterUnconfigured,
    ConverterUnreachable,
)

DEFAULT_TIMEOUT = 15.0


def convert_latex(latex: str, config) -> str:
    """POST LaTeX text to the configured converter and return its MathML.

    ``config`` is anything with a ``converter_url`` attribute (or a plain
    URL string).
    """
    url = config if isinstance(config, str) else getattr(config, "converter_url", None)
    if not url:
        raise ConverterUnconfigured(
            "no converter URL configured (set MEXTREE_CONVERTER_URL)"
        )
    try:
        response = httpx.post(
            url,
            content=latex.encode("utf-8"),
            headers={"Content-Type": "text/plain; charset=utf-8"},
            timeout=DEFAULT_TIMEOUT,
        )
    except httpx.HTTPError as exc:
        raise ConverterUnreachable(f"converter request failed: {exc}") from exc
    if response.status_code != 200:
        raise ConverterBadResponse(
            f"converter answered with status {response.status_code}",
            status=response.status_code,
        )
    body = response.text
    if not body.strip():
        raise ConverterBadResponse("converter answered with an empty body")
    return body
