"""Structured errors shared by the whole package.

Every error carries a stable ``code`` and can render itself as a JSON-safe
payload, so the CLI and the HTTP service never leak bare stack traces.
"""

from __future__ import annotations

from typing import Any


class MextreeError(Exception):
    """Base class for all structured errors raised by this package."""

    code = "Error"

    def payload(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self)}


class MalformedXml(MextreeError):
    """The input is not well-formed XML (within the supported subset)."""

    code = "MalformedXml"

    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset

    def payload(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self), "offset": self.offset}


class UnsupportedEntity(MextreeError):
    """A named entity reference outside the supported five-entity set."""

    code = "UnsupportedEntity"

    def __init__(self, entity: str, offset: int):
        super().__init__(f"unsupported entity reference &{entity};")
        self.entity = entity
        self.offset = offset

    def payload(self) -> dict[str, Any]:
        return {
            "error": self.code,
            "message": str(self),
            "entity": self.entity,
            "offset": self.offset,
        }


class NoContentMarkup(MextreeError):
    """The document contains no content markup to build a tree from."""

    code = "NoContentMarkup"


class ContentRootMissing(MextreeError):
    """A tree build was requested but the expression has no content root."""

    code = "ContentRootMissing"


class EmptyApply(MextreeError):
    """An application element with zero children cannot be fused."""

    code = "EmptyApply"

    def __init__(self, element_id: str):
        super().__init__(f"apply element {element_id!r} has no children")
        self.element_id = element_id


class UnmappedPragmaticElement(MextreeError):
    """A pragmatic element outside the shipped content-dictionary subset."""

    code = "UnmappedPragmaticElement"

    def __init__(self, element: str):
        super().__init__(
            f"no content-dictionary mapping for element {element!r}"
        )
        self.element = element


class InvalidSpecJson(MextreeError):
    """A similarity spec document does not match the declared JSON shape."""

    code = "InvalidSpecJson"


class SpecViolationError(MextreeError):
    """A similarity spec failed validation with hard errors."""

    code = "SpecViolation"

    def __init__(self, violations: list[Any]):
        names = ", ".join(v.kind for v in violations)
        super().__init__(f"similarity spec has hard violations: {names}")
        self.violations = violations

    def payload(self) -> dict[str, Any]:
        return {
            "error": self.code,
            "message": str(self),
            "violations": [v.payload() for v in self.violations],
        }


class ConverterError(MextreeError):
    code = "ConverterError"


class ConverterUnconfigured(ConverterError):
    """No external converter URL is configured."""

    code = "ConverterUnconfigured"


class ConverterUnreachable(ConverterError):
    """The configured external converter could not be reached."""

    code = "ConverterUnreachable"


class ConverterBadResponse(ConverterError):
    """The external converter answered with an unusable response."""

    code = "ConverterBadResponse"

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status

    def payload(self) -> dict[str, Any]:
        body = {"error": self.code, "message": str(self)}
        if self.status is not None:
            body["status"] = self.status
        return body
