"""Minimal non-validating XML reader for MathML documents.

Supports exactly the constructs MathML uses: elements, attributes, text,
comments, CDATA sections, the five predefined named entities and numeric
character references.  Document type declarations are rejected and
processing instructions are skipped, so no external input can influence
the parsed content.

All offsets are byte offsets into the UTF-8 input, which makes parse
errors point at the exact input position.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedXml, UnsupportedEntity

MATHML_NS = "http://www.w3.org/1998/Math/MathML"

_NAMED_ENTITIES = {
    "lt": "<",
    "gt": ">",
    "amp": "&",
    "quot": '"',
    "apos": "'",
}

_WS = b" \t\r\n"
_NAME_END = b" \t\r\n/>=\"'<&"


@dataclass(frozen=True)
class XmlElement:
    """One element of the parsed tree.

    ``children`` holds a mix of nested :class:`XmlElement` objects and plain
    strings (text segments, already entity-decoded).  ``source_span`` is the
    [start, end) byte range of the element in the original input; it is
    excluded from equality so that re-parsing serialized output compares
    equal to the original tree.
    """

    name: str
    attributes: dict[str, str] = field(default_factory=dict)
    children: tuple["XmlElement | str", ...] = ()
    source_span: tuple[int, int] = field(default=(0, 0), compare=False)

    def element_children(self) -> list["XmlElement"]:
        return [c for c in self.children if isinstance(c, XmlElement)]

    def text_content(self) -> str:
        """Concatenated text of this element and its descendants."""
        parts: list[str] = []
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                parts.append(child.text_content())
        return "".join(parts)


class _Scanner:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def fail(self, message: str, offset: int | None = None) -> MalformedXml:
        return MalformedXml(message, self.pos if offset is None else offset)

    def at_end(self) -> bool:
        return self.pos >= len(self.data)

    def startswith(self, token: bytes) -> bool:
        return self.data.startswith(token, self.pos)

    def expect(self, token: bytes) -> None:
        if not self.startswith(token):
            raise self.fail(f"expected {token.decode()!r}")
        self.pos += len(token)

    def skip_ws(self) -> None:
        data = self.data
        while self.pos < len(data) and data[self.pos] in _WS:
            self.pos += 1

    def skip_until(self, token: bytes, construct: str) -> None:
        end = self.data.find(token, self.pos)
        if end < 0:
            raise self.fail(f"unterminated {construct}")
        self.pos = end + len(token)

    def read_name(self) -> str:
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos] not in _NAME_END:
            self.pos += 1
        if self.pos == start:
            raise self.fail("expected a name")
        name = data[start:self.pos].decode("utf-8", errors="replace")
        first = name[0]
        if first.isdigit() or first in ".-":
            raise self.fail(f"invalid name {name!r}", start)
        return name

    def read_entity(self) -> str:
        # positioned on '&'
        start = self.pos
        end = self.data.find(b";", self.pos, self.pos + 64)
        if end < 0:
            raise self.fail("unterminated entity reference", start)
        body = self.data[self.pos + 1:end].decode("ascii", errors="replace")
        self.pos = end + 1
        if body.startswith("#"):
            try:
                code = int(body[2:], 16) if body[1:2] in ("x", "X") else int(body[1:])
                return chr(code)
            except (ValueError, OverflowError) as exc:
                raise self.fail(f"bad character reference &{body};", start) from exc
        if body in _NAMED_ENTITIES:
            return _NAMED_ENTITIES[body]
        raise UnsupportedEntity(body, start)

    def decode_span(self, start: int, end: int) -> str:
        try:
            return self.data[start:end].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedXml("invalid UTF-8 text", start + exc.start) from exc


def parse_document(text: str | bytes) -> XmlElement:
    """Parse one XML document and return its root element.

    Namespace prefixes on elements bound to the MathML namespace are
    stripped; ``xmlns`` attributes are kept verbatim so serialization
    round-trips.
    """
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    if data.startswith(b"\xef\xbb\xbf"):
        data = data[3:]
    sc = _Scanner(data)
    _skip_misc(sc)
    if sc.at_end():
        raise sc.fail("document has no root element")
    if not sc.startswith(b"<"):
        raise sc.fail("content before the root element")
    root = _parse_element(sc)
    _skip_misc(sc)
    if not sc.at_end():
        raise sc.fail("content after the root element")
    return _strip_mathml_prefixes(root, {})


def _skip_misc(sc: _Scanner) -> None:
    while True:
        sc.skip_ws()
        if sc.startswith(b"<!--"):
            sc.pos += 4
            sc.skip_until(b"-->", "comment")
        elif sc.startswith(b"<?"):
            sc.pos += 2
            sc.skip_until(b"?>", "processing instruction")
        elif sc.startswith(b"<!DOCTYPE") or sc.startswith(b"<!doctype"):
            raise sc.fail("document type declarations are not supported")
        else:
            return


def _parse_element(sc: _Scanner) -> XmlElement:
    start = sc.pos
    sc.expect(b"<")
    name = sc.read_name()
    attributes: dict[str, str] = {}
    while True:
        sc.skip_ws()
        if sc.startswith(b"/>"):
            sc.pos += 2
            return XmlElement(name, attributes, (), (start, sc.pos))
        if sc.startswith(b">"):
            sc.pos += 1
            break
        if sc.at_end():
            raise sc.fail(f"unterminated start tag <{name}>", start)
        attr_start = sc.pos
        attr = sc.read_name()
        if attr in attributes:
            raise sc.fail(f"duplicate attribute {attr!r}", attr_start)
        sc.skip_ws()
        sc.expect(b"=")
        sc.skip_ws()
        attributes[attr] = _parse_attr_value(sc)
    children = _parse_content(sc, name, start)
    return XmlElement(name, attributes, children, (start, sc.pos))


def _parse_attr_value(sc: _Scanner) -> str:
    if sc.at_end() or sc.data[sc.pos] not in b"\"'":
        raise sc.fail("expected a quoted attribute value")
    quote = sc.data[sc.pos]
    sc.pos += 1
    parts: list[str] = []
    run_start = sc.pos
    data = sc.data
    while True:
        if sc.pos >= len(data):
            raise sc.fail("unterminated attribute value", run_start - 1)
        byte = data[sc.pos]
        if byte == quote:
            parts.append(sc.decode_span(run_start, sc.pos))
            sc.pos += 1
            return "".join(parts)
        if byte == 0x3C:  # '<'
            raise sc.fail("'<' is not allowed in attribute values")
        if byte == 0x26:  # '&'
            parts.append(sc.decode_span(run_start, sc.pos))
            parts.append(sc.read_entity())
            run_start = sc.pos
        else:
            sc.pos += 1


def _parse_content(
    sc: _Scanner, name: str, open_start: int
) -> tuple[XmlElement | str, ...]:
    children: list[XmlElement | str] = []
    text: list[str] = []
    run_start = sc.pos
    data = sc.data

    def flush_run() -> None:
        if sc.pos > run_start:
            text.append(sc.decode_span(run_start, sc.pos))

    def flush_text() -> None:
        if text:
            children.append("".join(text))
            text.clear()

    while True:
        if sc.pos >= len(data):
            raise sc.fail(f"element <{name}> is never closed", open_start)
        byte = data[sc.pos]
        if byte == 0x26:  # '&'
            flush_run()
            text.append(sc.read_entity())
            run_start = sc.pos
        elif byte != 0x3C:  # not '<'
            sc.pos += 1
        elif sc.startswith(b"</"):
            flush_run()
            flush_text()
            close_start = sc.pos
            sc.pos += 2
            close_name = sc.read_name()
            if close_name != name:
                raise MalformedXml(
                    f"mismatched close tag </{close_name}> for <{name}>",
                    close_start,
                )
            sc.skip_ws()
            sc.expect(b">")
            return tuple(children)
        elif sc.startswith(b"<!--"):
            flush_run()
            sc.pos += 4
            sc.skip_until(b"-->", "comment")
            run_start = sc.pos
        elif sc.startswith(b"<![CDATA["):
            flush_run()
            sc.pos += 9
            end = data.find(b"]]>", sc.pos)
            if end < 0:
                raise sc.fail("unterminated CDATA section")
            text.append(sc.decode_span(sc.pos, end))
            sc.pos = end + 3
            run_start = sc.pos
        elif sc.startswith(b"<?"):
            flush_run()
            sc.pos += 2
            sc.skip_until(b"?>", "processing instruction")
            run_start = sc.pos
        elif sc.startswith(b"<!"):
            raise sc.fail("declarations inside content are not supported")
        else:
            flush_run()
            flush_text()
            children.append(_parse_element(sc))
            run_start = sc.pos


def _strip_mathml_prefixes(el: XmlElement, env: dict[str, str]) -> XmlElement:
    scope = env
    declared = {
        attr: value
        for attr, value in el.attributes.items()
        if attr.startswith("xmlns:")
    }
    if declared:
        scope = dict(env)
        for attr, value in declared.items():
            scope[attr[6:]] = value
    name = el.name
    if ":" in name:
        prefix, local = name.split(":", 1)
        if scope.get(prefix) == MATHML_NS:
            name = local
    children = tuple(
        _strip_mathml_prefixes(c, scope) if isinstance(c, XmlElement) else c
        for c in el.children
    )
    return XmlElement(name, el.attributes, children, el.source_span)


def _escape_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return _escape_text(value).replace('"', "&quot;")


def serialize(el: XmlElement) -> str:
    """Serialize an element back to XML text (attribute order preserved)."""
    parts: list[str] = []
    _write(el, parts)
    return "".join(parts)


def _write(el: XmlElement, parts: list[str]) -> None:
    parts.append(f"<{el.name}")
    for attr, value in el.attributes.items():
        parts.append(f' {attr}="{_escape_attr(value)}"')
    if not el.children:
        parts.append("/>")
        return
    parts.append(">")
    for child in el.children:
        if isinstance(child, str):
            parts.append(_escape_text(child))
        else:
            _write(child, parts)
    parts.append(f"</{el.name}>")
