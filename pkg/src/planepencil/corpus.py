"""Corpus file format and the shipped standard corpus.

Entries live in a flat TOML-like format: ``[[map]]`` opens an entry and the
following ``key = value`` lines fill it (quoted strings, integers, booleans,
or a bracketed list of quoted strings).  ``expected_*`` keys become golden
values the harness verifies.
"""

from __future__ import annotations

import re
from importlib import resources

from .core.errors import ParseError

_VALUE_RE = re.compile(r"\s*(.*?)\s*$")


def _parse_value(raw: str, line_no: int):
    raw = raw.strip()
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return raw[1:-1]
    if raw in ("true", "false"):
        return raw == "true"
    if raw.startswith("[") and raw.endswith("]"):
        inner = raw[1:-1].strip()
        if not inner:
            return []
        parts = [p.strip() for p in inner.split(",")]
        out = []
        for p in parts:
            if p.startswith('"') and p.endswith('"'):
                out.append(p[1:-1])
            else:
                raise ParseError("list entries must be quoted strings", line=line_no)
        return out
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"unreadable value {raw!r}", line=line_no) from None


def parse_corpus(text: str) -> list[dict]:
    entries: list[dict] = []
    current: dict | None = None
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped == "[[map]]":
            current = {}
            entries.append(current)
            continue
        if "=" not in stripped:
            raise ParseError(f"expected key = value, got {stripped!r}", line=i)
        if current is None:
            raise ParseError("key/value before the first [[map]] header", line=i)
        key, _, raw = stripped.partition("=")
        current[key.strip()] = _parse_value(raw, i)
    names = set()
    for e in entries:
        if "name" not in e or "P" not in e or "Q" not in e:
            raise ParseError("every entry needs name, P, and Q")
        if e["name"] in names:
            raise ParseError(f"duplicate map name {e['name']!r}")
        names.add(e["name"])
        expected = {
            k[len("expected_") :]: v for k, v in e.items() if k.startswith("expected_")
        }
        if expected:
            e["expected"] = expected
    return entries


def load_corpus_file(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_corpus(fh.read())


def standard_corpus() -> list[dict]:
    text = (
        resources.files("planepencil").joinpath("data/standard_corpus.toml").read_text()
    )
    return parse_corpus(text)
