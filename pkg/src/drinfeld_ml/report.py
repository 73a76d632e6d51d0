"""Sectioned key/value reports rendered as text or JSON lines."""

from __future__ import annotations

import json

TEXT = "text"
JSON_LINES = "json-lines"


def _plain(value):
    if value is None:
        return "NONE"
    if isinstance(value, bool):
        return "true" if value else "false"
    return value if isinstance(value, (int, str)) else repr(value)


class Report:
    def __init__(self, title=None):
        self.title = title
        self.sections = {}

    def add(self, section, key, value):
        self.sections.setdefault(section, []).append((key, _plain(value)))
        return self

    def get(self, section, key):
        for k, v in self.sections.get(section, []):
            if k == key:
                return v
        raise KeyError((section, key))

    def render(self, fmt=TEXT):
        if fmt == JSON_LINES:
            lines = []
            for sec, items in self.sections.items():
                for k, v in items:
                    lines.append(json.dumps({"section": sec, "key": k, "value": v}, sort_keys=True))
            return "\n".join(lines) + "\n"
        blocks = []
        for sec, items in self.sections.items():
            body = "\n".join(f"{k} = {v}" for k, v in items)
            blocks.append(f"[{sec}]\n{body}")
        return "\n\n".join(blocks) + "\n"
