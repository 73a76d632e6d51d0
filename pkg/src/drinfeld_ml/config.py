"""Flat ``key = value`` files for module descriptors and experiments.

Values are raw strings, or lists written ``[a, b, ...]`` whose items are
quoted strings, parenthesized tuples ``(x, y)``, or bare expressions.  Lists
may span lines; ``#`` starts a comment outside quotes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basefield.spec import FINITE, RATFUNC, FieldSpec
from .errors import ParseError


@dataclass(frozen=True)
class Value:
    raw: object  # str, tuple (for "(...)"), or list
    line: int
    col: int


def _strip_comment(line):
    quote = None
    for i, ch in enumerate(line):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            return line[:i]
    return line


def _split_top(text, line, col, full):
    """Split on commas outside brackets/parentheses/quotes; returns [(piece, offset)]."""
    depth, quote, start = 0, None, 0
    out = []
    for i, ch in enumerate(text):
        if quote:
            if ch == quote:
                quote = None
            continue
        if ch in "\"'":
            quote = ch
        elif ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced {ch!r}", line, col + i, full)
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    if quote or depth:
        raise ParseError("unterminated list item", line, col, full)
    out.append((text[start:], start))
    return out


def _item(text, line, col, full):
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    col += lead
    if not s:
        raise ParseError("empty list item", line, col, full)
    if s[0] in "\"'":
        if len(s) < 2 or s[-1] != s[0]:
            raise ParseError("unterminated string", line, col, full)
        return s[1:-1]
    if s[0] == "(" and s[-1] == ")" and _balanced_outer(s):
        parts = _split_top(s[1:-1], line, col + 1, full)
        return tuple(_item(p, line, col + 1 + off, full) for p, off in parts if p.strip())
    if s[0] == "[" and s[-1] == "]":
        inner = s[1:-1]
        if not inner.strip():
            return []
        return [_item(p, line, col + 1 + off, full) for p, off in _split_top(inner, line, col + 1, full)]
    return s


def _balanced_outer(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return True


def parse_config(text):
    """Parse into {key: Value}; duplicate keys and malformed lines raise ParseError."""
    out = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        line = _strip_comment(lines[i])
        i += 1
        stripped = line.strip()
        if not stripped or (stripped.startswith("[") and "=" not in stripped):
            continue  # blank line or ignored section header
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1, text)
        key, _, rest = line.partition("=")
        key = key.strip()
        if not key.replace("_", "").isalnum():
            raise ParseError(f"invalid key {key!r}", lineno, 1, text)
        col = line.index("=") + 2 + (len(rest) - len(rest.lstrip()))
        value = rest.strip()
        if value.startswith("["):
            # gather continuation lines until brackets balance
            while value.count("[") > value.count("]") and i < len(lines):
                value += " " + _strip_comment(lines[i]).strip()
                i += 1
            if not value.endswith("]"):
                raise ParseError("unterminated list", lineno, col, text)
            raw = _item(value, lineno, col, text)
        else:
            raw = _item(value, lineno, col, text) if value else ""
        if key in out:
            raise ParseError(f"duplicate key {key!r}", lineno, 1, text)
        out[key] = Value(raw, lineno, col)
    return out


def get(cfg, key, default=None):
    v = cfg.get(key)
    return default if v is None else v.raw


def get_int(cfg, key, default=None, text=None):
    v = cfg.get(key)
    if v is None:
        return default
    try:
        return int(v.raw)
    except (TypeError, ValueError):
        raise ParseError(f"{key} must be an integer, got {v.raw!r}", v.line, v.col, text) from None


def field_spec_from(cfg, text=None):
    p = get_int(cfg, "p", text=text)
    if p is None:
        raise ParseError("missing key 'p'", 1, 1, text)
    e = get_int(cfg, "e", 1, text)
    m = get_int(cfg, "m", 1, text)
    mode = str(get(cfg, "mode", RATFUNC)).lower()
    if mode not in (FINITE, RATFUNC):
        v = cfg["mode"]
        raise ParseError(f"mode must be 'finite' or 'ratfunc', got {mode!r}", v.line, v.col, text)
    modulus = get(cfg, "modulus")
    if modulus is not None:
        if not isinstance(modulus, list):
            v = cfg["modulus"]
            raise ParseError("modulus must be a list of integers", v.line, v.col, text)
        modulus = tuple(int(c) for c in modulus)
    return FieldSpec(p, e, m, modulus, mode)


__all__ = ["Value", "parse_config", "get", "get_int", "field_spec_from"]
