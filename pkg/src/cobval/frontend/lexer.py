"""Tokenizer for free-format COBOL source."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import CobolSyntaxError

WORD, NUM, STR, PUNCT, PERIOD, PICSTR, EXEC, EOF = (
    "WORD", "NUM", "STR", "PUNCT", "PERIOD", "PIC", "EXEC", "EOF")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int

    def is_word(self, *words):
        return self.kind == WORD and (not words or self.value in words)


_WORD = re.compile(r"[A-Za-z][A-Za-z0-9-]*")
_NUM = re.compile(r"\d+(?:\.\d+)?")
_PUNCT = ("<>", "<=", ">=", "(", ")", ",", ":", "=", "<", ">", "+", "-", "*", "/")
_END_EXEC = re.compile(r"END-EXEC", re.IGNORECASE)


def tokenize(source: str, filename="<source>"):
    tokens = []
    lines = source.split("\n")
    # offsets of each line start, for mapping positions back to (line, col)
    starts = [0]
    for ln in lines[:-1]:
        starts.append(starts[-1] + len(ln) + 1)

    def where(pos):
        lo, hi = 0, len(starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if starts[mid] <= pos:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, pos - starts[lo] + 1

    text = source
    n = len(text)
    pos = 0
    expect_pic = False
    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n;":
            pos += 1
            continue
        if text.startswith("*>", pos):
            end = text.find("\n", pos)
            pos = n if end < 0 else end
            continue
        line, col = where(pos)
        if expect_pic:
            expect_pic = False
            m = re.compile(r"\S+").match(text, pos)
            raw = m.group(0)
            end = m.end()
            if raw.endswith(".") and (end >= n or text[end] in " \t\r\n"):
                tokens.append(Token(PICSTR, raw[:-1], line, col))
                tokens.append(Token(PERIOD, ".", *where(end - 1)))
            else:
                tokens.append(Token(PICSTR, raw, line, col))
            pos = end
            continue
        if ch in "'\"":
            buf = []
            p = pos + 1
            while True:
                if p >= n or text[p] == "\n":
                    raise CobolSyntaxError(line, col, "closing quote", filename=filename)
                if text[p] == ch:
                    if p + 1 < n and text[p + 1] == ch:
                        buf.append(ch)
                        p += 2
                        continue
                    break
                buf.append(text[p])
                p += 1
            tokens.append(Token(STR, "".join(buf), line, col))
            pos = p + 1
            continue
        if ch == ".":
            if pos + 1 >= n or text[pos + 1] in " \t\r\n":
                tokens.append(Token(PERIOD, ".", line, col))
                pos += 1
                continue
            raise CobolSyntaxError(line, col, "separator after period", text[pos:pos + 2], filename)
        if ch.isdigit():
            m = _NUM.match(text, pos)
            tokens.append(Token(NUM, m.group(0), line, col))
            pos = m.end()
            continue
        if ch.isalpha():
            m = _WORD.match(text, pos)
            word = m.group(0).upper()
            pos = m.end()
            if word == "EXEC":
                em = _END_EXEC.search(text, pos)
                if not em:
                    raise CobolSyntaxError(line, col, "END-EXEC", filename=filename)
                body = " ".join(text[pos:em.start()].split())
                tokens.append(Token(EXEC, body, line, col))
                pos = em.end()
                continue
            tokens.append(Token(WORD, word, line, col))
            if word in ("PIC", "PICTURE"):
                # optional IS before the picture string
                m2 = re.compile(r"\s+IS\s+", re.IGNORECASE).match(text, pos)
                if m2:
                    pos = m2.end()
                expect_pic = True
            continue
        for p in _PUNCT:
            if text.startswith(p, pos):
                tokens.append(Token(PUNCT, p, line, col))
                pos += len(p)
                break
        else:
            raise CobolSyntaxError(line, col, "token", ch, filename)
    line, col = where(n) if n else (1, 1)
    tokens.append(Token(EOF, "", line, col))
    return tokens
