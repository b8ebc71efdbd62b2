"""Byte-level tokenizer: 256 byte values plus PAD/BOS/EOS/GRAPH specials."""

from __future__ import annotations

PAD = 256
BOS = 257
EOS = 258
GRAPH = 259
VOCAB_SIZE = 260

GRAPH_MARKER = "<|graph|>"


def encode_text(text: str) -> list[int]:
    return list(text.encode("utf-8"))


def encode_prompt(text_with_marker: str) -> list[int]:
    """Encode text, mapping each GRAPH_MARKER occurrence to the GRAPH token."""
    ids: list[int] = []
    rest = text_with_marker
    while True:
        at = rest.find(GRAPH_MARKER)
        if at < 0:
            ids.extend(encode_text(rest))
            return ids
        ids.extend(encode_text(rest[:at]))
        ids.append(GRAPH)
        rest = rest[at + len(GRAPH_MARKER):]


def decode(ids: list[int]) -> str:
    """Bytes back to text; special tokens are dropped."""
    return bytes(i for i in ids if i < 256).decode("utf-8", errors="replace")
