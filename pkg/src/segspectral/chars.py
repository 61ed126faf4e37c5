"""Character classification for segmentation purposes.

Every Unicode scalar value is either Chinese (a CJK ideograph) or Other
(letters, digits, punctuation, whitespace, anything else). Transition
statistics are only kept for runs of Chinese characters; Other characters
never carry probability mass and end up isolated in the sentence graph.
"""

from __future__ import annotations

# CJK Unified Ideographs plus Extension A. Extend here for corpora that
# use the supplementary ideographic planes.
DEFAULT_CJK_RANGES: tuple[tuple[int, int], ...] = (
    (0x4E00, 0x9FFF),
    (0x3400, 0x4DBF),
)


def is_chinese(ch: str, ranges: tuple[tuple[int, int], ...] = DEFAULT_CJK_RANGES) -> bool:
    """True if the single character falls in a CJK ideograph range."""
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in ranges)


def all_chinese(text: str) -> bool:
    """True if every character of the string is a CJK ideograph."""
    return all(is_chinese(ch) for ch in text)
