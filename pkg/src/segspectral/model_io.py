"""Binary container for trained n-gram models.

Layout (all integers little-endian):

    magic    4 bytes  b"SGSP"
    version  u16      currently 1
    payload  five length-prefixed sections, in order:
                 uni, bi, tri, sds, meta
             section := u32 body length, then the body
             count section body := u32 entry count, then per entry
                 (sorted by key): u16 key byte length, UTF-8 key, u64 count
             sds body  := f64 log_sd_bi, f64 log_sd_tri, u64 total_uni
             meta body := u16 source byte length, UTF-8 source, u64 line count
    crc      u32      CRC-32 of the payload bytes (prefixes included)

Sorting the keys makes the encoding canonical: equal models produce
identical files. Failure modes are kept distinct so callers can tell a
stale format from a damaged file: ModelVersionError, ModelTruncatedError,
ModelChecksumError, with ModelFormatError for everything else.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

from .ngram import ModelMeta, NGramModel

MAGIC = b"SGSP"
VERSION = 1


class ModelIOError(Exception):
    """Base class for model container errors."""


class ModelFormatError(ModelIOError):
    pass


class ModelVersionError(ModelIOError):
    pass


class ModelTruncatedError(ModelIOError):
    pass


class ModelChecksumError(ModelIOError):
    pass


def _encode_counts(counts: dict[str, int]) -> bytes:
    parts = [struct.pack("<I", len(counts))]
    for key in sorted(counts):
        kb = key.encode("utf-8")
        parts.append(struct.pack("<H", len(kb)))
        parts.append(kb)
        parts.append(struct.pack("<Q", counts[key]))
    return b"".join(parts)


def _encode_model(model: NGramModel) -> bytes:
    sections = [
        _encode_counts(model.uni),
        _encode_counts(model.bi),
        _encode_counts(model.tri),
        struct.pack("<ddQ", model.log_sd_bi, model.log_sd_tri, model.total_uni),
    ]
    src = model.meta.source.encode("utf-8")
    sections.append(
        struct.pack("<H", len(src)) + src + struct.pack("<Q", model.meta.line_count)
    )
    payload = b"".join(struct.pack("<I", len(body)) + body for body in sections)
    return MAGIC + struct.pack("<H", VERSION) + payload + struct.pack("<I", zlib.crc32(payload))


def save_model(model: NGramModel, sink) -> None:
    """Write the model to a path or a binary file object."""
    data = _encode_model(model)
    if hasattr(sink, "write"):
        sink.write(data)
    else:
        Path(sink).write_bytes(data)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ModelTruncatedError(
                f"need {n} bytes at offset {self.pos}, file has {len(self.data)}"
            )
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u16(self) -> int:
        return struct.unpack("<H", self.take(2))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]


def _decode_counts(body: bytes) -> dict[str, int]:
    r = _Reader(body)
    try:
        n = r.u32()
        out: dict[str, int] = {}
        for _ in range(n):
            klen = r.u16()
            key = r.take(klen).decode("utf-8")
            out[key] = r.u64()
    except ModelTruncatedError as exc:
        raise ModelFormatError(f"count section inconsistent: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"count section key not UTF-8: {exc}") from exc
    if r.pos != len(body):
        raise ModelFormatError("count section has trailing bytes")
    return out


def load_model(source) -> NGramModel:
    """Read a model previously written by save_model.

    Accepts a path or a binary file object. Raises ModelTruncatedError,
    ModelVersionError, ModelChecksumError, or ModelFormatError.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = Path(source).read_bytes()
    r = _Reader(data)
    magic = r.take(4)
    if magic != MAGIC:
        raise ModelFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    version = r.u16()
    if version != VERSION:
        raise ModelVersionError(f"unsupported model version {version}, expected {VERSION}")
    payload_start = r.pos
    bodies = []
    for _ in range(5):
        length = r.u32()
        bodies.append(r.take(length))
    payload = data[payload_start : r.pos]
    stored_crc = r.u32()
    if r.pos != len(data):
        raise ModelFormatError(f"{len(data) - r.pos} trailing bytes after checksum")
    actual_crc = zlib.crc32(payload)
    if stored_crc != actual_crc:
        raise ModelChecksumError(
            f"checksum mismatch: stored {stored_crc:#010x}, computed {actual_crc:#010x}"
        )

    uni = _decode_counts(bodies[0])
    bi = _decode_counts(bodies[1])
    tri = _decode_counts(bodies[2])
    if len(bodies[3]) != struct.calcsize("<ddQ"):
        raise ModelFormatError("sds section has wrong size")
    log_sd_bi, log_sd_tri, total_uni = struct.unpack("<ddQ", bodies[3])

    mr = _Reader(bodies[4])
    try:
        slen = mr.u16()
        source_name = mr.take(slen).decode("utf-8")
        line_count = mr.u64()
    except ModelTruncatedError as exc:
        raise ModelFormatError(f"meta section inconsistent: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"meta source not UTF-8: {exc}") from exc
    if mr.pos != len(bodies[4]):
        raise ModelFormatError("meta section has trailing bytes")

    return NGramModel(
        uni=uni,
        bi=bi,
        tri=tri,
        total_uni=total_uni,
        log_sd_bi=log_sd_bi,
        log_sd_tri=log_sd_tri,
        meta=ModelMeta(source=source_name, line_count=line_count),
    )
