"""Binary cache of an enumerated Weyl group.

Layout (little-endian):

    magic    4s   b"WGC1"
    version  u16
    type     u8   ASCII type letter
    rank     u8
    count    u64
    records  count x (length u8, letters u8 * length, rdesc u16, ldesc u16)
    checksum u64  BLAKE2b-64 of everything above

Only normal-form words and descent masks are stored; the root permutations
are rebuilt from the words on load and the masks are checked against them.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

from flaghom.rootsys import build_root_system
from flaghom.weyl import GroupTable, _reflection_tables

MAGIC = b"WGC1"
VERSION = 1
_HEADER = struct.Struct("<4sHBBQ")


class CacheError(ValueError):
    pass


def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def encode(table: GroupTable) -> bytes:
    rs = table.rs
    out = bytearray(_HEADER.pack(MAGIC, VERSION, ord(rs.type_tag), rs.rank, table.size))
    for w in range(table.size):
        word = table.words[w]
        out.append(len(word))
        out += bytes(word)
        out += struct.pack("<HH", table.rdesc[w], table.ldesc[w])
    out += _checksum(bytes(out))
    return bytes(out)


def decode(data: bytes) -> GroupTable:
    if len(data) < _HEADER.size + 8:
        raise CacheError("truncated cache: header incomplete")
    magic, version, tag, rank, count = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CacheError(f"bad magic {magic!r}; not a group cache (version error)")
    if version != VERSION:
        raise CacheError(f"unsupported cache version {version}; expected {VERSION}")
    body, check = data[:-8], data[-8:]
    if _checksum(body) != check:
        raise CacheError("checksum mismatch: cache is corrupt or truncated")
    rs = build_root_system(chr(tag), rank)
    if count != rs.order:
        raise CacheError(f"cache holds {count} elements but |W({rs.name})| = {rs.order}")

    refl = _reflection_tables(rs)
    n_roots = len(rs.roots)
    dtype = np.int16 if n_roots < 2**15 else np.int32
    perms = np.empty((count, n_roots), dtype=dtype)
    index: dict[tuple[int, ...], int] = {}
    words, rdesc, ldesc = [], [], []
    pos = _HEADER.size
    try:
        for w in range(count):
            ell = body[pos]
            word = tuple(body[pos + 1 : pos + 1 + ell])
            if len(word) != ell:
                raise CacheError("truncated cache: record incomplete")
            r, l = struct.unpack_from("<HH", body, pos + 1 + ell)
            pos += 1 + ell + 4
            if ell == 0:
                perms[w] = np.arange(n_roots, dtype=dtype)
            else:
                parent = index.get(word[:-1])
                if parent is None:
                    raise CacheError(f"record {w}: prefix of {word} not seen earlier")
                # (u s)(r) = u(s(r))
                perms[w] = perms[parent][refl[word[-1] - 1]]
            index[word] = w
            words.append(word)
            rdesc.append(r)
            ldesc.append(l)
    except (IndexError, struct.error) as exc:
        raise CacheError("truncated cache: record incomplete") from exc
    if pos != len(body):
        raise CacheError(f"{len(body) - pos} trailing bytes after the last record")

    lengths = [len(x) for x in words]
    if lengths != sorted(lengths):
        raise CacheError("records are not ordered by length")
    layer_sizes = [lengths.count(k) for k in range(max(lengths) + 1)]
    table = GroupTable(rs, perms, layer_sizes)
    if table.words != words or table.rdesc != rdesc or table.ldesc != ldesc:
        raise CacheError("stored words or descent masks disagree with the rebuilt group")
    return table


def cache_write(table: GroupTable, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode(table))


def cache_read(path) -> GroupTable:
    with open(path, "rb") as fh:
        return decode(fh.read())
