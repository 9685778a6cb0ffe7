from __future__ import annotations

import pytest

from flaghom.cache import CacheError, cache_read, cache_write, decode, encode


def _same(a, b):
    return (a.words == b.words and a.rdesc == b.rdesc and a.ldesc == b.ldesc
            and (a.perms == b.perms).all() and a.rs.name == b.rs.name)


def test_roundtrip_f4(tmp_path, table):
    t = table("F", 4)
    path = tmp_path / "f4.wgc"
    cache_write(t, path)
    back = cache_read(path)
    assert _same(t, back)
    assert back.size == 1152


def test_roundtrip_bytes_stable(table):
    t = table("B", 3)
    assert encode(decode(encode(t))) == encode(t)


def test_wrong_magic(table):
    data = bytearray(encode(table("A", 2)))
    data[:4] = b"XXXX"
    with pytest.raises(CacheError, match="magic"):
        decode(bytes(data))


def test_wrong_version(table):
    data = bytearray(encode(table("A", 2)))
    data[4] = 9
    with pytest.raises(CacheError, match="version"):
        decode(bytes(data))


def test_truncated(table):
    data = encode(table("A", 3))
    with pytest.raises(CacheError):
        decode(data[:10])
    with pytest.raises(CacheError):
        decode(data[:-20])


def test_checksum(table):
    data = bytearray(encode(table("A", 3)))
    data[30] ^= 1
    with pytest.raises(CacheError, match="checksum"):
        decode(bytes(data))


@pytest.mark.slow
def test_e6_cache(tmp_path, table):
    t = table("E", 6)
    path = tmp_path / "e6.wgc"
    cache_write(t, path)
    back = cache_read(path)
    assert back.size == 51840
    assert _same(t, back)
