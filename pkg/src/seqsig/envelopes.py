"""Binary file envelopes for signatures, keys, parameters, and registries.

Every envelope starts with a 4-byte magic, a version byte, and a backend
descriptor (tag byte plus, for the mock backend, the 4-byte group order),
so a file is self-describing about which suite it belongs to. Decoding
always validates the backend against the caller's suite and every element
against its group, so a loaded object is as trustworthy as a freshly
built one.

Hex mode wraps the same bytes in lowercase hex with a trailing newline;
it exists for fixture readability only.
"""

from __future__ import annotations

import struct
from typing import Sequence

from . import ms, pks, sas
from .errors import MalformedEncodingError
from .groups import GroupSuite, decode_element, encode_element

VERSION = 1

MAGIC_SIGNATURE = b"APKS"
MAGIC_AGGREGATE = b"ASAS"
MAGIC_MULTISIG = b"AMSG"
MAGIC_REGISTRY = b"AREG"
MAGIC_PUBLIC_KEY = b"AKEY"
MAGIC_PRIVATE_KEY = b"ASEC"
MAGIC_PARAMS = b"APRM"

SCHEME_BYTE = {"pks1": 1, "pks2": 2, "lw": 3, "sas1": 4, "sas2": 5, "ms": 6}
SCHEME_NAME = {v: k for k, v in SCHEME_BYTE.items()}

_BACKEND_MOCK = 0
_BACKEND_REAL = 1

_SCALAR_LEN = 32


def _backend_descriptor(suite: GroupSuite) -> bytes:
    if suite.backend.name == "mock":
        return bytes([_BACKEND_MOCK]) + suite.order.to_bytes(4, "big")
    return bytes([_BACKEND_REAL])


def _read_backend(buf: memoryview, off: int, suite: GroupSuite) -> int:
    tag = buf[off]
    off += 1
    if tag == _BACKEND_MOCK:
        if len(buf) < off + 4:
            raise MalformedEncodingError("truncated backend descriptor")
        order = int.from_bytes(buf[off:off + 4], "big")
        off += 4
        if suite.backend.name != "mock" or suite.order != order:
            raise MalformedEncodingError("file was produced under a different suite")
    elif tag == _BACKEND_REAL:
        if suite.backend.name != "real":
            raise MalformedEncodingError("file was produced under a different suite")
    else:
        raise MalformedEncodingError(f"unknown backend tag {tag}")
    return off


def _header(magic: bytes, suite: GroupSuite) -> bytes:
    return magic + bytes([VERSION]) + _backend_descriptor(suite)


def _check_header(data: bytes, magic: bytes, suite: GroupSuite) -> tuple[memoryview, int]:
    buf = memoryview(data)
    if len(buf) < 5 or bytes(buf[:4]) != magic:
        raise MalformedEncodingError(f"expected {magic.decode()} envelope")
    if buf[4] != VERSION:
        raise MalformedEncodingError(f"unsupported envelope version {buf[4]}")
    off = _read_backend(buf, 5, suite)
    return buf, off


def _elem_len(suite: GroupSuite, kind: str) -> int:
    return len(encode_element(suite.identity(kind)))


def _encode_elements(elems) -> bytes:
    return b"".join(encode_element(e) for e in elems)


def _decode_elements(suite, kinds: Sequence[str], buf: memoryview, off: int):
    out = []
    for kind in kinds:
        n = _elem_len(suite, kind)
        if len(buf) < off + n:
            raise MalformedEncodingError("truncated element data")
        out.append(decode_element(suite, kind, bytes(buf[off:off + n])))
        off += n
    return out, off


def _encode_scalar(value: int) -> bytes:
    return value.to_bytes(_SCALAR_LEN, "big")


def _decode_scalar(suite, buf: memoryview, off: int) -> tuple[int, int]:
    if len(buf) < off + _SCALAR_LEN:
        raise MalformedEncodingError("truncated scalar")
    value = int.from_bytes(buf[off:off + _SCALAR_LEN], "big")
    if value >= suite.order:
        raise MalformedEncodingError("scalar exceeds the group order")
    return value, off + _SCALAR_LEN


def _expect_end(buf: memoryview, off: int):
    if off != len(buf):
        raise MalformedEncodingError("trailing bytes after envelope payload")


# ---------------------------------------------------------------------------
# single-signer signatures (APKS)

def encode_signature(sig: pks.Signature) -> bytes:
    suite = sig.row1[0].suite
    body = _encode_elements(sig.row1) + _encode_elements(sig.row2)
    return (
        _header(MAGIC_SIGNATURE, suite)
        + bytes([SCHEME_BYTE[sig.variant], 2 * len(sig.row1)])
        + body
    )


def decode_signature(suite: GroupSuite, data: bytes) -> pks.Signature:
    buf, off = _check_header(data, MAGIC_SIGNATURE, suite)
    if len(buf) < off + 2:
        raise MalformedEncodingError("truncated signature envelope")
    variant = SCHEME_NAME.get(buf[off])
    count = buf[off + 1]
    off += 2
    if variant not in pks.VARIANTS:
        raise MalformedEncodingError("not a single-signer signature variant")
    width = pks.SIG_WIDTH[variant]
    if count != 2 * width:
        raise MalformedEncodingError("element count does not match variant width")
    elems, off = _decode_elements(suite, ["g1"] * count, buf, off)
    _expect_end(buf, off)
    return pks.Signature(variant, tuple(elems[:width]), tuple(elems[width:]))


# ---------------------------------------------------------------------------
# public keys (AKEY)

def _pk_layout(suite, variant):
    if variant == "pks1":
        return ["g1"] * 7 + ["g2"] * 15 + ["gt"]
    if variant == "pks2":
        return ["g1"] * 12 + ["g2"] * 9 + ["gt"]
    if variant == "lw":
        return ["g1"] * 3 + ["g2"] * 9 + ["gt"]
    if variant == "sas1":
        return ["g1"] * 2 + ["g2"] * 8 + ["gt"]
    if variant == "sas2":
        return ["g1"] * 6 + ["g2"] * 6 + ["gt"]
    if variant == "ms":
        return ["gt"]
    raise MalformedEncodingError(f"unknown scheme {variant!r}")


def _pk_from_elements(suite, variant, e):
    r = lambda a, b: tuple(e[a:b])
    if variant == "pks1":
        return pks.Pks1PublicKey(
            suite=suite, g=e[0], u=e[1], h=e[2], w1=e[3], w2=e[4], w3=e[5], w=e[6],
            g_hat_row=r(7, 11), u_hat_row=r(11, 15), h_hat_row=r(15, 19),
            v_hat_row=r(19, 22), omega=e[22],
        )
    if variant == "pks2":
        return pks.Pks2PublicKey(
            suite=suite, g_row=r(0, 3), u_row=r(3, 6), h_row=r(6, 9), w_row=r(9, 12),
            g_hat_row=r(12, 15), u_hat_row=r(15, 18), h_hat_row=r(18, 21), omega=e[21],
        )
    if variant == "lw":
        return pks.LwPublicKey(
            suite=suite, w_row=r(0, 3),
            g_hat_row=r(3, 6), u_hat_row=r(6, 9), h_hat_row=r(9, 12), omega=e[12],
        )
    if variant == "sas1":
        return sas.SasSignerPublic(
            variant="sas1", g1_elems=r(0, 2),
            u_hat_row=r(2, 6), h_hat_row=r(6, 10), omega=e[10],
        )
    if variant == "sas2":
        return sas.SasSignerPublic(
            variant="sas2", g1_elems=r(0, 6),
            u_hat_row=r(6, 9), h_hat_row=r(9, 12), omega=e[12],
        )
    if variant == "ms":
        return ms.MsPublicKey(suite=suite, omega=e[0])
    raise MalformedEncodingError(f"unknown scheme {variant!r}")


def _pk_variant(pk) -> str:
    if isinstance(pk, pks.Pks1PublicKey):
        return "pks1"
    if isinstance(pk, pks.Pks2PublicKey):
        return "pks2"
    if isinstance(pk, pks.LwPublicKey):
        return "lw"
    if isinstance(pk, sas.SasSignerPublic):
        return pk.variant
    if isinstance(pk, ms.MsPublicKey):
        return "ms"
    raise TypeError(f"not a public key: {pk!r}")


def _pk_suite(pk):
    if isinstance(pk, sas.SasSignerPublic):
        return pk.omega.suite
    return pk.suite


def encode_public_key(pk) -> bytes:
    variant = _pk_variant(pk)
    suite = _pk_suite(pk)
    return (
        _header(MAGIC_PUBLIC_KEY, suite)
        + bytes([SCHEME_BYTE[variant]])
        + _encode_elements(pk.elements())
    )


def decode_public_key(suite: GroupSuite, data: bytes):
    buf, off = _check_header(data, MAGIC_PUBLIC_KEY, suite)
    if len(buf) < off + 1:
        raise MalformedEncodingError("truncated public-key envelope")
    variant = SCHEME_NAME.get(buf[off])
    if variant is None:
        raise MalformedEncodingError("unknown scheme byte")
    off += 1
    elems, off = _decode_elements(suite, _pk_layout(suite, variant), buf, off)
    _expect_end(buf, off)
    return _pk_from_elements(suite, variant, elems)


# ---------------------------------------------------------------------------
# private keys (ASEC) — research artifact: held scalars are stored in clear

def encode_private_key(suite: GroupSuite, variant: str, sk) -> bytes:
    if variant in pks.VARIANTS:
        scalars = [sk.alpha, sk.x or 0, sk.y or 0]
        pk_id = sk.pk_id
    elif variant in sas.VARIANTS:
        scalars = [sk.alpha, sk.x, sk.y, sk.c_u or 0, sk.c_h or 0]
        pk_id = sk.pk_id
    elif variant == "ms":
        scalars = [sk.alpha]
        pk_id = sk.pk_id
    else:
        raise ValueError(f"unknown scheme {variant!r}")
    return (
        _header(MAGIC_PRIVATE_KEY, suite)
        + bytes([SCHEME_BYTE[variant], len(scalars)])
        + pk_id
        + b"".join(_encode_scalar(s) for s in scalars)
    )


def decode_private_key(suite: GroupSuite, data: bytes):
    buf, off = _check_header(data, MAGIC_PRIVATE_KEY, suite)
    if len(buf) < off + 2 + 32:
        raise MalformedEncodingError("truncated private-key envelope")
    variant = SCHEME_NAME.get(buf[off])
    count = buf[off + 1]
    off += 2
    pk_id = bytes(buf[off:off + 32])
    off += 32
    scalars = []
    for _ in range(count):
        s, off = _decode_scalar(suite, buf, off)
        scalars.append(s)
    _expect_end(buf, off)
    if variant in pks.VARIANTS:
        if count != 3:
            raise MalformedEncodingError("bad scalar count for single-signer key")
        return variant, pks.PrivateKey(variant, scalars[0], scalars[1], scalars[2], pk_id)
    if variant in sas.VARIANTS:
        if count != 5:
            raise MalformedEncodingError("bad scalar count for aggregate signer key")
        c_u = scalars[3] if variant == "sas2" else None
        c_h = scalars[4] if variant == "sas2" else None
        return variant, sas.SasSignerPrivate(variant, scalars[0], scalars[1], scalars[2],
                                             c_u=c_u, c_h=c_h, pk_id=pk_id)
    if variant == "ms":
        if count != 1:
            raise MalformedEncodingError("bad scalar count for multi-signature key")
        return variant, ms.MsPrivateKey(alpha=scalars[0], pk_id=pk_id)
    raise MalformedEncodingError("unknown scheme byte")


# ---------------------------------------------------------------------------
# public parameters (APRM)

def _params_layout(variant):
    if variant == "sas1":
        return ["g1"] * 5 + ["g2"] * 7
    if variant == "sas2":
        return ["g1"] * 6 + ["g2"] * 3 + ["gt"]
    if variant == "ms":
        return ["g1"] * 12 + ["g2"] * 9 + ["gt"]
    raise MalformedEncodingError(f"scheme {variant!r} has no shared parameters")


def encode_params(params) -> bytes:
    suite = params.suite
    return (
        _header(MAGIC_PARAMS, suite)
        + bytes([SCHEME_BYTE[params.variant]])
        + _encode_elements(params.elements())
    )


def decode_params(suite: GroupSuite, data: bytes):
    buf, off = _check_header(data, MAGIC_PARAMS, suite)
    if len(buf) < off + 1:
        raise MalformedEncodingError("truncated parameter envelope")
    variant = SCHEME_NAME.get(buf[off])
    off += 1
    if variant is None:
        raise MalformedEncodingError("unknown scheme byte")
    e, off = _decode_elements(suite, _params_layout(variant), buf, off)
    _expect_end(buf, off)
    if variant == "sas1":
        return sas.Sas1Params(suite=suite, g=e[0], w1=e[1], w2=e[2], w3=e[3], w=e[4],
                              g_hat_row=tuple(e[5:9]), v_hat_row=tuple(e[9:12]))
    if variant == "sas2":
        return sas.Sas2Params(suite=suite, g_row=tuple(e[0:3]), w_row=tuple(e[3:6]),
                              g_hat_row=tuple(e[6:9]), lam=e[9])
    return ms.MsParams(
        suite=suite, g_row=tuple(e[0:3]), u_row=tuple(e[3:6]), h_row=tuple(e[6:9]),
        w_row=tuple(e[9:12]), g_hat_row=tuple(e[12:15]), u_hat_row=tuple(e[15:18]),
        h_hat_row=tuple(e[18:21]), lam=e[21],
    )


# ---------------------------------------------------------------------------
# aggregates (ASAS): l (key-id, message-hash) pairs, then the elements.
# Signer public keys travel separately (key files / registry) and are
# re-attached at decode time via their key-ids.

def encode_aggregate(agg: sas.AggregateSignature) -> bytes:
    if agg.length:
        suite = agg.signers[0].omega.suite
    else:
        suite = agg.row1[0].suite
    parts = [
        _header(MAGIC_AGGREGATE, suite),
        bytes([SCHEME_BYTE[agg.variant]]),
        struct.pack(">I", agg.length),
    ]
    for m, signer in zip(agg.messages, agg.signers):
        parts.append(pks.key_id(signer))
        parts.append(_encode_scalar(m))
    parts.append(_encode_elements(agg.row1))
    parts.append(_encode_elements(agg.row2))
    return b"".join(parts)


def decode_aggregate(suite: GroupSuite, data: bytes,
                     known_keys: Sequence[sas.SasSignerPublic]) -> sas.AggregateSignature:
    buf, off = _check_header(data, MAGIC_AGGREGATE, suite)
    if len(buf) < off + 5:
        raise MalformedEncodingError("truncated aggregate envelope")
    variant = SCHEME_NAME.get(buf[off])
    if variant not in sas.VARIANTS:
        raise MalformedEncodingError("not an aggregate-signature variant")
    length = struct.unpack(">I", buf[off + 1:off + 5])[0]
    off += 5
    by_id = {pks.key_id(k): k for k in known_keys}
    messages, signers = [], []
    for i in range(length):
        if len(buf) < off + 32:
            raise MalformedEncodingError("truncated signer record")
        kid = bytes(buf[off:off + 32])
        off += 32
        m, off = _decode_scalar(suite, buf, off)
        if kid not in by_id:
            raise MalformedEncodingError(f"signer {i} key-id not among the supplied keys")
        if by_id[kid].variant != variant:
            raise MalformedEncodingError(f"signer {i} key belongs to a different scheme")
        messages.append(m)
        signers.append(by_id[kid])
    width = sas.AGG_WIDTH[variant]
    elems, off = _decode_elements(suite, ["g1"] * (2 * width), buf, off)
    _expect_end(buf, off)
    return sas.AggregateSignature(variant, tuple(elems[:width]), tuple(elems[width:]),
                                  tuple(messages), tuple(signers))


# ---------------------------------------------------------------------------
# multi-signatures (AMSG)

def encode_multisignature(msig: ms.MsSignature, message_hash: int,
                          pk_list: Sequence[ms.MsPublicKey]) -> bytes:
    suite = msig.row1[0].suite
    parts = [
        _header(MAGIC_MULTISIG, suite),
        struct.pack(">I", len(pk_list)),
    ]
    for pk in pk_list:
        parts.append(pks.key_id(pk))
    parts.append(_encode_scalar(message_hash))
    parts.append(_encode_elements(msig.elements()))
    return b"".join(parts)


def decode_multisignature(suite: GroupSuite, data: bytes,
                          known_keys: Sequence[ms.MsPublicKey]):
    """Returns (signature, message_hash, ordered public keys)."""
    buf, off = _check_header(data, MAGIC_MULTISIG, suite)
    if len(buf) < off + 4:
        raise MalformedEncodingError("truncated multi-signature envelope")
    count = struct.unpack(">I", buf[off:off + 4])[0]
    off += 4
    by_id = {pks.key_id(k): k for k in known_keys}
    pk_list = []
    for i in range(count):
        if len(buf) < off + 32:
            raise MalformedEncodingError("truncated key-id list")
        kid = bytes(buf[off:off + 32])
        off += 32
        if kid not in by_id:
            raise MalformedEncodingError(f"signer {i} key-id not among the supplied keys")
        pk_list.append(by_id[kid])
    message_hash, off = _decode_scalar(suite, buf, off)
    elems, off = _decode_elements(suite, ["g1"] * 6, buf, off)
    _expect_end(buf, off)
    return ms.MsSignature(tuple(elems[:3]), tuple(elems[3:])), message_hash, pk_list


# ---------------------------------------------------------------------------
# hex wrapping

def to_wire(data: bytes, fmt: str) -> bytes:
    if fmt == "bin":
        return data
    if fmt == "hex":
        return data.hex().encode("ascii") + b"\n"
    raise ValueError(f"unknown format {fmt!r}")


def from_wire(data: bytes) -> bytes:
    """Accept either raw bytes or the hex wrapping, sniffing the magic."""
    if data[:4] in (MAGIC_SIGNATURE, MAGIC_AGGREGATE, MAGIC_MULTISIG,
                    MAGIC_REGISTRY, MAGIC_PUBLIC_KEY, MAGIC_PRIVATE_KEY, MAGIC_PARAMS):
        return data
    try:
        return bytes.fromhex(data.decode("ascii").strip())
    except (UnicodeDecodeError, ValueError):
        raise MalformedEncodingError("neither a known envelope nor hex text") from None
