"""Certified-key registry (knowledge-of-secret-key setting).

Registration demands the signer's full private witness. The registry
deterministically rebuilds the public key from the witness and the shared
parameters and accepts only on a byte-for-byte match of the canonical
encodings — the desk-scale realization of handing the certifier the key
pair outright. Witnesses are checked and discarded: only a boolean
"witness verified" record is kept, so a registry compromise leaks no key.

The certification predicate produced here is what the aggregate and
multi-signature verifiers consult before any pairing is computed.
"""

from __future__ import annotations

import struct
import threading
import time
from dataclasses import dataclass

from . import envelopes, ms, pks, sas
from .errors import MalformedEncodingError, RegistrationError
from .groups import GroupSuite


@dataclass(frozen=True)
class RegistrationWitness:
    """The private material a signer surrenders at registration time."""

    variant: str
    alpha: int
    x: int | None = None
    y: int | None = None
    c_u: int | None = None  # sas2 blinding witnesses only
    c_h: int | None = None


def witness_from_private(variant: str, sk) -> RegistrationWitness:
    if variant in sas.VARIANTS:
        return RegistrationWitness(variant, sk.alpha, sk.x, sk.y, sk.c_u, sk.c_h)
    if variant == "ms":
        return RegistrationWitness(variant, sk.alpha)
    raise ValueError(f"scheme {variant!r} does not register keys")


@dataclass(frozen=True)
class CertRecord:
    key_id: bytes
    variant: str
    pk: object
    witness_verified: bool
    timestamp: int


def _reconstruct(params, witness: RegistrationWitness):
    if witness.variant in sas.VARIANTS:
        if params.variant != witness.variant:
            raise RegistrationError("witness scheme does not match the parameters")
        pub, _ = sas.signer_from_secrets(params, witness.alpha, witness.x, witness.y,
                                         c_u=witness.c_u, c_h=witness.c_h)
        return pub
    if witness.variant == "ms":
        if params.variant != "ms":
            raise RegistrationError("witness scheme does not match the parameters")
        pub, _ = ms.ms_key_from_secret(params, witness.alpha)
        return pub
    raise RegistrationError(f"scheme {witness.variant!r} does not register keys")


class CertRegistry:
    """Append-only certification list; concurrent reads, exclusive writes."""

    def __init__(self, suite: GroupSuite):
        self.suite = suite
        self._records: dict[bytes, CertRecord] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._records)

    def records(self) -> list[CertRecord]:
        with self._lock:
            return list(self._records.values())

    def register(self, params, pk, witness: RegistrationWitness) -> CertRecord:
        """Certify ``pk`` after reconstructing it from the witness."""
        variant = envelopes._pk_variant(pk)
        if variant != witness.variant:
            raise RegistrationError("witness scheme does not match the public key")
        rebuilt = _reconstruct(params, witness)
        submitted = envelopes.encode_public_key(pk)
        if envelopes.encode_public_key(rebuilt) != submitted:
            raise RegistrationError("witness does not reproduce the submitted key")
        kid = pks.key_id(pk)
        with self._lock:
            existing = self._records.get(kid)
            if existing is not None:
                if envelopes.encode_public_key(existing.pk) == submitted:
                    return existing  # idempotent re-registration
                raise RegistrationError("key-id collision with a different key")
            record = CertRecord(kid, variant, pk, True, int(time.time()))
            self._records[kid] = record
            return record

    def is_certified(self, pk) -> bool:
        with self._lock:
            return pks.key_id(pk) in self._records

    def predicate(self):
        """A consistent-snapshot certification predicate for verifiers."""
        with self._lock:
            snapshot = frozenset(self._records)
        return lambda pk: pks.key_id(pk) in snapshot

    # -- persistence -------------------------------------------------------

    def save_bytes(self) -> bytes:
        records = self.records()
        parts = [
            envelopes._header(envelopes.MAGIC_REGISTRY, self.suite),
            struct.pack(">I", len(records)),
        ]
        for rec in records:
            blob = envelopes.encode_public_key(rec.pk)
            parts.append(rec.key_id)
            parts.append(bytes([envelopes.SCHEME_BYTE[rec.variant]]))
            parts.append(struct.pack(">I", len(blob)))
            parts.append(blob)
            parts.append(bytes([1 if rec.witness_verified else 0]))
            parts.append(struct.pack(">Q", rec.timestamp))
        return b"".join(parts)

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.save_bytes())

    @classmethod
    def load_bytes(cls, suite: GroupSuite, data: bytes) -> "CertRegistry":
        buf, off = envelopes._check_header(data, envelopes.MAGIC_REGISTRY, suite)
        if len(buf) < off + 4:
            raise MalformedEncodingError("truncated registry header")
        count = struct.unpack(">I", buf[off:off + 4])[0]
        off += 4
        registry = cls(suite)
        for _ in range(count):
            if len(buf) < off + 32 + 1 + 4:
                raise MalformedEncodingError("truncated registry record")
            kid = bytes(buf[off:off + 32])
            scheme = envelopes.SCHEME_NAME.get(buf[off + 32])
            blob_len = struct.unpack(">I", buf[off + 33:off + 37])[0]
            off += 37
            if scheme is None:
                raise MalformedEncodingError("unknown scheme byte in registry record")
            if len(buf) < off + blob_len + 1 + 8:
                raise MalformedEncodingError("truncated registry record body")
            pk = envelopes.decode_public_key(suite, bytes(buf[off:off + blob_len]))
            off += blob_len
            verified = buf[off] == 1
            timestamp = struct.unpack(">Q", buf[off + 1:off + 9])[0]
            off += 9
            if pks.key_id(pk) != kid:
                raise MalformedEncodingError("registry record key-id does not match its key")
            registry._records[kid] = CertRecord(kid, scheme, pk, verified, timestamp)
        envelopes._expect_end(buf, off)
        return registry

    @classmethod
    def load(cls, suite: GroupSuite, path) -> "CertRegistry":
        with open(path, "rb") as fh:
            return cls.load_bytes(suite, fh.read())
