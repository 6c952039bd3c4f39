"""Asymmetric bilinear group abstraction with two interchangeable backends.

A :class:`GroupSuite` bundles the three groups (G, Ghat, GT), their
generators, and a pairing-invocation counter. Two backends implement the
same handle-level interface:

* ``real`` — BN254, a Type-3 pairing curve (see :mod:`seqsig.bn254`).
* ``mock`` — a discrete-log toy group of small prime order where every
  element is stored as its exponent and the pairing is multiplication
  mod p. Zero security, exact transparency: any verification equation can
  be checked directly on exponents.

All scheme code is written against this layer only, so a straight-line
program gives identical truth values on both backends for the same
exponent stream.
"""

from __future__ import annotations

import hashlib
import struct
import threading
from dataclasses import dataclass, field

from . import bn254
from .errors import CrossSuiteError, MalformedEncodingError, SubgroupMembershipError

Scalar = int  # always reduced mod the suite order


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class MockDlogBackend:
    """Transparent group: handles are exponents, pair(a, b) = a*b mod p."""

    name = "mock"

    def __init__(self, order: int):
        if not _is_prime(order):
            raise ValueError(f"mock group order must be prime, got {order}")
        if order < 101:
            raise ValueError("mock group order must be at least 101")
        self.order = order

    def generator(self, kind):
        return 1

    def identity(self, kind):
        return 0

    def op(self, kind, h1, h2):
        return (h1 + h2) % self.order

    def exp(self, kind, h, k):
        return h * k % self.order

    def inv(self, kind, h):
        return -h % self.order

    def multi_exp(self, kind, pairs):
        return sum(h * k for h, k in pairs) % self.order

    def eq(self, kind, h1, h2):
        return h1 == h2

    def pair_raw(self, h1, h2):
        return h1 * h2 % self.order

    def pair_product_raw(self, num, den):
        acc = 0
        for h1, h2 in num:
            acc += h1 * h2
        for h1, h2 in den:
            acc -= h1 * h2
        return acc % self.order

    def encode(self, kind, h):
        return struct.pack(">I", h)

    def decode(self, kind, data):
        if len(data) != 4:
            raise MalformedEncodingError(f"mock element must be 4 bytes, got {len(data)}")
        value = struct.unpack(">I", data)[0]
        if value >= self.order:
            raise MalformedEncodingError(f"mock exponent {value} not reduced mod {self.order}")
        return value

    def encoded_size(self, kind):
        return 4

    def reduced_hash_bound(self):
        return self.order // 4


class Bn254Backend:
    """BN254 Type-3 curve; G1/G2 handles are affine points (None = identity),
    GT handles are Fp12 tower tuples."""

    name = "real"
    order = bn254.ORDER

    def generator(self, kind):
        if kind == "g1":
            return bn254.G1_GEN
        if kind == "g2":
            return bn254.G2_GEN
        return bn254.pairing(bn254.G1_GEN, bn254.G2_GEN)

    def identity(self, kind):
        if kind == "gt":
            return bn254.FQ12_ONE
        return None

    def op(self, kind, h1, h2):
        if kind == "g1":
            return bn254.g1_add(h1, h2)
        if kind == "g2":
            return bn254.g2_add(h1, h2)
        return bn254.gt_mul(h1, h2)

    def exp(self, kind, h, k):
        if kind == "g1":
            return bn254.g1_mul(h, k)
        if kind == "g2":
            return bn254.g2_mul(h, k)
        return bn254.gt_pow(h, k)

    def inv(self, kind, h):
        if kind == "g1":
            return bn254.g1_neg(h)
        if kind == "g2":
            return bn254.g2_neg(h)
        return bn254.gt_inv(h)

    def multi_exp(self, kind, pairs):
        if kind == "g2":
            return bn254.g2_multi_exp(pairs)
        acc = self.identity(kind)
        for h, k in pairs:
            acc = self.op(kind, acc, self.exp(kind, h, k))
        return acc

    def eq(self, kind, h1, h2):
        return h1 == h2

    def pair_raw(self, h1, h2):
        return bn254.pairing(h1, h2)

    def pair_product_raw(self, num, den):
        pairs = list(num) + [(bn254.g1_neg(p), q) for p, q in den]
        return bn254.final_exponentiation(bn254.miller_loop_product(pairs))

    def encode(self, kind, h):
        if kind == "g1":
            if h is None:
                return (1 << 255).to_bytes(32, "big")
            x, y = h
            return (x | ((y & 1) << 254)).to_bytes(32, "big")
        if kind == "g2":
            if h is None:
                return bytes([0x80]) + bytes(63)
            (x0, x1), y = h
            parity = (y[0] & 1) if y[0] != 0 else (y[1] & 1)
            return (x0 | (parity << 510) | (x1 << 255)).to_bytes(64, "big")
        return b"".join(
            c.to_bytes(32, "big") for pair_ in h for triple in pair_ for c in triple
        )

    def decode(self, kind, data):
        if kind == "g1":
            if len(data) != 32:
                raise MalformedEncodingError("G1 encoding must be 32 bytes")
            raw = int.from_bytes(data, "big")
            if raw >> 255:
                if raw != 1 << 255:
                    raise MalformedEncodingError("non-canonical G1 identity encoding")
                return None
            parity = (raw >> 254) & 1
            x = raw & ((1 << 254) - 1)
            if x >= bn254.P:
                raise MalformedEncodingError("G1 x-coordinate out of field range")
            y = self._sqrt_fp((x * x * x + bn254.B) % bn254.P)
            if y is None:
                raise SubgroupMembershipError("G1 x-coordinate is not on the curve")
            if y & 1 != parity:
                y = bn254.P - y
            return (x, y)
        if kind == "g2":
            if len(data) != 64:
                raise MalformedEncodingError("G2 encoding must be 64 bytes")
            raw = int.from_bytes(data, "big")
            if raw >> 511:
                if raw != 1 << 511:
                    raise MalformedEncodingError("non-canonical G2 identity encoding")
                return None
            parity = (raw >> 510) & 1
            x1 = (raw >> 255) & ((1 << 255) - 1)
            x0 = raw & ((1 << 255) - 1)
            if x0 >= bn254.P or x1 >= bn254.P:
                raise MalformedEncodingError("G2 coordinate out of field range")
            x = (x0, x1)
            rhs = bn254.fq2_add(bn254.fq2_mul(bn254.fq2_sqr(x), x), bn254.B2)
            y = self._sqrt_fq2(rhs)
            if y is None:
                raise SubgroupMembershipError("G2 x-coordinate is not on the twist")
            got = (y[0] & 1) if y[0] != 0 else (y[1] & 1)
            if got != parity:
                y = bn254.fq2_neg(y)
            point = (x, y)
            if not bn254.g2_in_subgroup(point):
                raise SubgroupMembershipError("G2 point is outside the prime-order subgroup")
            return point
        if len(data) != 384:
            raise MalformedEncodingError("GT encoding must be 384 bytes")
        coeffs = [int.from_bytes(data[i * 32:(i + 1) * 32], "big") for i in range(12)]
        if any(c >= bn254.P for c in coeffs):
            raise MalformedEncodingError("GT coefficient out of field range")
        h = (
            ((coeffs[0], coeffs[1]), (coeffs[2], coeffs[3]), (coeffs[4], coeffs[5])),
            ((coeffs[6], coeffs[7]), (coeffs[8], coeffs[9]), (coeffs[10], coeffs[11])),
        )
        if bn254.gt_pow(h, bn254.ORDER) != bn254.FQ12_ONE:
            raise SubgroupMembershipError("GT element is outside the order-r subgroup")
        return h

    def encoded_size(self, kind):
        return {"g1": 32, "g2": 64, "gt": 384}[kind]

    def reduced_hash_bound(self):
        return 1 << (bn254.ORDER.bit_length() - 2)

    @staticmethod
    def _sqrt_fp(a):
        # P = 3 mod 4
        r = pow(a, (bn254.P + 1) // 4, bn254.P)
        return r if r * r % bn254.P == a else None

    @classmethod
    def _sqrt_fq2(cls, a):
        a0, a1 = a
        if a1 == 0:
            r = cls._sqrt_fp(a0)
            if r is not None:
                return (r, 0)
            r = cls._sqrt_fp(-a0 % bn254.P)
            return None if r is None else (0, r)
        lam = cls._sqrt_fp((a0 * a0 + a1 * a1) % bn254.P)
        if lam is None:
            return None
        inv2 = (bn254.P + 1) // 2
        delta = (a0 + lam) * inv2 % bn254.P
        x0 = cls._sqrt_fp(delta)
        if x0 is None:
            delta = (a0 - lam) * inv2 % bn254.P
            x0 = cls._sqrt_fp(delta)
            if x0 is None:
                return None
        x1 = a1 * pow(2 * x0, -1, bn254.P) % bn254.P
        res = (x0, x1)
        return res if bn254.fq2_sqr(res) == a else None


class _Elem:
    """Immutable group element bound to its suite; multiplicative notation."""

    __slots__ = ("suite", "h")
    kind = None

    def __init__(self, suite, h):
        self.suite = suite
        self.h = h

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.suite is not self.suite:
            raise CrossSuiteError("elements belong to different suites")

    def __mul__(self, other):
        self._check(other)
        return type(self)(self.suite, self.suite.backend.op(self.kind, self.h, other.h))

    def __truediv__(self, other):
        self._check(other)
        return type(self)(
            self.suite,
            self.suite.backend.op(self.kind, self.h, self.suite.backend.inv(self.kind, other.h)),
        )

    def __pow__(self, k: int):
        return type(self)(self.suite, self.suite.backend.exp(self.kind, self.h, k % self.suite.order))

    def inverse(self):
        return type(self)(self.suite, self.suite.backend.inv(self.kind, self.h))

    def __eq__(self, other):
        if type(other) is not type(self) or other.suite is not self.suite:
            return NotImplemented
        return self.suite.backend.eq(self.kind, self.h, other.h)

    def __hash__(self):
        return hash((self.kind, encode_element(self)))

    def is_identity(self):
        return self.suite.backend.eq(self.kind, self.h, self.suite.backend.identity(self.kind))

    def __repr__(self):
        return f"{type(self).__name__}({encode_element(self).hex()})"


class G1Elem(_Elem):
    kind = "g1"


class G2Elem(_Elem):
    kind = "g2"


class GTElem(_Elem):
    kind = "gt"


_KIND_CLS = {"g1": G1Elem, "g2": G2Elem, "gt": GTElem}


@dataclass
class GroupSuite:
    """Type-3 pairing context; immutable apart from the pairing counter."""

    backend: object
    order: int
    g: G1Elem = field(init=False)
    g_hat: G2Elem = field(init=False)

    def __post_init__(self):
        self.g = G1Elem(self, self.backend.generator("g1"))
        self.g_hat = G2Elem(self, self.backend.generator("g2"))
        self._counter = 0
        self._lock = threading.Lock()

    @property
    def pairing_count(self) -> int:
        return self._counter

    def _count(self, n: int):
        with self._lock:
            self._counter += n

    def identity(self, kind: str):
        return _KIND_CLS[kind](self, self.backend.identity(kind))

    def __repr__(self):
        return f"GroupSuite({self.backend.name}, order={self.order})"


def suite_generate(backend: str, order: int | None = None) -> GroupSuite:
    """Create a suite: ``suite_generate("mock", p)`` or ``suite_generate("real")``."""
    if backend == "mock":
        if order is None:
            raise ValueError("mock backend requires an explicit prime order")
        be = MockDlogBackend(order)
    elif backend == "real":
        be = Bn254Backend()
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return GroupSuite(backend=be, order=be.order)


def pair(a: G1Elem, b: G2Elem) -> GTElem:
    """Bilinear map; increments the suite's pairing counter by one."""
    if not isinstance(a, G1Elem) or not isinstance(b, G2Elem):
        raise TypeError("pair expects (G1Elem, G2Elem)")
    if a.suite is not b.suite:
        raise CrossSuiteError("pairing arguments belong to different suites")
    suite = a.suite
    suite._count(1)
    return GTElem(suite, suite.backend.pair_raw(a.h, b.h))


def pairing_product(numerator_pairs, denominator_pairs=()) -> GTElem:
    """Evaluate prod e(a_i, b_i) * prod e(c_j, d_j)^-1 as one fused product.

    Counts one pairing per pair on both sides, matching the logical cost.
    """
    num = list(numerator_pairs)
    den = list(denominator_pairs)
    if not num and not den:
        raise ValueError("pairing_product requires at least one pair")
    suite = (num or den)[0][0].suite
    for a, b in num + den:
        if not isinstance(a, G1Elem) or not isinstance(b, G2Elem):
            raise TypeError("pairing_product expects (G1Elem, G2Elem) pairs")
        if a.suite is not suite or b.suite is not suite:
            raise CrossSuiteError("pairing_product arguments belong to different suites")
    suite._count(len(num) + len(den))
    raw = suite.backend.pair_product_raw(
        [(a.h, b.h) for a, b in num], [(a.h, b.h) for a, b in den]
    )
    return GTElem(suite, raw)


def hash_to_scalar(suite: GroupSuite, domain_tag: bytes, message: bytes, width: str = "full") -> Scalar:
    """Deterministic message-to-scalar map with domain separation.

    ``full`` yields a value mod p; ``reduced`` realizes the bounded message
    space (below 2^(bits-2) on the real backend, below p//4 on the mock).
    """
    if not domain_tag:
        raise ValueError("domain_tag must be nonempty")
    if width not in ("full", "reduced"):
        raise ValueError(f"unknown width {width!r}")
    digest = hashlib.sha512(struct.pack(">I", len(domain_tag)) + domain_tag + message).digest()
    value = int.from_bytes(digest, "big")
    if width == "reduced":
        return value % suite.backend.reduced_hash_bound()
    return value % suite.order


def multi_exp(items) -> "_Elem":
    """prod elem_i^{k_i} over same-kind elements, via one shared chain."""
    items = list(items)
    if not items:
        raise ValueError("multi_exp requires at least one (element, scalar) item")
    first = items[0][0]
    suite, kind = first.suite, first.kind
    for elem, _ in items:
        if elem.suite is not suite:
            raise CrossSuiteError("multi_exp arguments belong to different suites")
        if elem.kind != kind:
            raise TypeError("multi_exp arguments must share one group")
    raw = suite.backend.multi_exp(kind, [(e.h, k % suite.order) for e, k in items])
    return _KIND_CLS[kind](suite, raw)


def random_scalar(suite: GroupSuite, rng) -> Scalar:
    return rng.randrange(suite.order)


def random_nonzero_scalar(suite: GroupSuite, rng) -> Scalar:
    """Uniform over [1, p)."""
    return rng.randrange(1, suite.order)


def encode_element(elem: _Elem) -> bytes:
    return elem.suite.backend.encode(elem.kind, elem.h)


def decode_element(suite: GroupSuite, kind: str, data: bytes) -> _Elem:
    if kind not in _KIND_CLS:
        raise ValueError(f"unknown element kind {kind!r}")
    return _KIND_CLS[kind](suite, suite.backend.decode(kind, data))
