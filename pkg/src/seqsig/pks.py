"""Single-signer signatures behind one variant-parameterized interface.

Three variants share the same verification skeleton (a fused pairing
product against Omega^t with fresh verifier coins):

* ``pks1`` — 8-element signatures, extra verifier randomization row.
* ``pks2`` — 6-element signatures, blinded generator rows in the public key.
* ``lw``   — 6-element reference variant whose public key omits the clear
  g, u, h (single-user only; no aggregation support).

Randomness always flows through the supplied rng; the ``*_from_exponents``
and ``*_with_randomness`` builders make every transcript reproducible for
the oracle tests.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

from .errors import KeyMismatchError, MalformedEncodingError
from .groups import (
    G1Elem,
    G2Elem,
    GroupSuite,
    GTElem,
    Scalar,
    encode_element,
    hash_to_scalar,
    multi_exp,
    pair,
    pairing_product,
    random_nonzero_scalar,
    random_scalar,
)

VARIANTS = ("pks1", "pks2", "lw")

SIG_WIDTH = {"pks1": 4, "pks2": 3, "lw": 3}
MESSAGE_WIDTH = {"pks1": "reduced", "pks2": "full", "lw": "reduced"}
_MSG_TAG = b"seqsig/pks/message"


@dataclass(frozen=True)
class Pks1PublicKey:
    suite: GroupSuite
    g: G1Elem
    u: G1Elem
    h: G1Elem
    w1: G1Elem
    w2: G1Elem
    w3: G1Elem
    w: G1Elem
    g_hat_row: tuple[G2Elem, ...]  # ghat, ghat^nu1, ghat^nu2, ghat^-tau
    u_hat_row: tuple[G2Elem, ...]
    h_hat_row: tuple[G2Elem, ...]
    v_hat_row: tuple[G2Elem, ...]  # vhat, vhat^nu3, vhat^-pi
    omega: GTElem

    def elements(self):
        return (
            [self.g, self.u, self.h, self.w1, self.w2, self.w3, self.w]
            + list(self.g_hat_row) + list(self.u_hat_row) + list(self.h_hat_row)
            + list(self.v_hat_row) + [self.omega]
        )


@dataclass(frozen=True)
class Pks2PublicKey:
    suite: GroupSuite
    g_row: tuple[G1Elem, ...]  # g*w1^cg, w2^cg, w^cg
    u_row: tuple[G1Elem, ...]
    h_row: tuple[G1Elem, ...]
    w_row: tuple[G1Elem, ...]  # w1, w2, w
    g_hat_row: tuple[G2Elem, ...]  # ghat, ghat^nu, ghat^-tau
    u_hat_row: tuple[G2Elem, ...]
    h_hat_row: tuple[G2Elem, ...]
    omega: GTElem

    def elements(self):
        return (
            list(self.g_row) + list(self.u_row) + list(self.h_row) + list(self.w_row)
            + list(self.g_hat_row) + list(self.u_hat_row) + list(self.h_hat_row)
            + [self.omega]
        )


@dataclass(frozen=True)
class LwPublicKey:
    suite: GroupSuite
    w_row: tuple[G1Elem, ...]  # w1, w2, w
    g_hat_row: tuple[G2Elem, ...]
    u_hat_row: tuple[G2Elem, ...]
    h_hat_row: tuple[G2Elem, ...]
    omega: GTElem

    def elements(self):
        return (
            list(self.w_row) + list(self.g_hat_row) + list(self.u_hat_row)
            + list(self.h_hat_row) + [self.omega]
        )


@dataclass(frozen=True)
class PrivateKey:
    """Held exponents; u and h are recomputed from the suite generator."""

    variant: str
    alpha: Scalar
    x: Scalar | None = None  # pks1 verifiers never need these, but the
    y: Scalar | None = None  # signer key record keeps them for registries
    pk_id: bytes = b""


@dataclass(frozen=True)
class Signature:
    variant: str
    row1: tuple[G1Elem, ...]
    row2: tuple[G1Elem, ...]

    def elements(self):
        return list(self.row1) + list(self.row2)


def key_id(pk) -> bytes:
    """Stable identifier: hash of the canonical public-key encoding."""
    payload = b"".join(encode_element(e) for e in pk.elements())
    return hashlib.sha256(payload).digest()


@dataclass(frozen=True)
class Pks1Exponents:
    y_w: Scalar
    y_v: Scalar
    nu1: Scalar
    nu2: Scalar
    nu3: Scalar
    phi1: Scalar
    phi2: Scalar
    phi3: Scalar
    alpha: Scalar
    x: Scalar
    y: Scalar


@dataclass(frozen=True)
class Pks2Exponents:
    y_w: Scalar
    nu: Scalar
    phi1: Scalar
    phi2: Scalar
    alpha: Scalar
    x: Scalar
    y: Scalar
    c_g: Scalar = 0
    c_u: Scalar = 0
    c_h: Scalar = 0


def keygen(suite: GroupSuite, variant: str, rng):
    """Draw a fresh key pair. Returns (public_key, private_key)."""
    return keygen_from_exponents(suite, variant, _draw_exponents(suite, variant, rng))


def _draw_exponents(suite, variant, rng):
    r = lambda: random_scalar(suite, rng)
    if variant == "pks1":
        return Pks1Exponents(r(), r(), r(), r(), r(), r(), r(), r(), r(), r(), r())
    if variant == "pks2":
        return Pks2Exponents(r(), r(), r(), r(), r(), r(), r(), r(), r(), r())
    if variant == "lw":
        return Pks2Exponents(r(), r(), r(), r(), r(), r(), r())
    raise ValueError(f"unknown variant {variant!r}")


def keygen_from_exponents(suite: GroupSuite, variant: str, e):
    g, ghat = suite.g, suite.g_hat
    p = suite.order
    if variant == "pks1":
        tau = (e.phi1 + e.nu1 * e.phi2 + e.nu2 * e.phi3) % p
        pi = (e.phi2 + e.nu3 * e.phi3) % p
        w = g ** e.y_w
        vhat = ghat ** e.y_v
        uhat, hhat = ghat ** e.x, ghat ** e.y
        pk = Pks1PublicKey(
            suite=suite,
            g=g, u=g ** e.x, h=g ** e.y,
            w1=w ** e.phi1, w2=w ** e.phi2, w3=w ** e.phi3, w=w,
            g_hat_row=(ghat, ghat ** e.nu1, ghat ** e.nu2, ghat ** (-tau % p)),
            u_hat_row=(uhat, uhat ** e.nu1, uhat ** e.nu2, uhat ** (-tau % p)),
            h_hat_row=(hhat, hhat ** e.nu1, hhat ** e.nu2, hhat ** (-tau % p)),
            v_hat_row=(vhat, vhat ** e.nu3, vhat ** (-pi % p)),
            omega=pair(g, ghat) ** e.alpha,
        )
    elif variant in ("pks2", "lw"):
        tau = (e.phi1 + e.nu * e.phi2) % p
        w = g ** e.y_w
        w1, w2 = w ** e.phi1, w ** e.phi2
        uhat, hhat = ghat ** e.x, ghat ** e.y
        g_hat_row = (ghat, ghat ** e.nu, ghat ** (-tau % p))
        u_hat_row = (uhat, uhat ** e.nu, uhat ** (-tau % p))
        h_hat_row = (hhat, hhat ** e.nu, hhat ** (-tau % p))
        omega = pair(g, ghat) ** e.alpha
        if variant == "pks2":
            u, h = g ** e.x, g ** e.y
            pk = Pks2PublicKey(
                suite=suite,
                g_row=(g * w1 ** e.c_g, w2 ** e.c_g, w ** e.c_g),
                u_row=(u * w1 ** e.c_u, w2 ** e.c_u, w ** e.c_u),
                h_row=(h * w1 ** e.c_h, w2 ** e.c_h, w ** e.c_h),
                w_row=(w1, w2, w),
                g_hat_row=g_hat_row, u_hat_row=u_hat_row, h_hat_row=h_hat_row,
                omega=omega,
            )
        else:
            pk = LwPublicKey(
                suite=suite,
                w_row=(w1, w2, w),
                g_hat_row=g_hat_row, u_hat_row=u_hat_row, h_hat_row=h_hat_row,
                omega=omega,
            )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    sk = PrivateKey(variant=variant, alpha=e.alpha, x=e.x, y=e.y, pk_id=key_id(pk))
    return pk, sk


def message_scalar(suite: GroupSuite, variant: str, message: bytes) -> Scalar:
    return hash_to_scalar(suite, _MSG_TAG, message, width=MESSAGE_WIDTH[variant])


def sign(variant: str, message: bytes, sk: PrivateKey, pk, rng) -> Signature:
    return sign_scalar(variant, message_scalar(pk.suite, variant, message), sk, pk, rng)


def sign_scalar(variant: str, m: Scalar, sk: PrivateKey, pk, rng) -> Signature:
    if sk.pk_id and sk.pk_id != key_id(pk):
        raise KeyMismatchError("private key does not belong to this public key")
    suite = pk.suite
    r = random_scalar(suite, rng)
    c1 = random_scalar(suite, rng)
    c2 = random_scalar(suite, rng)
    return sign_with_randomness(variant, m, sk, pk, r, c1, c2)


def sign_with_randomness(variant: str, m: Scalar, sk: PrivateKey, pk, r, c1, c2) -> Signature:
    suite = pk.suite
    g = suite.g
    if variant == "pks1":
        uMh = pk.u ** m * pk.h
        row1 = (
            g ** sk.alpha * uMh ** r * pk.w1 ** c1,
            pk.w2 ** c1,
            pk.w3 ** c1,
            pk.w ** c1,
        )
        row2 = (g ** r * pk.w1 ** c2, pk.w2 ** c2, pk.w3 ** c2, pk.w ** c2)
        return Signature("pks1", row1, row2)
    if variant in ("pks2", "lw"):
        # signing uses the unblinded g, u, h known only to the key holder
        u, h = g ** sk.x, g ** sk.y
        w1, w2, w = pk.w_row
        uMh = u ** m * h
        row1 = (g ** sk.alpha * uMh ** r * w1 ** c1, w2 ** c1, w ** c1)
        row2 = (g ** r * w1 ** c2, w2 ** c2, w ** c2)
        return Signature(variant, row1, row2)
    raise ValueError(f"unknown variant {variant!r}")


def verification_components(variant: str, pk, m: Scalar, t: Scalar, s1: Scalar = 0, s2: Scalar = 0):
    """The verifier's fresh component rows (V1, V2) for given coins.

    Folding m into the exponents ((u^m h)^t = u^{mt} h^t) lets every
    component come out of one shared multi-exponentiation chain.
    """
    gr, ur, hr = pk.g_hat_row, pk.u_hat_row, pk.h_hat_row
    mt = m * t % pk.suite.order
    if variant == "pks1":
        vr = pk.v_hat_row
        v1 = (
            gr[0] ** t,
            multi_exp([(gr[1], t), (vr[0], s1)]),
            multi_exp([(gr[2], t), (vr[1], s1)]),
            multi_exp([(gr[3], t), (vr[2], s1)]),
        )
        v2 = (
            multi_exp([(ur[0], mt), (hr[0], t)]),
            multi_exp([(ur[1], mt), (hr[1], t), (vr[0], s2)]),
            multi_exp([(ur[2], mt), (hr[2], t), (vr[1], s2)]),
            multi_exp([(ur[3], mt), (hr[3], t), (vr[2], s2)]),
        )
        return v1, v2
    if variant in ("pks2", "lw"):
        v1 = (gr[0] ** t, gr[1] ** t, gr[2] ** t)
        v2 = tuple(multi_exp([(ur[k], mt), (hr[k], t)]) for k in range(3))
        return v1, v2
    raise ValueError(f"unknown variant {variant!r}")


def check_product(sig: Signature, v1: Sequence[G2Elem], v2: Sequence[G2Elem], rhs: GTElem) -> bool:
    lhs = pairing_product(zip(sig.row1, v1), zip(sig.row2, v2))
    return lhs == rhs


def verify(variant: str, sig: Signature, message: bytes, pk, rng) -> bool:
    return verify_scalar(variant, sig, message_scalar(pk.suite, variant, message), pk, rng)


def verify_scalar(variant: str, sig: Signature, m: Scalar, pk, rng) -> bool:
    suite = pk.suite
    t = random_nonzero_scalar(suite, rng)
    s1 = random_scalar(suite, rng) if variant == "pks1" else 0
    s2 = random_scalar(suite, rng) if variant == "pks1" else 0
    return verify_with_coins(variant, sig, m, pk, t, s1, s2)


def verify_with_coins(variant: str, sig: Signature, m: Scalar, pk, t, s1=0, s2=0) -> bool:
    width = SIG_WIDTH[variant]
    if sig.variant != variant or len(sig.row1) != width or len(sig.row2) != width:
        raise MalformedEncodingError(
            f"signature width {len(sig.row1)}/{len(sig.row2)} does not match variant {variant}"
        )
    v1, v2 = verification_components(variant, pk, m, t, s1, s2)
    return check_product(sig, v1, v2, pk.omega ** t)
