"""Multi-signatures on a common message.

The message-hashing bases u, h live in the shared parameters rather than
per-signer keys, so a public key is a single GT element and individual
signatures on the same message combine by componentwise multiplication.
Verification of a combined signature costs the same six pairings as an
individual one.

Duplicate public keys in the verification list are accepted: nothing in
the combining algebra forbids them, and rogue-key concerns are the
certification registry's job, not the verifier's.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

from .errors import CrossSuiteError, InvalidAggregateError, MalformedEncodingError
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

_MSG_TAG = b"seqsig/ms/message"


@dataclass(frozen=True)
class MsParams:
    suite: GroupSuite
    g_row: tuple[G1Elem, ...]  # g*w1^cg, w2^cg, w^cg
    u_row: tuple[G1Elem, ...]
    h_row: tuple[G1Elem, ...]
    w_row: tuple[G1Elem, ...]  # w1, w2, w
    g_hat_row: tuple[G2Elem, ...]  # ghat, ghat^nu, ghat^-tau
    u_hat_row: tuple[G2Elem, ...]
    h_hat_row: tuple[G2Elem, ...]
    lam: GTElem  # e(g, ghat)
    variant = "ms"

    def elements(self):
        return (
            list(self.g_row) + list(self.u_row) + list(self.h_row) + list(self.w_row)
            + list(self.g_hat_row) + list(self.u_hat_row) + list(self.h_hat_row)
            + [self.lam]
        )


@dataclass(frozen=True)
class MsPublicKey:
    suite: GroupSuite
    omega: GTElem

    def elements(self):
        return [self.omega]


@dataclass(frozen=True)
class MsPrivateKey:
    alpha: Scalar
    pk_id: bytes


@dataclass(frozen=True)
class MsSignature:
    """Six-component form, shared by individual and combined signatures."""

    row1: tuple[G1Elem, ...]
    row2: tuple[G1Elem, ...]

    def elements(self):
        return list(self.row1) + list(self.row2)


@dataclass(frozen=True)
class MsSetupExponents:
    y_w: Scalar
    nu: Scalar
    phi1: Scalar
    phi2: Scalar
    x: Scalar
    y: Scalar
    c_g: Scalar
    c_u: Scalar
    c_h: Scalar


def ms_setup(suite: GroupSuite, rng) -> MsParams:
    r = lambda: random_scalar(suite, rng)
    return ms_setup_from_exponents(suite, MsSetupExponents(r(), r(), r(), r(), r(), r(), r(), r(), r()))


def ms_setup_from_exponents(suite: GroupSuite, e: MsSetupExponents) -> MsParams:
    g, ghat = suite.g, suite.g_hat
    p = suite.order
    tau = (e.phi1 + e.nu * e.phi2) % p
    w = g ** e.y_w
    w1, w2 = w ** e.phi1, w ** e.phi2
    u, h = g ** e.x, g ** e.y
    uhat, hhat = ghat ** e.x, ghat ** e.y
    return MsParams(
        suite=suite,
        g_row=(g * w1 ** e.c_g, w2 ** e.c_g, w ** e.c_g),
        u_row=(u * w1 ** e.c_u, w2 ** e.c_u, w ** e.c_u),
        h_row=(h * w1 ** e.c_h, w2 ** e.c_h, w ** e.c_h),
        w_row=(w1, w2, w),
        g_hat_row=(ghat, ghat ** e.nu, ghat ** (-tau % p)),
        u_hat_row=(uhat, uhat ** e.nu, uhat ** (-tau % p)),
        h_hat_row=(hhat, hhat ** e.nu, hhat ** (-tau % p)),
        lam=pair(g, ghat),
    )


def ms_keygen(params: MsParams, rng) -> tuple[MsPublicKey, MsPrivateKey]:
    alpha = random_scalar(params.suite, rng)
    return ms_key_from_secret(params, alpha)


def ms_key_from_secret(params: MsParams, alpha: Scalar):
    pk = MsPublicKey(suite=params.suite, omega=params.lam ** alpha)
    pk_id = hashlib.sha256(encode_element(pk.omega)).digest()
    return pk, MsPrivateKey(alpha=alpha, pk_id=pk_id)


def message_scalar(params: MsParams, message: bytes) -> Scalar:
    return hash_to_scalar(params.suite, _MSG_TAG, message, width="full")


def ms_sign(params: MsParams, message: bytes, sk: MsPrivateKey, rng) -> MsSignature:
    return ms_sign_scalar(params, message_scalar(params, message), sk, rng)


def ms_sign_scalar(params, m, sk, rng) -> MsSignature:
    suite = params.suite
    r = random_scalar(suite, rng)
    c1 = random_scalar(suite, rng)
    c2 = random_scalar(suite, rng)
    return ms_sign_with_randomness(params, m, sk, r, c1, c2)


def ms_sign_with_randomness(params, m, sk, r, c1, c2) -> MsSignature:
    gr, ur, hr, wr = params.g_row, params.u_row, params.h_row, params.w_row
    row1 = tuple(
        gr[k] ** sk.alpha * (ur[k] ** m * hr[k]) ** r * wr[k] ** c1 for k in range(3)
    )
    row2 = tuple(gr[k] ** r * wr[k] ** c2 for k in range(3))
    return MsSignature(row1, row2)


def _verification_rows(params, m, t):
    mt = m * t % params.suite.order
    v1 = tuple(el ** t for el in params.g_hat_row)
    v2 = tuple(
        multi_exp([(params.u_hat_row[k], mt), (params.h_hat_row[k], t)])
        for k in range(3)
    )
    return v1, v2


def ms_verify(sig: MsSignature, message: bytes, pk: MsPublicKey, params: MsParams, rng) -> bool:
    return ms_verify_scalar(sig, message_scalar(params, message), pk, params, rng)


def ms_verify_scalar(sig, m, pk, params, rng) -> bool:
    t = random_nonzero_scalar(params.suite, rng)
    return ms_verify_with_coins(sig, m, pk, params, t)


def ms_verify_with_coins(sig, m, pk, params, t) -> bool:
    if len(sig.row1) != 3 or len(sig.row2) != 3:
        raise MalformedEncodingError("multi-signature must have width 3 + 3")
    v1, v2 = _verification_rows(params, m, t)
    lhs = pairing_product(zip(sig.row1, v1), zip(sig.row2, v2))
    return lhs == pk.omega ** t


def ms_combine(sigs: Sequence[MsSignature], message: bytes, pks: Sequence[MsPublicKey],
               params: MsParams, rng, *, skip_individual_checks: bool = False) -> MsSignature:
    """Componentwise product of same-message signatures.

    Each input is verified first unless the caller vouches for a
    pre-verified batch via ``skip_individual_checks``.
    """
    if len(sigs) != len(pks):
        raise ValueError("signature and key lists must align")
    if not sigs:
        raise ValueError("nothing to combine")
    for pk in pks:
        if pk.suite is not params.suite:
            raise CrossSuiteError("public key belongs to a different suite")
    if not skip_individual_checks:
        for i, (sig, pk) in enumerate(zip(sigs, pks)):
            if not ms_verify(sig, message, pk, params, rng):
                raise InvalidAggregateError(f"input signature {i} is invalid; halting")
    row1 = list(sigs[0].row1)
    row2 = list(sigs[0].row2)
    for sig in sigs[1:]:
        row1 = [a * b for a, b in zip(row1, sig.row1)]
        row2 = [a * b for a, b in zip(row2, sig.row2)]
    return MsSignature(tuple(row1), tuple(row2))


def ms_mult_verify(msig: MsSignature, message: bytes, pks: Sequence[MsPublicKey],
                   params: MsParams, rng) -> bool:
    return ms_mult_verify_scalar(msig, message_scalar(params, message), pks, params, rng)


def ms_mult_verify_scalar(msig, m, pks, params, rng) -> bool:
    t = random_nonzero_scalar(params.suite, rng)
    return ms_mult_verify_with_coins(msig, m, pks, params, t)


def ms_mult_verify_with_coins(msig, m, pks, params, t) -> bool:
    if not pks:
        raise ValueError("verification requires at least one public key")
    if len(msig.row1) != 3 or len(msig.row2) != 3:
        raise MalformedEncodingError("multi-signature must have width 3 + 3")
    v1, v2 = _verification_rows(params, m, t)
    omega_prod = params.suite.identity("gt")
    for pk in pks:
        omega_prod = omega_prod * pk.omega
    lhs = pairing_product(zip(msig.row1, v1), zip(msig.row2, v2))
    return lhs == omega_prod ** t
