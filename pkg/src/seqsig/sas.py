"""Sequential aggregate signatures with constant-size aggregates.

Two variants over shared public parameters:

* ``sas1`` — 8-element aggregates, 11-element signer public keys, clear
  generator in the parameters, randomized verification row.
* ``sas2`` — 6-element aggregates, 13-element signer public keys, only a
  blinded generator row published.

Appending folds the new signer's message into the aggregate-so-far's
randomness via (S'_2)^(x*M + y), then re-randomizes with fresh exponents,
so the result is distributed like a fresh aggregate with composed
randomness. Verification cost is a constant 8 (sas1) or 6 (sas2) pairings
regardless of how many signers contributed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from . import pks
from .errors import (
    DuplicateSignerError,
    InvalidAggregateError,
    MalformedEncodingError,
    MissingWitnessError,
)
from .groups import (
    G1Elem,
    G2Elem,
    GroupSuite,
    GTElem,
    Scalar,
    hash_to_scalar,
    multi_exp,
    pair,
    pairing_product,
    random_nonzero_scalar,
    random_scalar,
)

VARIANTS = ("sas1", "sas2")
AGG_WIDTH = {"sas1": 4, "sas2": 3}
MESSAGE_WIDTH = {"sas1": "reduced", "sas2": "full"}
_CHAIN_TAG = b"seqsig/sas/chain"


@dataclass(frozen=True)
class Sas1Params:
    suite: GroupSuite
    g: G1Elem
    w1: G1Elem
    w2: G1Elem
    w3: G1Elem
    w: G1Elem
    g_hat_row: tuple[G2Elem, ...]  # ghat, ghat^nu1, ghat^nu2, ghat^-tau
    v_hat_row: tuple[G2Elem, ...]  # vhat, vhat^nu3, vhat^-pi
    variant = "sas1"

    def elements(self):
        return [self.g, self.w1, self.w2, self.w3, self.w] + list(self.g_hat_row) + list(self.v_hat_row)


@dataclass(frozen=True)
class Sas2Params:
    suite: GroupSuite
    g_row: tuple[G1Elem, ...]  # g*w1^cg, w2^cg, w^cg
    w_row: tuple[G1Elem, ...]  # w1, w2, w
    g_hat_row: tuple[G2Elem, ...]  # ghat, ghat^nu, ghat^-tau
    lam: GTElem  # e(g, ghat)
    variant = "sas2"

    def elements(self):
        return list(self.g_row) + list(self.w_row) + list(self.g_hat_row) + [self.lam]


@dataclass(frozen=True)
class SasSignerPublic:
    variant: str
    # sas1: u, h in g1_elems; sas2: blinded u-row and h-row (3 + 3)
    g1_elems: tuple[G1Elem, ...]
    u_hat_row: tuple[G2Elem, ...]
    h_hat_row: tuple[G2Elem, ...]
    omega: GTElem

    def elements(self):
        return list(self.g1_elems) + list(self.u_hat_row) + list(self.h_hat_row) + [self.omega]


@dataclass(frozen=True)
class SasSignerPrivate:
    variant: str
    alpha: Scalar
    x: Scalar
    y: Scalar
    c_u: Scalar | None = None  # sas2 blinding witnesses
    c_h: Scalar | None = None
    pk_id: bytes = b""


@dataclass(frozen=True)
class AggregateSignature:
    variant: str
    row1: tuple[G1Elem, ...]
    row2: tuple[G1Elem, ...]
    messages: tuple[Scalar, ...]
    signers: tuple[SasSignerPublic, ...]

    @property
    def length(self):
        return len(self.messages)

    def elements(self):
        return list(self.row1) + list(self.row2)


@dataclass(frozen=True)
class Sas1SetupExponents:
    y_w: Scalar
    y_v: Scalar
    nu1: Scalar
    nu2: Scalar
    nu3: Scalar
    phi1: Scalar
    phi2: Scalar
    phi3: Scalar


@dataclass(frozen=True)
class Sas2SetupExponents:
    y_w: Scalar
    nu: Scalar
    phi1: Scalar
    phi2: Scalar
    c_g: Scalar


def setup(suite: GroupSuite, variant: str, rng):
    return setup_from_exponents(suite, variant, draw_setup_exponents(suite, variant, rng))


def draw_setup_exponents(suite, variant, rng):
    r = lambda: random_scalar(suite, rng)
    if variant == "sas1":
        return Sas1SetupExponents(r(), r(), r(), r(), r(), r(), r(), r())
    if variant == "sas2":
        return Sas2SetupExponents(r(), r(), r(), r(), r())
    raise ValueError(f"unknown variant {variant!r}")


def setup_from_exponents(suite: GroupSuite, variant: str, e):
    g, ghat = suite.g, suite.g_hat
    p = suite.order
    if variant == "sas1":
        tau = (e.phi1 + e.nu1 * e.phi2 + e.nu2 * e.phi3) % p
        pi = (e.phi2 + e.nu3 * e.phi3) % p
        w = g ** e.y_w
        vhat = ghat ** e.y_v
        return Sas1Params(
            suite=suite, g=g,
            w1=w ** e.phi1, w2=w ** e.phi2, w3=w ** e.phi3, w=w,
            g_hat_row=(ghat, ghat ** e.nu1, ghat ** e.nu2, ghat ** (-tau % p)),
            v_hat_row=(vhat, vhat ** e.nu3, vhat ** (-pi % p)),
        )
    if variant == "sas2":
        tau = (e.phi1 + e.nu * e.phi2) % p
        w = g ** e.y_w
        w1, w2 = w ** e.phi1, w ** e.phi2
        return Sas2Params(
            suite=suite,
            g_row=(g * w1 ** e.c_g, w2 ** e.c_g, w ** e.c_g),
            w_row=(w1, w2, w),
            g_hat_row=(ghat, ghat ** e.nu, ghat ** (-tau % p)),
            lam=pair(g, ghat),
        )
    raise ValueError(f"unknown variant {variant!r}")


def keygen(params, rng) -> tuple[SasSignerPublic, SasSignerPrivate]:
    suite = params.suite
    alpha = random_scalar(suite, rng)
    x = random_scalar(suite, rng)
    y = random_scalar(suite, rng)
    if params.variant == "sas2":
        return signer_from_secrets(params, alpha, x, y,
                                   c_u=random_scalar(suite, rng),
                                   c_h=random_scalar(suite, rng))
    return signer_from_secrets(params, alpha, x, y)


def signer_from_secrets(params, alpha, x, y, c_u=None, c_h=None):
    """Deterministic key build; also the registry's reconstruction path."""
    suite = params.suite
    ghat_row = params.g_hat_row
    u_hat_row = tuple(el ** x for el in ghat_row)
    h_hat_row = tuple(el ** y for el in ghat_row)
    if params.variant == "sas1":
        pub = SasSignerPublic(
            variant="sas1",
            g1_elems=(params.g ** x, params.g ** y),
            u_hat_row=u_hat_row, h_hat_row=h_hat_row,
            omega=pair(params.g, suite.g_hat) ** alpha,
        )
        priv = SasSignerPrivate("sas1", alpha, x, y, pk_id=pks.key_id(pub))
        return pub, priv
    if c_u is None or c_h is None:
        raise MissingWitnessError("sas2 keys require the c_u and c_h blinding witnesses")
    gr, wr = params.g_row, params.w_row
    u_row = tuple(gr[k] ** x * wr[k] ** c_u for k in range(3))
    h_row = tuple(gr[k] ** y * wr[k] ** c_h for k in range(3))
    pub = SasSignerPublic(
        variant="sas2",
        g1_elems=u_row + h_row,
        u_hat_row=u_hat_row, h_hat_row=h_hat_row,
        omega=params.lam ** alpha,
    )
    priv = SasSignerPrivate("sas2", alpha, x, y, c_u=c_u, c_h=c_h, pk_id=pks.key_id(pub))
    return pub, priv


def empty_aggregate(params) -> AggregateSignature:
    """The unique l = 0 aggregate: every component is the identity."""
    width = AGG_WIDTH[params.variant]
    one = params.suite.identity("g1")
    return AggregateSignature(params.variant, (one,) * width, (one,) * width, (), ())


def chained_message_scalar(suite: GroupSuite, variant: str, chain: Sequence[bytes]) -> Scalar:
    """Hash a message chain (multi-message support) to the scheme's space."""
    payload = b"".join(len(m).to_bytes(4, "big") + m for m in chain)
    return hash_to_scalar(suite, _CHAIN_TAG, payload, width=MESSAGE_WIDTH[variant])


def agg_sign(params, prev: AggregateSignature, message: bytes,
             pub: SasSignerPublic, priv: SasSignerPrivate, rng, *,
             certified: Callable | None = None, verify_prev: bool = True) -> AggregateSignature:
    m = chained_message_scalar(params.suite, params.variant, [message])
    return agg_sign_scalar(params, prev, m, pub, priv, rng,
                           certified=certified, verify_prev=verify_prev)


def agg_sign_scalar(params, prev, m, pub, priv, rng, *,
                    certified=None, verify_prev=True) -> AggregateSignature:
    suite = params.suite
    if prev.variant != params.variant:
        raise MalformedEncodingError("aggregate variant does not match parameters")
    if verify_prev and not agg_verify(params, prev, rng, certified=certified):
        raise InvalidAggregateError("aggregate-so-far failed verification; halting")
    kid = pks.key_id(pub)
    if any(pks.key_id(s) == kid for s in prev.signers):
        raise DuplicateSignerError("signer already present in the aggregate")
    r = random_scalar(suite, rng)
    c1 = random_scalar(suite, rng)
    c2 = random_scalar(suite, rng)
    return agg_sign_with_randomness(params, prev, m, pub, priv, r, c1, c2)


def agg_sign_with_randomness(params, prev, m, pub, priv, r, c1, c2) -> AggregateSignature:
    suite = params.suite
    p = suite.order
    d = (priv.x * m + priv.y) % p
    messages = prev.messages + (m,)
    signers = prev.signers + (pub,)
    if params.variant == "sas1":
        t1 = [
            prev.row1[0] * suite.g ** priv.alpha * prev.row2[0] ** d,
            prev.row1[1] * prev.row2[1] ** d,
            prev.row1[2] * prev.row2[2] ** d,
            prev.row1[3] * prev.row2[3] ** d,
        ]
        base = suite.identity("g1")
        for mi, si in zip(messages, signers):
            u_i, h_i = si.g1_elems
            base = base * (u_i ** mi * h_i)
        w_row = (params.w1, params.w2, params.w3, params.w)
        row1 = (
            t1[0] * base ** r * w_row[0] ** c1,
            t1[1] * w_row[1] ** c1,
            t1[2] * w_row[2] ** c1,
            t1[3] * w_row[3] ** c1,
        )
        row2 = (
            prev.row2[0] * suite.g ** r * w_row[0] ** c2,
            prev.row2[1] * w_row[1] ** c2,
            prev.row2[2] * w_row[2] ** c2,
            prev.row2[3] * w_row[3] ** c2,
        )
    else:
        gr, wr = params.g_row, params.w_row
        t1 = [prev.row1[k] * gr[k] ** priv.alpha * prev.row2[k] ** d for k in range(3)]
        bases = []
        for k in range(3):
            acc = suite.identity("g1")
            for mi, si in zip(messages, signers):
                acc = acc * (si.g1_elems[k] ** mi * si.g1_elems[3 + k])
            bases.append(acc)
        row1 = tuple(t1[k] * bases[k] ** r * wr[k] ** c1 for k in range(3))
        row2 = tuple(prev.row2[k] * gr[k] ** r * wr[k] ** c2 for k in range(3))
    return AggregateSignature(params.variant, row1, row2, messages, signers)


def agg_verify(params, agg: AggregateSignature, rng, *, certified=None) -> bool:
    suite = params.suite
    if agg.variant != params.variant:
        raise MalformedEncodingError("aggregate variant does not match parameters")
    width = AGG_WIDTH[params.variant]
    if len(agg.row1) != width or len(agg.row2) != width:
        raise MalformedEncodingError("aggregate width does not match variant")
    if len(agg.messages) != len(agg.signers):
        raise MalformedEncodingError("message and signer lists differ in length")
    ids = [pks.key_id(s) for s in agg.signers]
    if len(set(ids)) != len(ids):
        return False
    if certified is not None and not all(certified(s) for s in agg.signers):
        return False
    if agg.length == 0:
        return all(e.is_identity() for e in agg.row1 + agg.row2)
    t = random_nonzero_scalar(suite, rng)
    if params.variant == "sas1":
        s1 = random_scalar(suite, rng)
        s2 = random_scalar(suite, rng)
        return agg_verify_with_coins(params, agg, t, s1, s2)
    return agg_verify_with_coins(params, agg, t)


def agg_verify_with_coins(params, agg, t, s1=0, s2=0) -> bool:
    suite = params.suite
    p = suite.order
    ghat_row = params.g_hat_row
    width = AGG_WIDTH[params.variant]
    # Pi_i (u_i^m_i h_i)^t per slot, with t folded into the exponents so
    # each slot is a single shared-chain multi-exponentiation.
    acc = []
    for k in range(width):
        items = []
        for mi, si in zip(agg.messages, agg.signers):
            items.append((si.u_hat_row[k], mi * t % p))
            items.append((si.h_hat_row[k], t))
        acc.append(items)
    omega_prod = suite.identity("gt")
    for si in agg.signers:
        omega_prod = omega_prod * si.omega
    if params.variant == "sas1":
        vr = params.v_hat_row
        c1_row = (
            ghat_row[0] ** t,
            multi_exp([(ghat_row[1], t), (vr[0], s1)]),
            multi_exp([(ghat_row[2], t), (vr[1], s1)]),
            multi_exp([(ghat_row[3], t), (vr[2], s1)]),
        )
        c2_row = (
            multi_exp(acc[0]),
            multi_exp(acc[1] + [(vr[0], s2)]),
            multi_exp(acc[2] + [(vr[1], s2)]),
            multi_exp(acc[3] + [(vr[2], s2)]),
        )
    else:
        c1_row = tuple(el ** t for el in ghat_row)
        c2_row = tuple(multi_exp(items) for items in acc)
    lhs = pairing_product(zip(agg.row1, c1_row), zip(agg.row2, c2_row))
    return lhs == omega_prod ** t


def strip_to_single(params, agg: AggregateSignature, target_index: int,
                    witnesses: Mapping[bytes, SasSignerPrivate]) -> pks.Signature:
    """Unwind an aggregate to the target signer's single-signer signature.

    ``witnesses`` maps key-ids to private keys for every signer except
    (optionally including) the target. The result verifies under
    :func:`pks_view` of the target's key.
    """
    suite = params.suite
    p = suite.order
    if not 0 <= target_index < agg.length:
        raise IndexError("target index outside the aggregate")
    width = AGG_WIDTH[params.variant]
    row1 = list(agg.row1)
    for i, (mi, si) in enumerate(zip(agg.messages, agg.signers)):
        if i == target_index:
            continue
        kid = pks.key_id(si)
        if kid not in witnesses:
            raise MissingWitnessError(f"no private witness for signer {i}")
        wit = witnesses[kid]
        d = (wit.x * mi + wit.y) % p
        row1[0] = row1[0] / (suite.g ** wit.alpha * agg.row2[0] ** d)
        for k in range(1, width):
            row1[k] = row1[k] / agg.row2[k] ** d
    variant = "pks1" if params.variant == "sas1" else "pks2"
    return pks.Signature(variant, tuple(row1), tuple(agg.row2))


def pks_view(params, pub: SasSignerPublic):
    """Assemble the single-signer public key implied by (params, signer)."""
    suite = params.suite
    if params.variant == "sas1":
        u, h = pub.g1_elems
        return pks.Pks1PublicKey(
            suite=suite, g=params.g, u=u, h=h,
            w1=params.w1, w2=params.w2, w3=params.w3, w=params.w,
            g_hat_row=params.g_hat_row,
            u_hat_row=pub.u_hat_row, h_hat_row=pub.h_hat_row,
            v_hat_row=params.v_hat_row, omega=pub.omega,
        )
    return pks.Pks2PublicKey(
        suite=suite,
        g_row=params.g_row,
        u_row=pub.g1_elems[:3], h_row=pub.g1_elems[3:],
        w_row=params.w_row,
        g_hat_row=params.g_hat_row,
        u_hat_row=pub.u_hat_row, h_hat_row=pub.h_hat_row,
        omega=pub.omega,
    )


def remove_signer(params, agg: AggregateSignature, pub: SasSignerPublic,
                  priv: SasSignerPrivate, m_old: Scalar) -> AggregateSignature:
    """Divide one signer's contribution out of an aggregate.

    The leftover blinding shift is absorbed into the aggregate's composed
    randomness, so the result is again a well-formed aggregate over the
    remaining signers (provided ``m_old`` is the scalar actually signed).
    """
    suite = params.suite
    p = suite.order
    kid = priv.pk_id
    idx = next((i for i, s in enumerate(agg.signers) if pks.key_id(s) == kid), None)
    if idx is None:
        raise MissingWitnessError("signer is not present in the aggregate")
    d = (priv.x * m_old + priv.y) % p
    width = AGG_WIDTH[params.variant]
    row1 = list(agg.row1)
    if params.variant == "sas1":
        row1[0] = row1[0] / (suite.g ** priv.alpha * agg.row2[0] ** d)
        for k in range(1, width):
            row1[k] = row1[k] / agg.row2[k] ** d
    else:
        for k in range(width):
            row1[k] = row1[k] / (params.g_row[k] ** priv.alpha * agg.row2[k] ** d)
    messages = agg.messages[:idx] + agg.messages[idx + 1:]
    signers = agg.signers[:idx] + agg.signers[idx + 1:]
    return AggregateSignature(agg.variant, tuple(row1), agg.row2, messages, signers)


def agg_resign(params, agg: AggregateSignature, old_chain: Sequence[bytes],
               new_message: bytes, pub: SasSignerPublic, priv: SasSignerPrivate,
               rng) -> AggregateSignature:
    """Replace this signer's contribution with one covering the extended chain.

    ``old_chain`` is the message sequence the signer previously covered; the
    new contribution signs the chain extended by ``new_message``. A wrong
    ``old_chain`` is not detectable here and simply yields an aggregate that
    fails verification.
    """
    suite = params.suite
    m_old = chained_message_scalar(suite, params.variant, old_chain)
    stripped = remove_signer(params, agg, pub, priv, m_old)
    m_new = chained_message_scalar(suite, params.variant, list(old_chain) + [new_message])
    r = random_scalar(suite, rng)
    c1 = random_scalar(suite, rng)
    c2 = random_scalar(suite, rng)
    return agg_sign_with_randomness(params, stripped, m_new, pub, priv, r, c1, c2)
