"""Envelope formats: round trips, suite binding, corruption handling."""

import pytest

from seqsig import envelopes as env, ms, pks, sas
from seqsig.errors import MalformedEncodingError
from seqsig.groups import suite_generate


class TestSignatureEnvelope:
    @pytest.mark.parametrize("variant", pks.VARIANTS)
    def test_round_trip(self, mock_suite, rng, variant):
        pk, sk = pks.keygen(mock_suite, variant, rng)
        sig = pks.sign(variant, b"m", sk, pk, rng)
        again = env.decode_signature(mock_suite, env.encode_signature(sig))
        assert again == sig

    def test_real_backend_round_trip(self, real_suite, rng):
        pk, sk = pks.keygen(real_suite, "pks2", rng)
        sig = pks.sign("pks2", b"m", sk, pk, rng)
        blob = env.encode_signature(sig)
        again = env.decode_signature(real_suite, blob)
        assert again == sig
        assert pks.verify("pks2", again, b"m", pk, rng)

    def test_wrong_suite_rejected(self, mock_suite, rng):
        pk, sk = pks.keygen(mock_suite, "pks2", rng)
        blob = env.encode_signature(pks.sign("pks2", b"m", sk, pk, rng))
        with pytest.raises(MalformedEncodingError):
            env.decode_signature(suite_generate("mock", 101), blob)

    def test_truncation_rejected(self, mock_suite, rng):
        pk, sk = pks.keygen(mock_suite, "pks2", rng)
        blob = env.encode_signature(pks.sign("pks2", b"m", sk, pk, rng))
        for cut in (3, 8, len(blob) - 1):
            with pytest.raises(MalformedEncodingError):
                env.decode_signature(mock_suite, blob[:cut])

    def test_trailing_bytes_rejected(self, mock_suite, rng):
        pk, sk = pks.keygen(mock_suite, "pks2", rng)
        blob = env.encode_signature(pks.sign("pks2", b"m", sk, pk, rng))
        with pytest.raises(MalformedEncodingError):
            env.decode_signature(mock_suite, blob + b"\x00")

    def test_wrong_magic_rejected(self, mock_suite, rng):
        pk, sk = pks.keygen(mock_suite, "pks2", rng)
        blob = env.encode_signature(pks.sign("pks2", b"m", sk, pk, rng))
        with pytest.raises(MalformedEncodingError):
            env.decode_public_key(mock_suite, blob)


class TestKeyEnvelopes:
    @pytest.mark.parametrize("variant", pks.VARIANTS)
    def test_single_signer_public_key(self, mock_suite, rng, variant):
        pk, _ = pks.keygen(mock_suite, variant, rng)
        again = env.decode_public_key(mock_suite, env.encode_public_key(pk))
        assert again == pk

    @pytest.mark.parametrize("variant", sas.VARIANTS)
    def test_aggregate_signer_public_key(self, mock_suite, rng, variant):
        params = sas.setup(mock_suite, variant, rng)
        pub, _ = sas.keygen(params, rng)
        again = env.decode_public_key(mock_suite, env.encode_public_key(pub))
        assert again == pub

    def test_ms_public_key(self, mock_suite, rng):
        params = ms.ms_setup(mock_suite, rng)
        pk, _ = ms.ms_keygen(params, rng)
        assert env.decode_public_key(mock_suite, env.encode_public_key(pk)) == pk

    @pytest.mark.parametrize("variant", ["pks1", "pks2", "lw"])
    def test_private_key_round_trip(self, mock_suite, rng, variant):
        pk, sk = pks.keygen(mock_suite, variant, rng)
        blob = env.encode_private_key(mock_suite, variant, sk)
        got_variant, got = env.decode_private_key(mock_suite, blob)
        assert got_variant == variant and got == sk

    @pytest.mark.parametrize("variant", sas.VARIANTS)
    def test_sas_private_key_round_trip(self, mock_suite, rng, variant):
        params = sas.setup(mock_suite, variant, rng)
        _, priv = sas.keygen(params, rng)
        blob = env.encode_private_key(mock_suite, variant, priv)
        got_variant, got = env.decode_private_key(mock_suite, blob)
        assert got_variant == variant and got == priv

    def test_ms_private_key_round_trip(self, mock_suite, rng):
        params = ms.ms_setup(mock_suite, rng)
        _, sk = ms.ms_keygen(params, rng)
        blob = env.encode_private_key(mock_suite, "ms", sk)
        assert env.decode_private_key(mock_suite, blob) == ("ms", sk)

    def test_out_of_range_scalar_rejected(self, tiny_suite, rng):
        params = ms.ms_setup(tiny_suite, rng)
        _, sk = ms.ms_keygen(params, rng)
        blob = bytearray(env.encode_private_key(tiny_suite, "ms", sk))
        blob[-32:] = (200).to_bytes(32, "big")  # 200 >= 101
        with pytest.raises(MalformedEncodingError):
            env.decode_private_key(tiny_suite, bytes(blob))


class TestParamsEnvelope:
    @pytest.mark.parametrize("build", [
        lambda s, r: sas.setup(s, "sas1", r),
        lambda s, r: sas.setup(s, "sas2", r),
        lambda s, r: ms.ms_setup(s, r),
    ])
    def test_round_trip(self, mock_suite, rng, build):
        params = build(mock_suite, rng)
        again = env.decode_params(mock_suite, env.encode_params(params))
        assert again == params


class TestAggregateEnvelope:
    @pytest.mark.parametrize("variant", sas.VARIANTS)
    def test_round_trip(self, mock_suite, rng, variant):
        params = sas.setup(mock_suite, variant, rng)
        agg = sas.empty_aggregate(params)
        keys = []
        for msg in (b"a", b"b"):
            pub, priv = sas.keygen(params, rng)
            keys.append(pub)
            agg = sas.agg_sign(params, agg, msg, pub, priv, rng)
        blob = env.encode_aggregate(agg)
        again = env.decode_aggregate(mock_suite, blob, keys)
        assert again == agg
        assert sas.agg_verify(params, again, rng)

    def test_missing_key_rejected(self, mock_suite, rng):
        params = sas.setup(mock_suite, "sas2", rng)
        pub, priv = sas.keygen(params, rng)
        agg = sas.agg_sign(params, sas.empty_aggregate(params), b"a", pub, priv, rng)
        with pytest.raises(MalformedEncodingError):
            env.decode_aggregate(mock_suite, env.encode_aggregate(agg), [])

    def test_empty_aggregate_round_trip(self, mock_suite, rng):
        params = sas.setup(mock_suite, "sas1", rng)
        agg = sas.empty_aggregate(params)
        assert env.decode_aggregate(mock_suite, env.encode_aggregate(agg), []) == agg


class TestMultisigEnvelope:
    def test_round_trip(self, mock_suite, rng):
        params = ms.ms_setup(mock_suite, rng)
        keys = [ms.ms_keygen(params, rng) for _ in range(2)]
        sigs = [ms.ms_sign(params, b"joint", sk, rng) for _, sk in keys]
        pk_list = [pk for pk, _ in keys]
        msig = ms.ms_combine(sigs, b"joint", pk_list, params, rng)
        mh = ms.message_scalar(params, b"joint")
        blob = env.encode_multisignature(msig, mh, pk_list)
        got_sig, got_mh, got_pks = env.decode_multisignature(mock_suite, blob, pk_list)
        assert got_sig == msig and got_mh == mh and got_pks == pk_list
        assert ms.ms_mult_verify_scalar(got_sig, got_mh, got_pks, params, rng)


class TestWireFormats:
    def test_hex_round_trip(self, mock_suite, rng):
        pk, sk = pks.keygen(mock_suite, "lw", rng)
        blob = env.encode_signature(pks.sign("lw", b"m", sk, pk, rng))
        wire = env.to_wire(blob, "hex")
        assert wire.endswith(b"\n") and wire[:-1] == blob.hex().encode()
        assert env.from_wire(wire) == blob

    def test_bin_passthrough(self, mock_suite, rng):
        pk, _ = pks.keygen(mock_suite, "pks2", rng)
        blob = env.encode_public_key(pk)
        assert env.to_wire(blob, "bin") == blob
        assert env.from_wire(blob) == blob

    def test_garbage_rejected(self):
        with pytest.raises(MalformedEncodingError):
            env.from_wire(b"\xff\xfenot an envelope")

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            env.to_wire(b"AKEY", "json")
