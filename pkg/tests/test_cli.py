"""CLI: full pipelines, exit codes, and deterministic seeding."""

import pytest

from seqsig.cli import main

BACKEND = "mock:10007"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    fields = {}
    for line in out:
        for tok in line.split():
            k, _, v = tok.partition("=")
            fields.setdefault(k, []).append(v)
    return code, fields


def det(*argv, seed=7):
    return (*argv, "--backend", BACKEND, "--test-mode", "--seed", str(seed))


class TestSingleSigner:
    @pytest.fixture
    def keypair(self, tmp_path, capsys):
        pub, priv = tmp_path / "pk.bin", tmp_path / "sk.bin"
        code, _ = run(capsys, *det("keygen", "--scheme", "pks2",
                                   "--pub-out", str(pub), "--priv-out", str(priv)))
        assert code == 0
        return pub, priv

    def test_sign_then_verify(self, keypair, tmp_path, capsys):
        pub, priv = keypair
        sig = tmp_path / "sig.bin"
        code, _ = run(capsys, *det("sign", "--scheme", "pks2", "--pub", str(pub),
                                   "--priv", str(priv), "--out", str(sig),
                                   "--message", "hello"))
        assert code == 0
        code, fields = run(capsys, *det("verify", "--scheme", "pks2", "--pub", str(pub),
                                        "--sig", str(sig), "--message", "hello"))
        assert code == 0 and fields["result"] == ["valid"]

    def test_wrong_message_exits_one(self, keypair, tmp_path, capsys):
        pub, priv = keypair
        sig = tmp_path / "sig.bin"
        run(capsys, *det("sign", "--scheme", "pks2", "--pub", str(pub),
                         "--priv", str(priv), "--out", str(sig), "--message", "hello"))
        code, fields = run(capsys, *det("verify", "--scheme", "pks2", "--pub", str(pub),
                                        "--sig", str(sig), "--message", "goodbye"))
        assert code == 1 and fields["result"] == ["invalid"]

    def test_corrupt_file_exits_two(self, keypair, tmp_path, capsys):
        pub, _ = keypair
        bad = tmp_path / "bad.bin"
        bad.write_bytes(b"APKS" + b"\x00" * 3)
        code, fields = run(capsys, *det("verify", "--scheme", "pks2", "--pub", str(pub),
                                        "--sig", str(bad), "--message", "hello"))
        assert code == 2 and fields["result"] == ["malformed"]

    def test_missing_file_exits_two(self, keypair, tmp_path, capsys):
        pub, _ = keypair
        code, _ = run(capsys, *det("verify", "--scheme", "pks2", "--pub", str(pub),
                                   "--sig", str(tmp_path / "nope.bin"),
                                   "--message", "hello"))
        assert code == 2

    def test_seed_requires_test_mode(self, tmp_path, capsys):
        code, _ = run(capsys, "keygen", "--scheme", "pks2",
                      "--pub-out", str(tmp_path / "a"), "--priv-out", str(tmp_path / "b"),
                      "--backend", BACKEND, "--seed", "7")
        assert code == 2

    def test_seeded_runs_are_byte_identical(self, tmp_path, capsys):
        outs = []
        for tag in ("x", "y"):
            pub = tmp_path / f"pk-{tag}.bin"
            priv = tmp_path / f"sk-{tag}.bin"
            run(capsys, *det("keygen", "--scheme", "lw",
                             "--pub-out", str(pub), "--priv-out", str(priv)))
            outs.append((pub.read_bytes(), priv.read_bytes()))
        assert outs[0] == outs[1]

    def test_hex_format(self, tmp_path, capsys):
        pub, priv = tmp_path / "pk.hex", tmp_path / "sk.hex"
        code, _ = run(capsys, *det("keygen", "--scheme", "pks1", "--format", "hex",
                                   "--pub-out", str(pub), "--priv-out", str(priv)))
        assert code == 0
        text = pub.read_bytes()
        assert text.endswith(b"\n")
        bytes.fromhex(text.decode())  # must be valid hex
        sig = tmp_path / "sig.hex"
        run(capsys, *det("sign", "--scheme", "pks1", "--pub", str(pub),
                         "--priv", str(priv), "--out", str(sig),
                         "--message", "m", "--format", "hex"))
        code, fields = run(capsys, *det("verify", "--scheme", "pks1", "--pub", str(pub),
                                        "--sig", str(sig), "--message", "m"))
        assert code == 0 and fields["result"] == ["valid"]


class TestAggregatePipeline:
    @pytest.fixture
    def setup(self, tmp_path, capsys):
        params = tmp_path / "params.bin"
        run(capsys, *det("setup", "--scheme", "sas2", "--out", str(params)))
        signers = []
        for i in range(3):
            pub, priv = tmp_path / f"pk{i}.bin", tmp_path / f"sk{i}.bin"
            run(capsys, *det("keygen", "--scheme", "sas2", "--params", str(params),
                             "--pub-out", str(pub), "--priv-out", str(priv),
                             seed=100 + i))
            signers.append((pub, priv))
        return params, signers

    def _build_chain(self, tmp_path, capsys, params, signers, registry=None):
        prev = None
        keys = []
        for i, (pub, priv) in enumerate(signers):
            out = tmp_path / f"agg{i}.bin"
            argv = ["agg-sign", "--scheme", "sas2", "--params", str(params),
                    "--pub", str(pub), "--priv", str(priv), "--out", str(out),
                    "--message", f"m{i}", "--keys", *map(str, keys)]
            if prev is not None:
                argv += ["--prev", str(prev)]
            if registry is not None:
                argv += ["--registry", str(registry)]
            code, fields = run(capsys, *det(*argv))
            assert code == 0 and fields["l"] == [str(i + 1)]
            prev = out
            keys.append(pub)
        return prev, keys

    def test_chain_and_verify(self, setup, tmp_path, capsys):
        params, signers = setup
        agg, keys = self._build_chain(tmp_path, capsys, params, signers)
        code, fields = run(capsys, *det("agg-verify", "--scheme", "sas2",
                                        "--params", str(params), "--agg", str(agg),
                                        "--keys", *map(str, keys)))
        assert code == 0 and fields["result"] == ["valid"]
        assert fields["pairings"] == ["6"]

    def test_tampered_aggregate_exits_one(self, setup, tmp_path, capsys):
        params, signers = setup
        agg, keys = self._build_chain(tmp_path, capsys, params, signers)
        blob = bytearray(agg.read_bytes())
        blob[-1] = (blob[-1] + 1) % 10007 % 256  # perturb the last element byte
        tampered = tmp_path / "tampered.bin"
        tampered.write_bytes(bytes(blob))
        code, fields = run(capsys, *det("agg-verify", "--scheme", "sas2",
                                        "--params", str(params), "--agg", str(tampered),
                                        "--keys", *map(str, keys)))
        assert code in (1, 2)  # invalid, or malformed if the byte left the group
        assert fields["result"] != ["valid"]

    def test_registry_gates_verification(self, setup, tmp_path, capsys):
        params, signers = setup
        registry = tmp_path / "registry.bin"
        # certify only the first two signers
        for pub, priv in signers[:2]:
            code, _ = run(capsys, *det("register", "--params", str(params),
                                       "--pub", str(pub), "--priv", str(priv),
                                       "--registry", str(registry)))
            assert code == 0
        agg, keys = self._build_chain(tmp_path, capsys, params, signers[:2],
                                      registry=registry)
        # append an uncertified signer without the registry, then verify with it
        pub3, priv3 = signers[2]
        out = tmp_path / "agg-uncert.bin"
        code, _ = run(capsys, *det("agg-sign", "--scheme", "sas2",
                                   "--params", str(params), "--prev", str(agg),
                                   "--keys", *map(str, keys), "--pub", str(pub3),
                                   "--priv", str(priv3), "--out", str(out),
                                   "--message", "m2"))
        assert code == 0
        code, fields = run(capsys, *det("agg-verify", "--scheme", "sas2",
                                        "--params", str(params), "--agg", str(out),
                                        "--keys", *map(str, keys + [pub3]),
                                        "--registry", str(registry)))
        assert code == 1
        assert fields["reason"] == ["uncertified"]

    def test_registry_env_variable(self, setup, tmp_path, capsys, monkeypatch):
        params, signers = setup
        registry = tmp_path / "registry-env.bin"
        monkeypatch.setenv("SEQSIG_REGISTRY", str(registry))
        pub, priv = signers[0]
        code, _ = run(capsys, *det("register", "--params", str(params),
                                   "--pub", str(pub), "--priv", str(priv)))
        assert code == 0 and registry.exists()


class TestMultisigPipeline:
    def test_sign_combine_verify(self, tmp_path, capsys):
        params = tmp_path / "params.bin"
        run(capsys, *det("setup", "--scheme", "ms", "--out", str(params)))
        pubs, sigs = [], []
        for i in range(2):
            pub, priv = tmp_path / f"pk{i}.bin", tmp_path / f"sk{i}.bin"
            run(capsys, *det("keygen", "--scheme", "ms", "--params", str(params),
                             "--pub-out", str(pub), "--priv-out", str(priv),
                             seed=100 + i))
            sig = tmp_path / f"sig{i}.bin"
            code, _ = run(capsys, *det("ms-sign", "--params", str(params),
                                       "--pub", str(pub), "--priv", str(priv),
                                       "--out", str(sig), "--message", "joint"))
            assert code == 0
            pubs.append(pub)
            sigs.append(sig)
        combined = tmp_path / "combined.bin"
        code, _ = run(capsys, *det("ms-combine", "--params", str(params),
                                   "--sigs", *map(str, sigs), "--pubs", *map(str, pubs),
                                   "--out", str(combined), "--message", "joint"))
        assert code == 0
        code, fields = run(capsys, *det("ms-verify", "--params", str(params),
                                        "--msig", str(combined),
                                        "--pubs", *map(str, pubs),
                                        "--message", "joint"))
        assert code == 0 and fields["result"] == ["valid"]
        code, fields = run(capsys, *det("ms-verify", "--params", str(params),
                                        "--msig", str(combined),
                                        "--pubs", *map(str, pubs),
                                        "--message", "different"))
        assert code == 1


class TestReports:
    def test_bench_pairings_flat(self, capsys):
        code, fields = run(capsys, *det("bench", "--scheme", "sas2",
                                        "--lengths", "1,3,5", "--trials", "1"))
        assert code == 0
        assert fields["pairings_flat_in_l"] == ["true"]
        assert set(fields["pairings"]) == {"6"}

    def test_demo_chain_ratio(self, capsys):
        code, fields = run(capsys, *det("demo-chain", "--scheme", "sas2",
                                        "--depth", "5"))
        assert code == 0
        assert fields["result"] == ["valid"]
        assert fields["ratio"] == ["0.200"]

    def test_unknown_backend_exits_two(self, capsys, tmp_path):
        code, _ = run(capsys, "setup", "--scheme", "ms", "--out",
                      str(tmp_path / "p.bin"), "--backend", "quantum")
        assert code == 2
