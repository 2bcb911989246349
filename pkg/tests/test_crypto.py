"""Primitives: known-answer conformance, roundtrips, tamper totality, KDF."""

import hashlib
import os

import pytest
from hypothesis import given, settings, strategies as st

from jfss.crypto import (
    KdfParams,
    aead_open,
    aead_seal,
    generate_key,
    generate_nonce,
    generate_salt,
    kdf_hash,
)
from jfss.errors import EmptyPassword, IntegrityError, MalformedInput

from gcm_reference import gcm_seal_reference, pbkdf2_sha256_reference

# AES-256-GCM known-answer vectors, 96-bit IVs. The first four are the
# classic vectors from the GCM submission to NIST; the last two are from
# the CAVP GCM validation set (gcmEncryptExtIV256, 96-bit IV groups).
# Each entry: (key, nonce, aad, plaintext, ciphertext || tag), hex.
GCM_KAT = [
    (
        "00" * 32,
        "00" * 12,
        "",
        "",
        "530f8afbc74536b9a963b4f1c4cb738b",
    ),
    (
        "00" * 32,
        "00" * 12,
        "",
        "00" * 16,
        "cea7403d4d606b6e074ec5d3baf39d18d0d1c8a799996bf0265b98b5d48ab919",
    ),
    (
        "feffe9928665731c6d6a8f9467308308feffe9928665731c6d6a8f9467308308",
        "cafebabefacedbaddecaf888",
        "",
        "d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a72"
        "1c3c0c95956809532fcf0e2449a6b525b16aedf5aa0de657ba637b391aafd255",
        "522dc1f099567d07f47f37a32a84427d643a8cdcbfe5c0c97598a2bd2555d1aa"
        "8cb08e48590dbb3da7b08b1056828838c5f61e6393ba7a0abcc9f662898015ad"
        "b094dac5d93471bdec1a502270e3cc6c",
    ),
    (
        "feffe9928665731c6d6a8f9467308308feffe9928665731c6d6a8f9467308308",
        "cafebabefacedbaddecaf888",
        "feedfacedeadbeeffeedfacedeadbeefabaddad2",
        "d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a72"
        "1c3c0c95956809532fcf0e2449a6b525b16aedf5aa0de657ba637b39",
        "522dc1f099567d07f47f37a32a84427d643a8cdcbfe5c0c97598a2bd2555d1aa"
        "8cb08e48590dbb3da7b08b1056828838c5f61e6393ba7a0abcc9f662"
        "76fc6ece0f4e1768cddf8853bb2d551b",
    ),
    (
        "b52c505a37d78eda5dd34f20c22540ea1b58963cf8e5bf8ffa85f9f2492505b4",
        "516c33929df5a3284ff463d7",
        "",
        "",
        "bdc1ac884d332457a1d2664f168c76f0",
    ),
    (
        "31bdadd96698c204aa9ce1448ea94ae1fb4a9a0b3c9d773b51bb1822666b8f22",
        "0d18e06c7c725ac9e362e1ce",
        "",
        "2db5168e932556f8089a0622981d017d",
        "fa4362189661d163fcd6a56d8bf0405ad636ac1bbedd5cc3ee727dc2ab4a9489",
    ),
]


@pytest.mark.parametrize("key,nonce,aad,pt,expected", GCM_KAT)
def test_seal_matches_published_vectors(key, nonce, aad, pt, expected):
    sealed = aead_seal(
        bytes.fromhex(key), bytes.fromhex(nonce), bytes.fromhex(aad), bytes.fromhex(pt)
    )
    assert sealed == bytes.fromhex(expected)


@pytest.mark.parametrize("key,nonce,aad,pt,expected", GCM_KAT)
def test_open_accepts_published_vectors(key, nonce, aad, pt, expected):
    opened = aead_open(
        bytes.fromhex(key),
        bytes.fromhex(nonce),
        bytes.fromhex(aad),
        bytes.fromhex(expected),
    )
    assert opened == bytes.fromhex(pt)


@settings(max_examples=25, deadline=None)
@given(
    key=st.binary(min_size=32, max_size=32),
    nonce=st.binary(min_size=12, max_size=12),
    aad=st.binary(max_size=64),
    pt=st.binary(max_size=512),
)
def test_seal_agrees_with_reference_implementation(key, nonce, aad, pt):
    assert aead_seal(key, nonce, aad, pt) == gcm_seal_reference(key, nonce, aad, pt)


def test_generate_key_fresh_and_sized():
    assert generate_key() != generate_key()
    keys = {generate_key() for _ in range(1000)}
    assert len(keys) == 1000
    assert all(len(k) == 32 for k in keys)


def test_generate_nonce_fresh_and_sized():
    nonces = {generate_nonce() for _ in range(1000)}
    assert len(nonces) == 1000
    assert all(len(n) == 12 for n in nonces)


def test_seal_deterministic_and_length():
    key, nonce = generate_key(), generate_nonce()
    a = aead_seal(key, nonce, b"hdr", b"payload")
    b = aead_seal(key, nonce, b"hdr", b"payload")
    assert a == b
    assert len(a) == len(b"payload") + 16


def test_different_nonce_different_ciphertext():
    key = generate_key()
    a = aead_seal(key, b"\x00" * 12, b"", b"same plaintext")
    b = aead_seal(key, b"\x01" + b"\x00" * 11, b"", b"same plaintext")
    assert a != b


@settings(max_examples=50, deadline=None)
@given(aad=st.binary(max_size=128), pt=st.binary(max_size=4096))
def test_roundtrip_property(aad, pt):
    key, nonce = generate_key(), generate_nonce()
    assert aead_open(key, nonce, aad, aead_seal(key, nonce, aad, pt)) == pt


@pytest.mark.parametrize("size", [0, 1, 15, 16, 17, 1000, 65536, 1024 * 1024])
def test_roundtrip_sizes(size):
    key, nonce = generate_key(), generate_nonce()
    pt = os.urandom(size)
    assert aead_open(key, nonce, b"x", aead_seal(key, nonce, b"x", pt)) == pt


def test_tamper_totality_exhaustive_small():
    # every single-bit flip of the sealed output must be rejected
    key, nonce = generate_key(), generate_nonce()
    sealed = aead_seal(key, nonce, b"aad", b"p" * 64)
    for bit in range(len(sealed) * 8):
        mutated = bytearray(sealed)
        mutated[bit // 8] ^= 1 << (bit % 8)
        with pytest.raises(IntegrityError):
            aead_open(key, nonce, b"aad", bytes(mutated))


def test_tamper_totality_sampled_large():
    key, nonce = generate_key(), generate_nonce()
    sealed = aead_seal(key, nonce, b"", os.urandom(128 * 1024))
    rng = __import__("random").Random(7)
    for bit in rng.sample(range(len(sealed) * 8), 1000):
        mutated = bytearray(sealed)
        mutated[bit // 8] ^= 1 << (bit % 8)
        with pytest.raises(IntegrityError):
            aead_open(key, nonce, b"", bytes(mutated))


def test_aad_is_authenticated():
    key, nonce = generate_key(), generate_nonce()
    sealed = aead_seal(key, nonce, b"header-bytes", b"payload")
    with pytest.raises(IntegrityError):
        aead_open(key, nonce, b"header-bytez", sealed)


def test_key_separation_sampled():
    nonce = generate_nonce()
    sealed = aead_seal(generate_key(), nonce, b"", b"secret")
    for _ in range(50):
        with pytest.raises(IntegrityError):
            aead_open(generate_key(), nonce, b"", sealed)


def test_open_rejects_short_input():
    with pytest.raises(MalformedInput):
        aead_open(generate_key(), generate_nonce(), b"", b"\x00" * 15)


@pytest.mark.parametrize("bad_key", [b"", b"\x00" * 16, b"\x00" * 33])
def test_bad_key_length_rejected(bad_key):
    with pytest.raises(ValueError):
        aead_seal(bad_key, b"\x00" * 12, b"", b"")


@pytest.mark.parametrize("bad_nonce", [b"", b"\x00" * 11, b"\x00" * 16])
def test_bad_nonce_length_rejected(bad_nonce):
    with pytest.raises(ValueError):
        aead_seal(b"\x00" * 32, bad_nonce, b"", b"")


# -- password hashing ----------------------------------------------------------


def test_kdf_deterministic():
    params = KdfParams(salt=b"\x01" * 16, iterations=100_000)
    assert kdf_hash("hunter22", params) == kdf_hash("hunter22", params)


def test_kdf_salt_separation():
    a = kdf_hash("hunter22", KdfParams(salt=b"\x01" * 16))
    b = kdf_hash("hunter22", KdfParams(salt=b"\x02" * 16))
    assert a != b


def test_kdf_matches_pure_python_reference():
    salt = bytes.fromhex("000102030405060708090a0b0c0d0e0f")
    params = KdfParams(salt=salt, iterations=100_000)
    expected = pbkdf2_sha256_reference(b"correct horse", salt, 100_000, 32)
    assert kdf_hash("correct horse", params) == expected


@pytest.mark.parametrize("password,iters", [("p4ssword", 100_000), ("émojis🎉ok", 150_000)])
def test_kdf_matches_stdlib(password, iters):
    salt = generate_salt()
    expected = hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, iters, 32)
    assert kdf_hash(password, KdfParams(salt=salt, iterations=iters)) == expected


def test_kdf_rejects_empty_password():
    with pytest.raises(EmptyPassword):
        kdf_hash("", KdfParams(salt=b"\x00" * 16))


@pytest.mark.parametrize(
    "salt,iters,out_len",
    [
        (b"\x00" * 15, 100_000, 32),
        (b"\x00" * 17, 100_000, 32),
        (b"\x00" * 16, 99_999, 32),
        (b"\x00" * 16, 0, 32),
        (b"\x00" * 16, 100_000, 16),
    ],
)
def test_kdf_params_validation(salt, iters, out_len):
    with pytest.raises(ValueError):
        KdfParams(salt=salt, iterations=iters, output_len=out_len)


def test_salt_generation():
    salts = {generate_salt() for _ in range(100)}
    assert len(salts) == 100
    assert all(len(s) == 16 for s in salts)
