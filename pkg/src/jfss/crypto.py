"""Cryptographic primitives: key/nonce generation, AEAD, password hashing.

Cipher suite is fixed: AES-256-GCM with a 96-bit random nonce and a
16-byte tag. Every file gets its own key, so a key never seals more than
one message and random nonces cannot collide within a key. Passwords are
hashed with PBKDF2-HMAC-SHA-256.

All functions are pure (given the OS randomness source) and safe to call
concurrently.
"""

import os
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.hashes import SHA256
from cryptography.hazmat.primitives.kdf.pbkdf2 import PBKDF2HMAC

from .errors import (
    EmptyPassword,
    IntegrityError,
    MalformedInput,
    RandomnessUnavailable,
)

KEY_LEN = 32
NONCE_LEN = 12
TAG_LEN = 16
SALT_LEN = 16
KDF_OUTPUT_LEN = 32
MIN_KDF_ITERATIONS = 100_000


@dataclass(frozen=True)
class KdfParams:
    """Per-user password hashing parameters.

    salt must be unique per user; iterations has a hard floor so a
    mis-configured caller cannot silently weaken the store.
    """

    salt: bytes
    iterations: int = MIN_KDF_ITERATIONS
    output_len: int = KDF_OUTPUT_LEN

    def __post_init__(self) -> None:
        if len(self.salt) != SALT_LEN:
            raise ValueError(f"salt must be {SALT_LEN} bytes, got {len(self.salt)}")
        if self.iterations < MIN_KDF_ITERATIONS:
            raise ValueError(f"iterations must be >= {MIN_KDF_ITERATIONS}")
        if self.output_len != KDF_OUTPUT_LEN:
            raise ValueError(f"output_len is fixed at {KDF_OUTPUT_LEN}")


def _random_bytes(n: int) -> bytes:
    try:
        return os.urandom(n)
    except OSError as exc:
        raise RandomnessUnavailable("OS entropy source failed") from exc


def generate_key() -> bytes:
    """Return a fresh 32-byte key from the OS CSPRNG."""
    return _random_bytes(KEY_LEN)


def generate_nonce() -> bytes:
    """Return a fresh 12-byte nonce from the OS CSPRNG."""
    return _random_bytes(NONCE_LEN)


def generate_salt() -> bytes:
    """Return a fresh 16-byte KDF salt from the OS CSPRNG."""
    return _random_bytes(SALT_LEN)


def _check_key(key: bytes) -> None:
    if len(key) != KEY_LEN:
        raise ValueError(f"key must be {KEY_LEN} bytes, got {len(key)}")


def _check_nonce(nonce: bytes) -> None:
    if len(nonce) != NONCE_LEN:
        raise ValueError(f"nonce must be {NONCE_LEN} bytes, got {len(nonce)}")


def aead_seal(key: bytes, nonce: bytes, aad: bytes, plaintext: bytes) -> bytes:
    """Encrypt and authenticate plaintext, binding aad into the tag.

    Returns ciphertext with the 16-byte tag appended; output length is
    always len(plaintext) + 16. Deterministic for fixed inputs.
    """
    _check_key(key)
    _check_nonce(nonce)
    return AESGCM(key).encrypt(nonce, plaintext, aad)


def aead_open(key: bytes, nonce: bytes, aad: bytes, sealed: bytes) -> bytes:
    """Verify and decrypt output of aead_seal.

    Raises:
        MalformedInput: sealed is shorter than the tag itself.
        IntegrityError: tag verification failed (tampering or wrong key).
    """
    _check_key(key)
    _check_nonce(nonce)
    if len(sealed) < TAG_LEN:
        raise MalformedInput(f"sealed input shorter than {TAG_LEN}-byte tag")
    try:
        return AESGCM(key).decrypt(nonce, sealed, aad)
    except InvalidTag as exc:
        raise IntegrityError("authentication tag mismatch") from exc


def kdf_hash(password: str, params: KdfParams) -> bytes:
    """Hash a password with PBKDF2-HMAC-SHA-256 under the given parameters.

    Raises:
        EmptyPassword: password is the empty string.
    """
    if not password:
        raise EmptyPassword("password must not be empty")
    kdf = PBKDF2HMAC(
        algorithm=SHA256(),
        length=params.output_len,
        salt=params.salt,
        iterations=params.iterations,
    )
    return kdf.derive(password.encode("utf-8"))
