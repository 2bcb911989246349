"""Bit-exact serialization of encrypted containers and detached key files.

Container (.jfss), big-endian throughout:

    offset  size  field
    0       4     magic "JFSS"
    4       2     version = 1
    6       1     cipher id = 0x01 (AES-256-GCM)
    7       16    file id (UUID)
    23      12    AEAD nonce
    35      2     name_len (<= 4096)
    37      n     original file name, UTF-8, no path separators
    37+n    8     original plaintext length
    45+n    ...   sealed payload (ciphertext || 16-byte tag)

The header bytes double as the AEAD associated data, so any header
mutation fails tag verification even when it still parses.

Key file (.jfsk), exactly 54 bytes:

    0       4     magic "JFSK"
    4       2     version = 1
    6       16    file id (UUID, binds key to one container)
    22      32    raw key
"""

import struct
import uuid
from dataclasses import dataclass

from .crypto import KEY_LEN, NONCE_LEN, TAG_LEN
from .errors import (
    BadCipher,
    BadLength,
    BadMagic,
    BadName,
    BadVersion,
    InvalidHeader,
    InvalidRecord,
    Truncated,
)

CONTAINER_MAGIC = b"JFSS"
KEYFILE_MAGIC = b"JFSK"
FORMAT_VERSION = 1
CIPHER_AES256_GCM = 0x01
MAX_NAME_LEN = 4096

CONTAINER_EXT = ".jfss"
KEYFILE_EXT = ".jfsk"

_FIXED = struct.Struct(">4sHB16s12sH")  # magic, version, cipher, uuid, nonce, name_len
_ORIG_LEN = struct.Struct(">Q")
_KEYFILE = struct.Struct(">4sH16s32s")
KEYFILE_SIZE = _KEYFILE.size  # 54

_FORBIDDEN_NAME_CHARS = ("/", "\\", "\x00")


@dataclass(frozen=True)
class ContainerHeader:
    file_id: uuid.UUID
    nonce: bytes
    original_name: str
    original_len: int


@dataclass(frozen=True)
class KeyFileRecord:
    file_id: uuid.UUID
    key: bytes


def _name_problem(name: str) -> str | None:
    if any(c in name for c in _FORBIDDEN_NAME_CHARS):
        return "name contains a path separator or NUL"
    try:
        encoded = name.encode("utf-8")
    except UnicodeEncodeError:
        return "name is not encodable as UTF-8"
    if len(encoded) > MAX_NAME_LEN:
        return f"encoded name exceeds {MAX_NAME_LEN} bytes"
    return None


def encode_header(header: ContainerHeader) -> bytes:
    """Serialize a header; these exact bytes are the AEAD associated data.

    Raises:
        InvalidHeader: a field violates the format invariants.
    """
    if len(header.nonce) != NONCE_LEN:
        raise InvalidHeader(f"nonce must be {NONCE_LEN} bytes")
    problem = _name_problem(header.original_name)
    if problem is not None:
        raise InvalidHeader(problem)
    if not 0 <= header.original_len < 2**64:
        raise InvalidHeader("original_len out of range for u64")
    name = header.original_name.encode("utf-8")
    fixed = _FIXED.pack(
        CONTAINER_MAGIC,
        FORMAT_VERSION,
        CIPHER_AES256_GCM,
        header.file_id.bytes,
        header.nonce,
        len(name),
    )
    return fixed + name + _ORIG_LEN.pack(header.original_len)


def encode_container(header: ContainerHeader, sealed: bytes) -> bytes:
    """Serialize header followed by the sealed payload."""
    if len(sealed) < TAG_LEN:
        raise InvalidHeader(f"sealed payload shorter than {TAG_LEN}-byte tag")
    return encode_header(header) + sealed


def decode_container(data: bytes) -> tuple[ContainerHeader, bytes]:
    """Parse container bytes into (header, sealed payload).

    Total over arbitrary input: returns a value or raises a FormatError
    subclass, never anything else.
    """
    if len(data) < len(CONTAINER_MAGIC):
        raise Truncated("shorter than the magic prefix")
    if data[:4] != CONTAINER_MAGIC:
        raise BadMagic("not a container (magic mismatch)")
    if len(data) < _FIXED.size:
        raise Truncated("ends inside the fixed header")
    magic, version, cipher, fid, nonce, name_len = _FIXED.unpack_from(data)
    if version != FORMAT_VERSION:
        raise BadVersion(f"unsupported container version {version}")
    if cipher != CIPHER_AES256_GCM:
        raise BadCipher(f"unknown cipher id {cipher:#04x}")
    if name_len > MAX_NAME_LEN:
        raise BadName(f"name_len {name_len} exceeds {MAX_NAME_LEN}")
    header_len = _FIXED.size + name_len + _ORIG_LEN.size
    if len(data) < header_len:
        raise Truncated("ends inside the name or length fields")
    try:
        name = data[_FIXED.size : _FIXED.size + name_len].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise BadName("stored name is not valid UTF-8") from exc
    if any(c in name for c in _FORBIDDEN_NAME_CHARS):
        raise BadName("stored name contains a path separator or NUL")
    (original_len,) = _ORIG_LEN.unpack_from(data, _FIXED.size + name_len)
    sealed = data[header_len:]
    if len(sealed) < TAG_LEN:
        raise Truncated(f"sealed payload shorter than {TAG_LEN}-byte tag")
    header = ContainerHeader(
        file_id=uuid.UUID(bytes=fid),
        nonce=nonce,
        original_name=name,
        original_len=original_len,
    )
    return header, sealed


def encode_keyfile(rec: KeyFileRecord) -> bytes:
    """Serialize a key record to its fixed 54-byte layout.

    Raises:
        InvalidRecord: key has the wrong length.
    """
    if len(rec.key) != KEY_LEN:
        raise InvalidRecord(f"key must be {KEY_LEN} bytes")
    return _KEYFILE.pack(KEYFILE_MAGIC, FORMAT_VERSION, rec.file_id.bytes, rec.key)


def decode_keyfile(data: bytes) -> KeyFileRecord:
    """Parse key file bytes; total over arbitrary input like decode_container."""
    if len(data) < len(KEYFILE_MAGIC):
        raise BadLength("shorter than the magic prefix")
    if data[:4] != KEYFILE_MAGIC:
        raise BadMagic("not a key file (magic mismatch)")
    if len(data) != KEYFILE_SIZE:
        raise BadLength(f"key file must be exactly {KEYFILE_SIZE} bytes, got {len(data)}")
    magic, version, fid, key = _KEYFILE.unpack(data)
    if version != FORMAT_VERSION:
        raise BadVersion(f"unsupported key file version {version}")
    return KeyFileRecord(file_id=uuid.UUID(bytes=fid), key=key)
