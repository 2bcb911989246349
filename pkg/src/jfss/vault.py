"""End-to-end workflows: encrypt in place, decrypt, verify, protect.

Encryption is transactional at file granularity. The commit sequence is

    1. write container (atomic)
    2. store detached key (atomic, never in the container's directory)
    3. mark container read-only
    4. remove the plaintext source

and any failure rolls back the steps already done, so an interrupted run
leaves either the intact source or a complete container+key pair, never
neither. Decryption never deletes the container and never overwrites an
existing file.
"""

import enum
import os
import stat
import uuid
from dataclasses import dataclass
from pathlib import Path

from ._fs import atomic_write_bytes, atomic_write_bytes_noclobber
from .container import (
    CONTAINER_EXT,
    ContainerHeader,
    KeyFileRecord,
    decode_container,
    encode_header,
)
from .crypto import aead_open, aead_seal, generate_key, generate_nonce
from .errors import (
    AlreadyEncrypted,
    BadName,
    FormatError,
    IntegrityError,
    KeyMismatch,
    NameCollision,
    NotAuthenticated,
    SourceMissing,
    Truncated,
)
from .auth import Session
from .keystore import KeystoreConfig, locate_key, store_key


@dataclass(frozen=True)
class EncryptOutcome:
    container_path: Path
    key_path: Path
    file_id: uuid.UUID


class VerifyStatus(enum.Enum):
    INTACT = "intact"
    TAMPERED = "tampered"
    KEY_MISMATCH = "key_mismatch"


@dataclass(frozen=True)
class VerifyOutcome:
    status: VerifyStatus
    detail: str = ""


def _require_session(session: Session | None) -> None:
    if not isinstance(session, Session):
        raise NotAuthenticated("operation requires a logged-in session")


def _write_container(path: Path, data: bytes) -> None:
    atomic_write_bytes(path, data)


def _remove_source(path: Path) -> None:
    os.unlink(path)


def protect_file(container: Path) -> None:
    """Clear all write bits so ordinary write-opens and deletes are refused.

    Best-effort OS metadata, idempotent; the cryptographic tamper
    evidence does not depend on it.
    """
    container = Path(container)
    mode = container.stat().st_mode
    os.chmod(container, mode & ~(stat.S_IWUSR | stat.S_IWGRP | stat.S_IWOTH))


def unprotect_file(container: Path) -> None:
    """Restore the owner write bit (inverse of protect_file)."""
    container = Path(container)
    mode = container.stat().st_mode
    os.chmod(container, mode | stat.S_IWUSR)


def encrypt_file(
    session: Session | None,
    source: Path,
    cfg: KeystoreConfig,
    key_dest: Path | None = None,
) -> EncryptOutcome:
    """Encrypt one file in place: container beside the source, key detached.

    A fresh key, nonce and file id are generated; the header carries the
    original name and size and is sealed in as associated data. The
    source is removed only after the container and key are both durably
    written.

    Raises:
        NotAuthenticated, SourceMissing, AlreadyEncrypted, NameCollision,
        NoDestination; OSError on I/O failure. The source is preserved on
        any failure.
    """
    _require_session(session)
    source = Path(source)
    if not source.is_file():
        raise SourceMissing(f"{source} is not a regular file")
    if source.name.endswith(CONTAINER_EXT):
        raise AlreadyEncrypted(f"{source} is already a container")

    plaintext = source.read_bytes()
    key = generate_key()
    nonce = generate_nonce()
    file_id = uuid.uuid4()
    header = ContainerHeader(
        file_id=file_id,
        nonce=nonce,
        original_name=source.name,
        original_len=len(plaintext),
    )
    header_bytes = encode_header(header)
    sealed = aead_seal(key, nonce, header_bytes, plaintext)

    container_path = source.parent / (source.name + CONTAINER_EXT)
    if container_path.exists():
        raise NameCollision(f"{container_path} already exists")

    container_written = False
    key_path: Path | None = None
    try:
        _write_container(container_path, header_bytes + sealed)
        container_written = True
        key_path = store_key(
            cfg,
            KeyFileRecord(file_id=file_id, key=key),
            explicit_dest=key_dest,
            avoid_dir=container_path.parent,
        )
        protect_file(container_path)
        _remove_source(source)
    except BaseException:
        _rollback(container_path if container_written else None, key_path)
        raise
    return EncryptOutcome(container_path, key_path, file_id)


def _rollback(container_path: Path | None, key_path: Path | None) -> None:
    # Best effort: restore the pre-call state so the intact source is the
    # only artifact left behind.
    if key_path is not None:
        try:
            os.unlink(key_path)
        except OSError:
            pass
    if container_path is not None:
        try:
            unprotect_file(container_path)
        except OSError:
            pass
        try:
            os.unlink(container_path)
        except OSError:
            pass


def decrypt_file(
    session: Session | None,
    container: Path,
    cfg: KeystoreConfig,
    key: Path | None = None,
    out_dir: Path | None = None,
) -> Path:
    """Restore a container's plaintext under its original name.

    The key is taken from the explicit path when given, otherwise located
    on the card or fallback by file id. The container stays in place.

    Raises:
        NotAuthenticated, FormatError, KeyNotFound, KeyMismatch,
        IntegrityError (tampered container or wrong key), NameCollision.
    """
    _require_session(session)
    container = Path(container)
    data = container.read_bytes()
    header, sealed = decode_container(data)
    aad = data[: len(data) - len(sealed)]

    rec = locate_key(cfg, header.file_id, explicit_key=key)
    plaintext = aead_open(rec.key, header.nonce, aad, sealed)
    if len(plaintext) != header.original_len:
        raise Truncated("payload length disagrees with the header")

    if not header.original_name or header.original_name in (".", ".."):
        raise BadName(f"container stores unusable name {header.original_name!r}")
    directory = Path(out_dir) if out_dir is not None else container.parent
    directory.mkdir(parents=True, exist_ok=True)
    restored = directory / header.original_name
    try:
        atomic_write_bytes_noclobber(restored, plaintext)
    except FileExistsError as exc:
        raise NameCollision(f"{restored} already exists; not overwriting") from exc
    return restored


def verify_file(
    container: Path,
    cfg: KeystoreConfig,
    key: Path | None = None,
) -> VerifyOutcome:
    """Check a container's integrity without writing anything.

    A container that no longer parses is reported as tampered, the same
    as a failed tag check; a syntactically valid key file bound to a
    different file id is a key mismatch.

    Raises:
        KeyNotFound: no key to check against.
        FormatError: the explicit key file itself does not parse.
    """
    data = Path(container).read_bytes()
    try:
        header, sealed = decode_container(data)
    except FormatError as exc:
        return VerifyOutcome(VerifyStatus.TAMPERED, f"container unparseable: {exc}")
    aad = data[: len(data) - len(sealed)]
    try:
        rec = locate_key(cfg, header.file_id, explicit_key=key)
    except KeyMismatch as exc:
        return VerifyOutcome(VerifyStatus.KEY_MISMATCH, str(exc))
    try:
        aead_open(rec.key, header.nonce, aad, sealed)
    except IntegrityError as exc:
        return VerifyOutcome(VerifyStatus.TAMPERED, str(exc))
    return VerifyOutcome(VerifyStatus.INTACT)
