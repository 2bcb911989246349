"""Admin-provisioned user registry and login.

Credential store layout (users.jfsu, big-endian):

    magic "JFSU" | version u16 = 1 | record count u32
    per record: name_len u16 | name UTF-8 | role u8 (0x01 admin, 0x02 user)
                | salt 16 | iterations u32 | hash 32

Passwords are never persisted; only their PBKDF2 hashes are. Unknown
user and wrong password raise the same AuthFailure so accounts cannot
be enumerated. Sessions live in memory only.

Single-writer contract: rewrites are atomic (temp + rename), readers
always see a complete store, but concurrent add_user from separate
processes is out of contract.
"""

import enum
import hmac
import struct
import time
from dataclasses import dataclass
from pathlib import Path

from ._fs import atomic_write_bytes
from .crypto import MIN_KDF_ITERATIONS, KdfParams, generate_salt, kdf_hash
from .errors import (
    AlreadyInitialized,
    AuthFailure,
    DuplicateUser,
    InvalidUsername,
    NotAdmin,
    StoreCorrupt,
    WeakPassword,
)

STORE_MAGIC = b"JFSU"
STORE_VERSION = 1
STORE_FILENAME = "users.jfsu"
MIN_PASSWORD_LEN = 8
MAX_USERNAME_LEN = 64

_STORE_HEAD = struct.Struct(">4sHI")
_REC_NAME_LEN = struct.Struct(">H")
_REC_TAIL = struct.Struct(">B16sI32s")  # role, salt, iterations, hash


class Role(enum.Enum):
    ADMIN = 0x01
    USER = 0x02


@dataclass(frozen=True)
class UserRecord:
    username: str
    role: Role
    kdf: KdfParams
    password_hash: bytes


@dataclass(frozen=True)
class Session:
    """Proof of a successful login; never written to disk."""

    username: str
    role: Role
    authenticated_at: float


def _validate_username(username: str) -> None:
    if not 1 <= len(username) <= MAX_USERNAME_LEN:
        raise InvalidUsername(f"username must be 1-{MAX_USERNAME_LEN} characters")
    if any(ord(c) < 0x20 or 0x7F <= ord(c) <= 0x9F for c in username):
        raise InvalidUsername("username must not contain control characters")


def _validate_password(password: str) -> None:
    if len(password) < MIN_PASSWORD_LEN:
        raise WeakPassword(f"password must be at least {MIN_PASSWORD_LEN} characters")


def _make_record(username: str, password: str, role: Role, iterations: int) -> UserRecord:
    _validate_username(username)
    _validate_password(password)
    kdf = KdfParams(salt=generate_salt(), iterations=iterations)
    return UserRecord(username, role, kdf, kdf_hash(password, kdf))


def save_store(store_path: Path, records: list[UserRecord]) -> None:
    """Atomically rewrite the credential store."""
    blob = bytearray(_STORE_HEAD.pack(STORE_MAGIC, STORE_VERSION, len(records)))
    for rec in records:
        name = rec.username.encode("utf-8")
        blob += _REC_NAME_LEN.pack(len(name))
        blob += name
        blob += _REC_TAIL.pack(
            rec.role.value, rec.kdf.salt, rec.kdf.iterations, rec.password_hash
        )
    atomic_write_bytes(Path(store_path), bytes(blob))


def load_store(store_path: Path) -> list[UserRecord]:
    """Parse the credential store.

    Raises:
        StoreCorrupt: file missing, truncated, or otherwise unparseable.
    """
    try:
        data = Path(store_path).read_bytes()
    except OSError as exc:
        raise StoreCorrupt(f"cannot read credential store: {exc}") from exc
    if len(data) < _STORE_HEAD.size:
        raise StoreCorrupt("store shorter than its header")
    magic, version, count = _STORE_HEAD.unpack_from(data)
    if magic != STORE_MAGIC:
        raise StoreCorrupt("bad credential store magic")
    if version != STORE_VERSION:
        raise StoreCorrupt(f"unsupported store version {version}")
    records: list[UserRecord] = []
    offset = _STORE_HEAD.size
    seen: set[str] = set()
    for _ in range(count):
        if len(data) < offset + _REC_NAME_LEN.size:
            raise StoreCorrupt("store truncated in a record")
        (name_len,) = _REC_NAME_LEN.unpack_from(data, offset)
        offset += _REC_NAME_LEN.size
        if len(data) < offset + name_len + _REC_TAIL.size:
            raise StoreCorrupt("store truncated in a record")
        try:
            username = data[offset : offset + name_len].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise StoreCorrupt("record name is not valid UTF-8") from exc
        offset += name_len
        role_byte, salt, iterations, pw_hash = _REC_TAIL.unpack_from(data, offset)
        offset += _REC_TAIL.size
        try:
            role = Role(role_byte)
        except ValueError as exc:
            raise StoreCorrupt(f"unknown role byte {role_byte:#04x}") from exc
        try:
            kdf = KdfParams(salt=salt, iterations=iterations)
        except ValueError as exc:
            raise StoreCorrupt(str(exc)) from exc
        if username in seen:
            raise StoreCorrupt(f"duplicate record for {username!r}")
        seen.add(username)
        records.append(UserRecord(username, role, kdf, pw_hash))
    if offset != len(data):
        raise StoreCorrupt("trailing bytes after last record")
    return records


def init_vault(
    admin_name: str,
    admin_password: str,
    store_path: Path,
    iterations: int = MIN_KDF_ITERATIONS,
) -> Path:
    """Create a fresh credential store holding exactly one admin record.

    Raises:
        AlreadyInitialized: store_path already exists.
        WeakPassword / InvalidUsername: bad admin credentials.
    """
    store_path = Path(store_path)
    if store_path.exists():
        raise AlreadyInitialized(f"credential store already exists: {store_path}")
    record = _make_record(admin_name, admin_password, Role.ADMIN, iterations)
    store_path.parent.mkdir(parents=True, exist_ok=True)
    save_store(store_path, [record])
    return store_path


def add_user(
    store_path: Path,
    session: Session,
    username: str,
    password: str,
    iterations: int = MIN_KDF_ITERATIONS,
) -> None:
    """Register a new user; admin sessions only.

    Raises:
        NotAdmin, DuplicateUser, WeakPassword, InvalidUsername.
    """
    if session.role is not Role.ADMIN:
        raise NotAdmin("only the administrator may register users")
    records = load_store(store_path)
    if any(rec.username == username for rec in records):
        raise DuplicateUser(f"user {username!r} already registered")
    records.append(_make_record(username, password, Role.USER, iterations))
    save_store(store_path, records)


def login(store_path: Path, username: str, password: str) -> Session:
    """Verify credentials and return a Session.

    Comparison is constant-time; unknown users burn the same KDF cost as
    wrong passwords so the two cases are indistinguishable.

    Raises:
        AuthFailure: unknown user or wrong password.
        StoreCorrupt: store missing or unparseable.
    """
    records = load_store(store_path)
    match = next((rec for rec in records if rec.username == username), None)
    probe = match if match is not None else records[0] if records else None
    if probe is None or not password:
        raise AuthFailure("login failed")
    candidate = kdf_hash(password, probe.kdf)
    if match is None or not hmac.compare_digest(candidate, match.password_hash):
        raise AuthFailure("login failed")
    return Session(match.username, match.role, authenticated_at=time.time())
