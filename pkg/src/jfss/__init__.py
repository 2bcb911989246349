"""jfss: on-demand file security toolkit.

Selected files are sealed with per-file AES-256-GCM keys; each key lives
in a detached key file on a removable "card" directory. Containers are
tamper-evident (the header is authenticated along with the payload) and
marked read-only on disk. Access is gated by an admin-provisioned user
registry.
"""

from . import errors
from .auth import Role, Session, UserRecord, add_user, init_vault, login
from .bench import BenchReport, format_report, generate_workload, run_benchmark
from .container import (
    ContainerHeader,
    KeyFileRecord,
    decode_container,
    decode_keyfile,
    encode_container,
    encode_header,
    encode_keyfile,
)
from .crypto import (
    KdfParams,
    aead_open,
    aead_seal,
    generate_key,
    generate_nonce,
    generate_salt,
    kdf_hash,
)
from .keystore import KeystoreConfig, card_available, locate_key, store_key
from .vault import (
    EncryptOutcome,
    VerifyOutcome,
    VerifyStatus,
    decrypt_file,
    encrypt_file,
    protect_file,
    unprotect_file,
    verify_file,
)

__version__ = "1.0.0"

__all__ = [
    "errors",
    "Role",
    "Session",
    "UserRecord",
    "add_user",
    "init_vault",
    "login",
    "BenchReport",
    "format_report",
    "generate_workload",
    "run_benchmark",
    "ContainerHeader",
    "KeyFileRecord",
    "decode_container",
    "decode_keyfile",
    "encode_container",
    "encode_header",
    "encode_keyfile",
    "KdfParams",
    "aead_open",
    "aead_seal",
    "generate_key",
    "generate_nonce",
    "generate_salt",
    "kdf_hash",
    "KeystoreConfig",
    "card_available",
    "locate_key",
    "store_key",
    "EncryptOutcome",
    "VerifyOutcome",
    "VerifyStatus",
    "decrypt_file",
    "encrypt_file",
    "protect_file",
    "unprotect_file",
    "verify_file",
    "__version__",
]
