"""Command-line interface: one-shot commands gated by per-invocation login.

Exit codes: 0 success, 1 usage error, 2 authentication failure,
3 integrity failure, 4 format error, 5 key not found/mismatch, 6 I/O
error. Passwords come from a prompt or the JFSS_PASSWORD environment
variable (testing convenience, insecure), never from argv.
"""

import argparse
import getpass
import os
import sys
from pathlib import Path

from . import auth, bench, vault
from .errors import (
    AlreadyEncrypted,
    AlreadyInitialized,
    AuthFailure,
    DuplicateUser,
    EmptyPassword,
    FormatError,
    IntegrityError,
    InvalidHeader,
    InvalidRecord,
    InvalidSelection,
    InvalidUsername,
    KeyMismatch,
    KeyNotFound,
    MalformedInput,
    NameCollision,
    NoDestination,
    NotAdmin,
    NotAuthenticated,
    RandomnessUnavailable,
    SourceMissing,
    StoreCorrupt,
    WeakPassword,
)
from .keystore import KeystoreConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AUTH = 2
EXIT_INTEGRITY = 3
EXIT_FORMAT = 4
EXIT_KEY = 5
EXIT_IO = 6

# First isinstance match wins; more specific classes come first.
ERROR_EXIT_CODES: tuple[tuple[type[BaseException], int], ...] = (
    (AuthFailure, EXIT_AUTH),
    (NotAuthenticated, EXIT_AUTH),
    (NotAdmin, EXIT_AUTH),
    (IntegrityError, EXIT_INTEGRITY),
    (MalformedInput, EXIT_FORMAT),
    (FormatError, EXIT_FORMAT),
    (InvalidHeader, EXIT_FORMAT),
    (InvalidRecord, EXIT_FORMAT),
    (StoreCorrupt, EXIT_FORMAT),
    (KeyNotFound, EXIT_KEY),
    (KeyMismatch, EXIT_KEY),
    (NoDestination, EXIT_IO),
    (SourceMissing, EXIT_IO),
    (NameCollision, EXIT_IO),
    (RandomnessUnavailable, EXIT_IO),
    (WeakPassword, EXIT_USAGE),
    (DuplicateUser, EXIT_USAGE),
    (AlreadyInitialized, EXIT_USAGE),
    (InvalidUsername, EXIT_USAGE),
    (AlreadyEncrypted, EXIT_USAGE),
    (InvalidSelection, EXIT_USAGE),
    (EmptyPassword, EXIT_USAGE),
    (ValueError, EXIT_USAGE),
    (OSError, EXIT_IO),
)

_VERIFY_EXIT = {
    vault.VerifyStatus.INTACT: EXIT_OK,
    vault.VerifyStatus.TAMPERED: EXIT_INTEGRITY,
    vault.VerifyStatus.KEY_MISMATCH: EXIT_KEY,
}


def exit_code_for(exc: BaseException) -> int | None:
    """Documented exit code for an error, or None if it should propagate."""
    for exc_type, code in ERROR_EXIT_CODES:
        if isinstance(exc, exc_type):
            return code
    return None


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit(2) on bad usage; 2 is reserved for auth failures.
    def error(self, message: str) -> None:
        raise _UsageError(message)


def _prompt_password(prompt: str) -> str:
    return getpass.getpass(prompt)


def _login_password(environment: dict, username: str) -> str:
    env = environment.get("JFSS_PASSWORD")
    if env is not None:
        return env
    return _prompt_password(f"Password for {username}: ")


def _new_password(environment: dict, label: str, allow_env: bool) -> str:
    if allow_env:
        env = environment.get("JFSS_PASSWORD")
        if env is not None:
            return env
    first = _prompt_password(f"New password for {label}: ")
    second = _prompt_password("Repeat to confirm: ")
    if first != second:
        raise _UsageError("passwords do not match")
    return first


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vault", help="vault directory (env JFSS_VAULT)")
    common.add_argument("--card", help="removable key directory (env JFSS_CARD)")
    common.add_argument("--user", help="username to authenticate as")

    parser = _Parser(prog="jfss", description="on-demand file security toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", parents=[common], help="create a vault with one admin")
    p.add_argument("--admin", required=True, help="administrator username")

    p = sub.add_parser("user-add", parents=[common], help="register a user (admin only)")
    p.add_argument("name", help="new username")

    p = sub.add_parser("encrypt", parents=[common], help="encrypt a file in place")
    p.add_argument("file", help="file to encrypt")
    p.add_argument("--key-dest", help="explicit directory for the key file")

    p = sub.add_parser("decrypt", parents=[common], help="restore an encrypted file")
    p.add_argument("file", help="container (.jfss) to decrypt")
    p.add_argument("--key", help="explicit key file (.jfsk)")
    p.add_argument("--out", help="output directory (default: beside container)")

    p = sub.add_parser("verify", parents=[common], help="check container integrity")
    p.add_argument("file", help="container (.jfss) to verify")
    p.add_argument("--key", help="explicit key file (.jfsk)")

    p = sub.add_parser("protect", parents=[common], help="mark container read-only")
    p.add_argument("file", help="container (.jfss) to protect")

    p = sub.add_parser("bench", parents=[common], help="selective vs full encryption timing")
    p.add_argument("dir", help="workload directory (generated if empty)")
    p.add_argument("--select", type=int, required=True, help="number of files to select")
    p.add_argument("--files", type=int, default=100, help="workload file count")
    p.add_argument("--size", type=int, default=256 * 1024, help="bytes per workload file")
    p.add_argument("--repeats", type=int, default=5, help="trials per mode (median)")
    p.add_argument("--raw", action="store_true", help="append machine-readable key=value lines")

    return parser


def _vault_dir(args, environment: dict) -> Path:
    value = args.vault or environment.get("JFSS_VAULT")
    if not value:
        raise _UsageError("no vault directory: pass --vault or set JFSS_VAULT")
    return Path(value)


def _keystore_config(args, environment: dict) -> KeystoreConfig:
    card = args.card or environment.get("JFSS_CARD")
    return KeystoreConfig(card_path=Path(card) if card else None)


def _login(args, environment: dict) -> auth.Session:
    store = _vault_dir(args, environment) / auth.STORE_FILENAME
    if not args.user:
        raise _UsageError("no username: pass --user")
    password = _login_password(environment, args.user)
    try:
        return auth.login(store, args.user, password)
    except AuthFailure:
        print("login failed", file=sys.stderr)
        raise SystemExit(EXIT_AUTH)


def _cmd_init(args, environment: dict) -> int:
    store = _vault_dir(args, environment) / auth.STORE_FILENAME
    password = _new_password(environment, args.admin, allow_env=True)
    auth.init_vault(args.admin, password, store)
    print(f"vault initialized: {store} (admin {args.admin!r})")
    return EXIT_OK


def _cmd_user_add(args, environment: dict) -> int:
    session = _login(args, environment)
    store = _vault_dir(args, environment) / auth.STORE_FILENAME
    password = _new_password(environment, args.name, allow_env=False)
    auth.add_user(store, session, args.name, password)
    print(f"user added: {args.name!r}")
    return EXIT_OK


def _cmd_encrypt(args, environment: dict) -> int:
    session = _login(args, environment)
    cfg = _keystore_config(args, environment)
    dest = Path(args.key_dest) if args.key_dest else None
    outcome = vault.encrypt_file(session, Path(args.file), cfg, key_dest=dest)
    print(f"encrypted: {outcome.container_path} (key: {outcome.key_path})")
    return EXIT_OK


def _cmd_decrypt(args, environment: dict) -> int:
    session = _login(args, environment)
    cfg = _keystore_config(args, environment)
    restored = vault.decrypt_file(
        session,
        Path(args.file),
        cfg,
        key=Path(args.key) if args.key else None,
        out_dir=Path(args.out) if args.out else None,
    )
    print(f"decrypted: {args.file} -> {restored}")
    return EXIT_OK


def _cmd_verify(args, environment: dict) -> int:
    _login(args, environment)
    cfg = _keystore_config(args, environment)
    outcome = vault.verify_file(
        Path(args.file), cfg, key=Path(args.key) if args.key else None
    )
    suffix = f" ({outcome.detail})" if outcome.detail else ""
    print(f"{outcome.status.value}: {args.file}{suffix}")
    return _VERIFY_EXIT[outcome.status]


def _cmd_protect(args, environment: dict) -> int:
    _login(args, environment)
    vault.protect_file(Path(args.file))
    print(f"protected (read-only): {args.file}")
    return EXIT_OK


def _cmd_bench(args, environment: dict) -> int:
    session = _login(args, environment)
    workload = Path(args.dir)
    if not workload.exists() or not any(workload.iterdir()):
        bench.generate_workload(workload, args.files, args.size)
        print(f"generated workload: {args.files} x {args.size} B in {workload}")
    report = bench.run_benchmark(session, workload, args.select, repeats=args.repeats)
    print(bench.format_report(report, raw=args.raw))
    return EXIT_OK


_HANDLERS = {
    "init": _cmd_init,
    "user-add": _cmd_user_add,
    "encrypt": _cmd_encrypt,
    "decrypt": _cmd_decrypt,
    "verify": _cmd_verify,
    "protect": _cmd_protect,
    "bench": _cmd_bench,
}


def dispatch(argv: list[str], environment: dict) -> int:
    """Parse argv, authenticate, run one command; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args, environment)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # argparse --help exits 0; _login exits EXIT_AUTH
        return int(exc.code or 0)
    except BaseException as exc:
        code = exit_code_for(exc)
        if code is None:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return code


def main() -> None:
    sys.exit(dispatch(sys.argv[1:], dict(os.environ)))


if __name__ == "__main__":
    main()
