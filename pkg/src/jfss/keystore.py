"""Placement and retrieval of detached key files.

The "card" is a removable directory (typically a mount point). A key
file is named after its file id so it can be located automatically;
explicit paths are always honoured for manual selection.
"""

import os
import uuid
from dataclasses import dataclass
from pathlib import Path

from ._fs import atomic_write_bytes
from .container import KEYFILE_EXT, KeyFileRecord, decode_keyfile, encode_keyfile
from .errors import KeyMismatch, KeyNotFound, NoDestination


@dataclass(frozen=True)
class KeystoreConfig:
    """Key placement configuration: removable card plus optional fallback."""

    card_path: Path | None = None
    fallback_path: Path | None = None

    def __post_init__(self) -> None:
        if self.card_path is not None:
            object.__setattr__(self, "card_path", Path(self.card_path))
        if self.fallback_path is not None:
            object.__setattr__(self, "fallback_path", Path(self.fallback_path))
        if (
            self.card_path is not None
            and self.fallback_path is not None
            and _same_dir(self.card_path, self.fallback_path)
        ):
            raise ValueError("card_path and fallback_path must be distinct")


def _same_dir(a: Path, b: Path) -> bool:
    return Path(a).resolve() == Path(b).resolve()


def keyfile_name(file_id: uuid.UUID) -> str:
    """Canonical key file name for a file id (32 hex chars + extension)."""
    return file_id.hex + KEYFILE_EXT


def card_available(cfg: KeystoreConfig) -> bool:
    """True iff the card directory exists and is writable."""
    card = cfg.card_path
    return card is not None and card.is_dir() and os.access(card, os.W_OK)


def store_key(
    cfg: KeystoreConfig,
    rec: KeyFileRecord,
    explicit_dest: Path | None = None,
    avoid_dir: Path | None = None,
) -> Path:
    """Write a key file and return its path.

    Destination precedence: explicit_dest, then the card (if available),
    then fallback_path. avoid_dir (the container's directory) is never
    used: an explicit destination equal to it is an error, while card or
    fallback equal to it drop through to the next candidate — the key
    must not live beside the container it unlocks. The write is atomic,
    so a yanked card never holds a half-written key.

    Raises:
        NoDestination: no candidate directory is usable.
    """
    data = encode_keyfile(rec)
    if explicit_dest is not None:
        dest = Path(explicit_dest)
        if avoid_dir is not None and _same_dir(dest, avoid_dir):
            raise NoDestination(
                "explicit key destination is the container's own directory"
            )
        dest.mkdir(parents=True, exist_ok=True)
    else:
        dest = None
        candidates = []
        if card_available(cfg):
            candidates.append(cfg.card_path)
        if cfg.fallback_path is not None:
            candidates.append(cfg.fallback_path)
        for cand in candidates:
            if avoid_dir is not None and cand.exists() and _same_dir(cand, avoid_dir):
                continue
            dest = cand
            break
        if dest is None:
            raise NoDestination(
                "card unavailable and no fallback or explicit destination given"
            )
        dest.mkdir(parents=True, exist_ok=True)
    path = dest / keyfile_name(rec.file_id)
    atomic_write_bytes(path, data)
    return path


def locate_key(
    cfg: KeystoreConfig,
    file_id: uuid.UUID,
    explicit_key: Path | None = None,
) -> KeyFileRecord:
    """Find and decode the key for a file id.

    An explicit key file wins but must carry the matching id; otherwise
    the card and then the fallback are searched by canonical name.

    Raises:
        KeyNotFound: no key file exists anywhere we looked.
        KeyMismatch: a key file was found but is bound to another file.
        FormatError: the key file bytes do not parse.
    """
    if explicit_key is not None:
        try:
            data = Path(explicit_key).read_bytes()
        except FileNotFoundError as exc:
            raise KeyNotFound(f"key file not found: {explicit_key}") from exc
        rec = decode_keyfile(data)
        if rec.file_id != file_id:
            raise KeyMismatch(
                f"key file is for {rec.file_id}, container is {file_id}"
            )
        return rec
    for directory in (cfg.card_path, cfg.fallback_path):
        if directory is None:
            continue
        path = directory / keyfile_name(file_id)
        if path.is_file():
            rec = decode_keyfile(path.read_bytes())
            if rec.file_id != file_id:
                raise KeyMismatch(f"key file {path} is bound to {rec.file_id}")
            return rec
    raise KeyNotFound(f"no key file for {file_id} on card or fallback")
