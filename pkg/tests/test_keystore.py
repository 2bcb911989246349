"""Key placement precedence, UUID binding, and card availability."""

import os
import uuid

import pytest

from jfss.container import KeyFileRecord, encode_keyfile
from jfss.crypto import generate_key
from jfss.errors import BadMagic, KeyMismatch, KeyNotFound, NoDestination
from jfss.keystore import (
    KeystoreConfig,
    card_available,
    keyfile_name,
    locate_key,
    store_key,
)


def make_record() -> KeyFileRecord:
    return KeyFileRecord(file_id=uuid.uuid4(), key=generate_key())


def test_card_available_when_writable(tmp_path):
    assert card_available(KeystoreConfig(card_path=tmp_path))


def test_card_unavailable_when_absent(tmp_path):
    assert not card_available(KeystoreConfig(card_path=tmp_path / "gone"))


def test_card_unavailable_when_unset():
    assert not card_available(KeystoreConfig())


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory write bits")
def test_card_unavailable_when_read_only(tmp_path):
    card = tmp_path / "card"
    card.mkdir()
    card.chmod(0o555)
    try:
        # oracle: an actual probe write must also fail
        with pytest.raises(OSError):
            (card / "probe").write_bytes(b"x")
        assert not card_available(KeystoreConfig(card_path=card))
    finally:
        card.chmod(0o755)


def test_config_rejects_identical_paths(tmp_path):
    with pytest.raises(ValueError):
        KeystoreConfig(card_path=tmp_path, fallback_path=tmp_path)


def test_store_prefers_card(tmp_path):
    card = tmp_path / "card"
    card.mkdir()
    cfg = KeystoreConfig(card_path=card, fallback_path=tmp_path / "fb")
    rec = make_record()
    path = store_key(cfg, rec)
    assert path.parent == card
    assert path.name == keyfile_name(rec.file_id)


def test_store_explicit_wins_over_card(tmp_path):
    card = tmp_path / "card"
    card.mkdir()
    cfg = KeystoreConfig(card_path=card)
    dest = tmp_path / "chosen"
    path = store_key(cfg, make_record(), explicit_dest=dest)
    assert path.parent == dest
    assert not any(card.iterdir())


def test_store_falls_back_when_card_absent(tmp_path):
    cfg = KeystoreConfig(card_path=tmp_path / "gone", fallback_path=tmp_path / "fb")
    path = store_key(cfg, make_record())
    assert path.parent == tmp_path / "fb"


def test_store_no_destination(tmp_path):
    with pytest.raises(NoDestination):
        store_key(KeystoreConfig(card_path=tmp_path / "gone"), make_record())


def test_store_skips_candidate_equal_to_avoided_dir(tmp_path):
    # card == the container's directory: key must not land beside it
    card = tmp_path / "docs"
    card.mkdir()
    fb = tmp_path / "fb"
    cfg = KeystoreConfig(card_path=card, fallback_path=fb)
    path = store_key(cfg, make_record(), avoid_dir=card)
    assert path.parent == fb

    with pytest.raises(NoDestination):
        store_key(KeystoreConfig(card_path=card), make_record(), avoid_dir=card)


def test_store_rejects_explicit_dest_equal_to_avoided_dir(tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    with pytest.raises(NoDestination):
        store_key(KeystoreConfig(), make_record(), explicit_dest=docs, avoid_dir=docs)


def test_store_locate_roundtrip(tmp_path):
    card = tmp_path / "card"
    card.mkdir()
    cfg = KeystoreConfig(card_path=card)
    for _ in range(20):
        rec = make_record()
        store_key(cfg, rec)
        assert locate_key(cfg, rec.file_id) == rec


def test_locate_searches_fallback(tmp_path):
    cfg = KeystoreConfig(card_path=tmp_path / "gone", fallback_path=tmp_path / "fb")
    rec = make_record()
    store_key(cfg, rec)
    assert locate_key(cfg, rec.file_id) == rec


def test_locate_missing(tmp_path):
    cfg = KeystoreConfig(card_path=tmp_path)
    with pytest.raises(KeyNotFound):
        locate_key(cfg, uuid.uuid4())


def test_locate_explicit_match(tmp_path):
    rec = make_record()
    key_path = tmp_path / "k.jfsk"
    key_path.write_bytes(encode_keyfile(rec))
    assert locate_key(KeystoreConfig(), rec.file_id, explicit_key=key_path) == rec


def test_locate_explicit_wrong_uuid(tmp_path):
    rec = make_record()
    key_path = tmp_path / "k.jfsk"
    key_path.write_bytes(encode_keyfile(rec))
    with pytest.raises(KeyMismatch):
        locate_key(KeystoreConfig(), uuid.uuid4(), explicit_key=key_path)


def test_locate_explicit_missing_file(tmp_path):
    with pytest.raises(KeyNotFound):
        locate_key(KeystoreConfig(), uuid.uuid4(), explicit_key=tmp_path / "no.jfsk")


def test_locate_explicit_garbage_file(tmp_path):
    bad = tmp_path / "bad.jfsk"
    bad.write_bytes(b"not a key file at all" + b"\x00" * 33)
    with pytest.raises(BadMagic):
        locate_key(KeystoreConfig(), uuid.uuid4(), explicit_key=bad)


def test_misnamed_keyfile_on_card_is_mismatch(tmp_path):
    # a key file renamed to another id's canonical name must not pass the binding check
    card = tmp_path / "card"
    card.mkdir()
    cfg = KeystoreConfig(card_path=card)
    rec = make_record()
    other_id = uuid.uuid4()
    (card / keyfile_name(other_id)).write_bytes(encode_keyfile(rec))
    with pytest.raises(KeyMismatch):
        locate_key(cfg, other_id)


def test_stored_key_never_beside_container(tmp_path, admin_session, card_cfg):
    # every stored key lands outside the container's directory
    from jfss.vault import encrypt_file

    src = tmp_path / "a.txt"
    src.write_bytes(b"data")
    outcome = encrypt_file(admin_session, src, card_cfg)
    assert outcome.key_path.parent.resolve() != outcome.container_path.parent.resolve()
