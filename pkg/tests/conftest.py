import sys
from pathlib import Path

import pytest

import jfss

sys.path.insert(0, str(Path(__file__).parent))

ADMIN_PASSWORD = "orange-crane-42"
USER_PASSWORD = "blue-otter-99!"


@pytest.fixture(scope="session")
def vault_store(tmp_path_factory) -> Path:
    """A credential store with one admin and one plain user."""
    store = tmp_path_factory.mktemp("vault") / "users.jfsu"
    jfss.init_vault("admin", ADMIN_PASSWORD, store)
    admin = jfss.login(store, "admin", ADMIN_PASSWORD)
    jfss.add_user(store, admin, "worker", USER_PASSWORD)
    return store


@pytest.fixture(scope="session")
def admin_session(vault_store):
    return jfss.login(vault_store, "admin", ADMIN_PASSWORD)


@pytest.fixture(scope="session")
def user_session(vault_store):
    return jfss.login(vault_store, "worker", USER_PASSWORD)


@pytest.fixture
def card_cfg(tmp_path):
    """Keystore config whose card is a fresh writable directory."""
    card = tmp_path / "card"
    card.mkdir()
    return jfss.KeystoreConfig(card_path=card)
