from __future__ import annotations

import socket
from pathlib import Path

import pytest

from cellform.table import load_csv

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def demo_table():
    with open(FIXTURES / "demo_admissions.csv", "rb") as f:
        return load_csv(f)


@pytest.fixture
def demo_csv_bytes() -> bytes:
    return (FIXTURES / "demo_admissions.csv").read_bytes()


@pytest.fixture
def no_network(monkeypatch):
    """Fail the test if anything tries to open a socket."""

    def blocked(self, *args, **kwargs):
        raise AssertionError("network call attempted during an offline test")

    monkeypatch.setattr(socket.socket, "connect", blocked)
