"""Locations of the instance files shipped with the package."""

from __future__ import annotations

from pathlib import Path


def data_root() -> Path:
    return Path(__file__).resolve().parent


def instances_dir() -> Path:
    return data_root() / "instances"


def counterexamples_dir() -> Path:
    return data_root() / "counterexamples"
