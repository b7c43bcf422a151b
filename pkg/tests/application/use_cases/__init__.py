"""Use cases tests."""

