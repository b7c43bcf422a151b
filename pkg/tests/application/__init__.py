"""Application tests."""

