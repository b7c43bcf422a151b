"""Domain services tests."""

