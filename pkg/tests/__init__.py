"""qrank tests."""
