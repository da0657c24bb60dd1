"""Reference adapters speaking the one-line JSON protocol."""
