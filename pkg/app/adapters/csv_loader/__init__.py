"""CSV loader adapter — reads and normalizes CSV data files."""
