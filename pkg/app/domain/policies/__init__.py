"""Domain policies — pure numerical algorithms over the domain types."""
