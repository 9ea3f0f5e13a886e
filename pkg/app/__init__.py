"""L-WPT denoising toolkit."""

__version__ = "0.1.0"
