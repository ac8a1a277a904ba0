"""One-shot font generation with a multi-attribute conditional diffusion model."""

__version__ = "0.1.0"
