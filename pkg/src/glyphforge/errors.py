"""Exception hierarchy shared across the toolkit.

``DataError`` covers malformed inputs (tables, manifests, images, checkpoints)
and maps to CLI exit code 2; ``NumericError`` covers runtime/numeric failures
and maps to exit code 3.
"""


class GlyphForgeError(Exception):
    """Base class for all toolkit errors."""


class DataError(GlyphForgeError):
    """Malformed or inconsistent input data."""


class TableParseError(DataError):
    """A stroke/component table row violates the TSV schema."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingGlyphError(DataError):
    """The font has no usable glyph for the requested codepoint."""


class ManifestError(DataError):
    """Dataset manifest construction or validation failed."""


class VocabularyError(DataError):
    """A character is outside the trained content vocabulary."""


class CheckpointError(DataError):
    """Checkpoint file is corrupt, truncated, or of an unknown version."""


class ConfigError(DataError):
    """Invalid or missing configuration value."""


class NumericError(GlyphForgeError):
    """Runtime numeric failure (non-finite values, divergence)."""


class TrainingDiverged(NumericError):
    """Training produced a non-finite loss."""
